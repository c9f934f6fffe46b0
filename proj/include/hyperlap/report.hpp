#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hyperlap::report {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<double, long long, std::string>;

// %.17g, enough digits to round-trip a double exactly
std::string format_double(double v);

// One sweep point: ordered key/value cells. Asserted invariants are stored
// as pass/fail/n-a flag cells.
class Row {
  public:
    void set(const std::string& key, double v);
    void set(const std::string& key, long long v);
    void set(const std::string& key, int v);
    void set(const std::string& key, const std::string& v);
    void set_flag(const std::string& key, bool pass);
    void set_flag_na(const std::string& key);

    const std::vector<std::pair<std::string, Cell>>& cells() const { return cells_; }
    bool has_fail() const;

  private:
    std::vector<std::pair<std::string, Cell>> cells_;
};

// Fixed-schema table; every row must carry exactly the declared keys in order.
class Table {
  public:
    explicit Table(std::vector<std::string> keys);

    const std::vector<std::string>& keys() const { return keys_; }
    void add(Row row);
    void resize(std::size_t n) { rows_.resize(n); }
    void set(std::size_t i, Row row);
    std::size_t size() const { return rows_.size(); }
    bool any_fail() const;

    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out,
                    const std::vector<std::pair<std::string, std::string>>& metadata) const;

  private:
    void check(const Row& row) const;
    std::vector<std::string> keys_;
    std::vector<Row> rows_;
};

// HYPERLAP_THREADS when set, hardware concurrency otherwise.
int thread_count();

// Runs fn(0..n-1) on up to thread_count() workers. Results must be written
// to per-index slots; the reduction order is then independent of scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace hyperlap::report
