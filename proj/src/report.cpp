#include "hyperlap/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace hyperlap::report {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Row::set(const std::string& key, double v) { cells_.emplace_back(key, v); }
void Row::set(const std::string& key, long long v) { cells_.emplace_back(key, v); }
void Row::set(const std::string& key, int v) {
    cells_.emplace_back(key, static_cast<long long>(v));
}
void Row::set(const std::string& key, const std::string& v) { cells_.emplace_back(key, v); }

void Row::set_flag(const std::string& key, bool pass) {
    cells_.emplace_back(key, std::string(pass ? "pass" : "fail"));
}

void Row::set_flag_na(const std::string& key) { cells_.emplace_back(key, std::string("n/a")); }

bool Row::has_fail() const {
    for (const auto& [key, cell] : cells_)
        if (const auto* s = std::get_if<std::string>(&cell); s && *s == "fail") return true;
    return false;
}

Table::Table(std::vector<std::string> keys) : keys_(std::move(keys)) {}

void Table::check(const Row& row) const {
    if (row.cells().size() != keys_.size())
        throw std::logic_error("Table: row does not match the schema");
    for (std::size_t i = 0; i < keys_.size(); ++i)
        if (row.cells()[i].first != keys_[i])
            throw std::logic_error("Table: key mismatch at column " + keys_[i]);
}

void Table::add(Row row) {
    check(row);
    rows_.push_back(std::move(row));
}

void Table::set(std::size_t i, Row row) {
    check(row);
    rows_.at(i) = std::move(row);
}

bool Table::any_fail() const {
    for (const auto& row : rows_)
        if (row.has_fail()) return true;
    return false;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_to_string(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return csv_escape(std::get<std::string>(cell));
}

}  // namespace

void Table::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
        out << (i ? "," : "") << csv_escape(keys_[i]);
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.cells().size(); ++i)
            out << (i ? "," : "") << cell_to_string(row.cells()[i].second);
        out << '\n';
    }
}

void Table::write_json(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& metadata) const {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    for (const auto& [k, v] : metadata) meta[k] = v;
    doc["metadata"] = meta;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json r;
        for (const auto& [key, cell] : row.cells()) {
            if (const auto* d = std::get_if<double>(&cell))
                r[key] = *d;
            else if (const auto* i = std::get_if<long long>(&cell))
                r[key] = *i;
            else
                r[key] = std::get<std::string>(cell);
        }
        doc["rows"].push_back(std::move(r));
    }
    out << doc.dump(2) << '\n';
}

int thread_count() {
    if (const char* env = std::getenv("HYPERLAP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(n, thread_count());
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace hyperlap::report
