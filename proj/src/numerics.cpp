#include "hyperlap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hyperlap/errors.hpp"

namespace hyperlap::numerics {

namespace {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on the Legendre recurrence; nodes are symmetric.
GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& cached_rule(int n) {
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double panel_sum(const RealFn& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return s * hw;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
    const GaussRule& rule = cached_rule(n);
    nodes = rule.nodes;
    weights = rule.weights;
}

double integrate(const RealFn& f, const QuadratureRule& q) {
    if (!(q.a < q.b)) throw std::invalid_argument("integrate: requires a < b");
    if (q.order < 2) throw std::invalid_argument("integrate: order must be >= 2");
    if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0))
        throw std::invalid_argument("integrate: tolerances must be positive");
    const GaussRule& rule = cached_rule(q.order);

    struct Panel {
        double a, b, value, error;
    };
    auto make_panel = [&](double a, double b) {
        const double whole = panel_sum(f, a, b, rule);
        const double mid = 0.5 * (a + b);
        const double split = panel_sum(f, a, mid, rule) + panel_sum(f, mid, b, rule);
        return Panel{a, b, split, std::abs(split - whole)};
    };

    std::vector<Panel> todo{make_panel(q.a, q.b)};
    const double span = q.b - q.a;
    double total = 0.0;
    int splits = 0;
    // Crude running estimate of |I| for the relative part of the tolerance.
    double magnitude = std::abs(todo.front().value);
    while (!todo.empty()) {
        Panel p = todo.back();
        todo.pop_back();
        const double local_tol =
            std::max(q.abs_tol, q.rel_tol * magnitude) * ((p.b - p.a) / span);
        if (p.error <= local_tol || (p.b - p.a) < 1e-15 * span) {
            total += p.value;
            continue;
        }
        if (++splits > q.max_subdivisions)
            throw NonConvergence("integrate: subdivision budget exhausted");
        const double mid = 0.5 * (p.a + p.b);
        Panel left = make_panel(p.a, mid);
        Panel right = make_panel(mid, p.b);
        magnitude = std::max(magnitude, std::abs(total) + std::abs(left.value) +
                                            std::abs(right.value));
        todo.push_back(left);
        todo.push_back(right);
    }
    return total;
}

double integrate(const RealFn& f, double a, double b, double abs_tol, double rel_tol) {
    QuadratureRule q;
    q.a = a;
    q.b = b;
    q.abs_tol = abs_tol;
    q.rel_tol = rel_tol;
    return integrate(f, q);
}

int sturm_count(const TridiagonalSystem& sys, double sigma) {
    const int n = sys.size();
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < n; ++i) {
        const double off2 = i > 0 ? sys.off_diagonal[i - 1] * sys.off_diagonal[i - 1] : 0.0;
        d = sys.diagonal[i] - sigma - (i > 0 ? off2 / d : 0.0);
        if (d == 0.0) d = -std::numeric_limits<double>::min();
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> eigen_smallest_k(const TridiagonalSystem& sys, int k) {
    const int n = sys.size();
    if (k < 1 || k > n)
        throw std::invalid_argument("eigen_smallest_k: need 1 <= k <= N");
    if (static_cast<int>(sys.off_diagonal.size()) != n - 1)
        throw std::invalid_argument("eigen_smallest_k: off-diagonal length must be N-1");

    // Gershgorin bracket for the whole spectrum.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(sys.off_diagonal[i - 1]);
        if (i < n - 1) radius += std::abs(sys.off_diagonal[i]);
        lo = std::min(lo, sys.diagonal[i] - radius);
        hi = std::max(hi, sys.diagonal[i] + radius);
    }
    lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());

    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        // Smallest sigma with sturm_count(sigma) >= j+1.
        while (true) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;  // bracket collapsed in doubles
            if (sturm_count(sys, mid) >= j + 1)
                b = mid;
            else
                a = mid;
            if (b - a <= 1e-13 * std::max(1.0, std::abs(mid)) && b - a <= 1e-12)
                break;
        }
        out[j] = 0.5 * (a + b);
        lo = a;  // eigenvalues are located in ascending order
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> shifted_solve(const TridiagonalSystem& sys, double sigma,
                                  const std::vector<double>& b) {
    const int n = sys.size();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("shifted_solve: size mismatch");
    std::vector<double> d(n), x(b);
    // LDL^T forward sweep; stable for sigma below the spectrum.
    d[0] = sys.diagonal[0] - sigma;
    for (int i = 1; i < n; ++i) {
        const double l = sys.off_diagonal[i - 1] / d[i - 1];
        d[i] = sys.diagonal[i] - sigma - l * sys.off_diagonal[i - 1];
        x[i] -= l * x[i - 1];
    }
    x[n - 1] /= d[n - 1];
    for (int i = n - 2; i >= 0; --i)
        x[i] = x[i] / d[i] - sys.off_diagonal[i] * x[i + 1] / d[i];
    return x;
}

double fd_derivative(const RealFn& f, double x, int order, const DerivativeStencil& st) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("fd_derivative: order must be 1 or 2");
    if (!(st.base_step > 0.0) || st.richardson_levels < 2)
        throw std::invalid_argument("fd_derivative: bad stencil");

    const int levels = st.richardson_levels;
    std::vector<double> row(levels), prev(levels);
    for (int i = 0; i < levels; ++i) {
        const double h = st.base_step / static_cast<double>(1 << i);
        double estimate;
        if (order == 1)
            estimate = (f(x + h) - f(x - h)) / (2.0 * h);
        else
            estimate = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        row[0] = estimate;
        double factor = 1.0;
        for (int j = 1; j <= i; ++j) {
            factor *= 4.0;
            row[j] = (factor * row[j - 1] - prev[j - 1]) / (factor - 1.0);
        }
        std::swap(row, prev);
    }
    return prev[levels - 1];
}

}  // namespace hyperlap::numerics
