// Test-only reference implementations, independent of the library paths
// they check.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// All eigenvalues of a symmetric tridiagonal matrix by recursive root
// interlacing of the characteristic polynomials p_k, each root located by
// bisection on the sign of p_{k+1}. Intended for N <= 8.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                                   const std::vector<double>& off) {
    const int n = static_cast<int>(diag.size());
    auto charpoly = [&](int k, double x) {
        // determinant of the leading k x k block of T - x
        double pm1 = 1.0, p = diag[0] - x;
        for (int i = 1; i < k; ++i) {
            const double next = (diag[i] - x) * p - off[i - 1] * off[i - 1] * pm1;
            pm1 = p;
            p = next;
        }
        return k == 0 ? 1.0 : p;
    };

    double lo = diag[0], hi = diag[0];
    for (int i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(off[i - 1]);
        if (i < n - 1) radius += std::abs(off[i]);
        lo = std::min(lo, diag[i] - radius);
        hi = std::max(hi, diag[i] + radius);
    }
    lo -= 1.0;
    hi += 1.0;

    std::vector<double> roots{diag[0]};
    for (int k = 2; k <= n; ++k) {
        std::vector<double> next;
        std::vector<double> brackets{lo};
        brackets.insert(brackets.end(), roots.begin(), roots.end());
        brackets.push_back(hi);
        for (int j = 0; j + 1 < static_cast<int>(brackets.size()); ++j) {
            double a = brackets[j], b = brackets[j + 1];
            double fa = charpoly(k, a);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const double fm = charpoly(k, mid);
                if ((fa <= 0.0) == (fm <= 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            next.push_back(0.5 * (a + b));
        }
        roots = next;
    }
    return roots;
}

// Ground Dirichlet eigenvalue of the radial problem
//   u'' + (m-1) coth(r) u' + (lambda - mu/sinh^2 r) u = 0,  u(L) = 0,
// regular at the origin, by RK4 shooting from a two-term series start and
// bisection on the sign of u(L).
inline double shooting_ground_eigenvalue(int m, double mu, double L, double lo,
                                         double hi) {
    const double s =
        0.5 * (-(m - 2) + std::sqrt(static_cast<double>(m - 2) * (m - 2) + 4.0 * mu));
    auto endpoint = [&](double lambda) {
        const double denom = (s + 2.0) * (s + 1.0) + (m - 1) * (s + 2.0) - mu;
        const double c = -((m - 1) * s / 3.0 + mu / 3.0 + lambda) / denom;
        const double eps = 0.05;
        double u = std::pow(eps, s) * (1.0 + c * eps * eps);
        double du = s * std::pow(eps, s - 1.0) + (s + 2.0) * c * std::pow(eps, s + 1.0);
        auto rhs = [&](double r, double uu, double vv, double& duu, double& dvv) {
            duu = vv;
            const double csch2 = 1.0 / (std::sinh(r) * std::sinh(r));
            dvv = -(m - 1) / std::tanh(r) * vv - (lambda - mu * csch2) * uu;
        };
        const int steps = static_cast<int>((L - eps) / 2e-3) + 1;
        const double h = (L - eps) / steps;
        double r = eps;
        for (int i = 0; i < steps; ++i) {
            double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
            rhs(r, u, du, k1u, k1v);
            rhs(r + 0.5 * h, u + 0.5 * h * k1u, du + 0.5 * h * k1v, k2u, k2v);
            rhs(r + 0.5 * h, u + 0.5 * h * k2u, du + 0.5 * h * k2v, k3u, k3v);
            rhs(r + h, u + h * k3u, du + h * k3v, k4u, k4v);
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            du += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            r += h;
            // keep the solution scaled; only the sign at L matters
            const double mag = std::max(std::abs(u), std::abs(du));
            if (mag > 1e100) {
                u /= mag;
                du /= mag;
            }
        }
        return u;
    };

    double flo = endpoint(lo);
    if ((flo <= 0.0) == (endpoint(hi) <= 0.0))
        throw std::runtime_error("shooting oracle: bracket does not straddle a root");
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = endpoint(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracles
