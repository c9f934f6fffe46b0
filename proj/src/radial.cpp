#include "hyperlap/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperlap/numerics.hpp"

namespace hyperlap::radial {

double log_weight(const Dimensions& dims, double t) {
    return (dims.m - 1) * log_sinh(t);
}

double weight(const Dimensions& dims, double t) {
    if (t == 0.0) return 0.0;
    return std::exp(log_weight(dims, t));
}

namespace {

// int_0^r (sinh t / sinh r)^{m-1} dt. Equals 1/h(B_r^m) = f'(r); the
// integrand is bounded by 1, so no range issues at any r.
double shifted_volume(const Dimensions& dims, double r) {
    const double lw_r = log_weight(dims, r);
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(log_weight(dims, t) - lw_r);
    };
    return numerics::integrate(integrand, 0.0, r, 1e-14, 1e-12);
}

}  // namespace

double iso_constant(const Dimensions& dims, double r) {
    if (!(r > 0.0)) throw std::domain_error("iso_constant: r must be positive");
    return 1.0 / shifted_volume(dims, r);
}

double iso_lower_bound(const Dimensions& dims, double r) {
    if (!(r > 0.0)) throw std::domain_error("iso_lower_bound: r must be positive");
    return (dims.m - 1) * coth(r);
}

double mckean_bound(const Dimensions& dims) {
    const double s = 0.5 * (dims.m - 1);
    return s * s;
}

double cheeger_lower(const Dimensions& dims, double r) {
    const double h = iso_constant(dims, r);
    return 0.25 * h * h;
}

ComparisonProfile::ComparisonProfile(Dimensions dims) : dims_(dims) {}

double ComparisonProfile::f_prime(double r) const {
    if (r == 0.0) return 0.0;
    if (!(r > 0.0)) throw std::domain_error("ComparisonProfile: r must be >= 0");
    return shifted_volume(dims_, r);
}

double ComparisonProfile::f(double r) const {
    if (r == 0.0) return 0.0;
    if (!(r > 0.0)) throw std::domain_error("ComparisonProfile: r must be >= 0");
    // near 0 the integrand behaves like s/m; quadrature handles it directly
    return numerics::integrate([this](double s) { return f_prime(s); }, 0.0, r,
                               1e-12, 1e-10);
}

double ComparisonProfile::f_second(double r) const {
    if (!(r > 0.0)) throw std::domain_error("ComparisonProfile: r must be positive");
    return 1.0 - (dims_.m - 1) * coth(r) * f_prime(r);
}

ComparisonProfile comparison_profile(const Dimensions& dims) {
    return ComparisonProfile(dims);
}

}  // namespace hyperlap::radial
