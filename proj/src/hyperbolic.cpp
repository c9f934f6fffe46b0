#include "hyperlap/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperlap {

Dimensions::Dimensions(int m_, int n_) : m(m_), n(n_) {
    if (m < 2 || m > n)
        throw std::domain_error("Dimensions: requires 2 <= m <= n");
}

double radius_from_euclidean(double t) {
    if (!(t >= 0.0) || t >= 1.0)
        throw std::domain_error("radius_from_euclidean: t must lie in [0, 1)");
    return std::log1p(t) - std::log1p(-t);
}

double radius_from_euclidean(const EuclideanRadius& t) {
    if (!(t.complement > 0.0))
        throw std::domain_error("radius_from_euclidean: complement must be positive");
    // ln((1+t)/(1-t)) = ln(2 - c) - ln(c) with c = 1 - t
    return std::log(2.0 - t.complement) - std::log(t.complement);
}

EuclideanRadius euclidean_from_radius(double r) {
    if (!(r >= 0.0))
        throw std::domain_error("euclidean_from_radius: r must be >= 0");
    const double e = std::exp(-r);
    const double complement = 2.0 * e / (1.0 + e);
    return EuclideanRadius{std::tanh(0.5 * r), complement};
}

double conformal_factor(double t) {
    if (!(t >= 0.0) || t >= 1.0)
        throw std::domain_error("conformal_factor: t must lie in [0, 1)");
    return 2.0 / ((1.0 - t) * (1.0 + t));
}

namespace {

double norm_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

}  // namespace

BallPoint point_from_spherical(const SphericalCoords& sc) {
    if (!(sc.t >= 0.0) || sc.t >= 1.0)
        throw std::domain_error("point_from_spherical: t must lie in [0, 1)");
    BallPoint p;
    p.coords.reserve(sc.theta.size());
    for (double c : sc.theta) p.coords.push_back(sc.t * c);
    return p;
}

SphericalCoords spherical_from_point(const BallPoint& p) {
    const double t = std::sqrt(norm_sq(p.coords));
    SphericalCoords sc;
    sc.t = t;
    sc.theta = p.coords;
    if (t > 0.0)
        for (double& c : sc.theta) c /= t;
    return sc;
}

double distance(const BallPoint& x, const BallPoint& y) {
    if (x.coords.size() != y.coords.size())
        throw std::invalid_argument("distance: dimension mismatch");
    const double x2 = norm_sq(x.coords);
    const double y2 = norm_sq(y.coords);
    if (x2 >= 1.0 || y2 >= 1.0)
        throw std::domain_error("distance: points must lie inside the unit ball");
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const double d = x.coords[i] - y.coords[i];
        d2 += d * d;
    }
    const double u = 2.0 * d2 / ((1.0 - x2) * (1.0 - y2));
    // acosh(1+u) written via log1p to stay accurate for small u
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double log_sinh(double t) {
    if (!(t > 0.0)) throw std::domain_error("log_sinh: t must be positive");
    if (t < 1.0) return std::log(std::sinh(t));
    return t - M_LN2 + std::log1p(-std::exp(-2.0 * t));
}

double coth(double t) {
    if (t == 0.0) throw std::domain_error("coth: t must be nonzero");
    return 1.0 / std::tanh(t);
}

}  // namespace hyperlap
