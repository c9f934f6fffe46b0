#pragma once

#include <vector>

namespace hyperlap {

// Intrinsic dimension m of the cone/current and the dimension n of the
// sphere at infinity; the ambient hyperbolic space is H^{n+1}.
struct Dimensions {
    int m;
    int n;
    Dimensions(int m_, int n_);
};

// Euclidean radius t = tanh(r/2) together with its complement 1 - t.
// Past r ~ 37 the value t rounds to 1 in double precision while the
// complement stays meaningful, so near-boundary code works with the
// complement (and more generally parametrizes by r, never by t).
struct EuclideanRadius {
    double value;       // t
    double complement;  // 1 - t = 2 e^{-r} / (1 + e^{-r})
};

// r = ln((1+t)/(1-t)). Throws std::domain_error outside [0, 1).
double radius_from_euclidean(double t);

// Complement-based inverse, exact for all r in [0, ~700].
double radius_from_euclidean(const EuclideanRadius& t);

EuclideanRadius euclidean_from_radius(double r);

// Per-direction metric factor 2/(1-t^2) of the Poincare ball.
double conformal_factor(double t);

struct BallPoint {
    std::vector<double> coords;  // Euclidean norm < 1
};

struct SphericalCoords {
    double t;                   // Euclidean radial distance, in [0, 1)
    std::vector<double> theta;  // unit vector
};

BallPoint point_from_spherical(const SphericalCoords& sc);
SphericalCoords spherical_from_point(const BallPoint& p);

// Hyperbolic distance arcosh(1 + 2|x-y|^2 / ((1-|x|^2)(1-|y|^2))).
double distance(const BallPoint& x, const BallPoint& y);

// log(sinh t), stable for every t > 0.
double log_sinh(double t);

double coth(double t);

}  // namespace hyperlap
