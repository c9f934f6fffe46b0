#pragma once

#include <utility>
#include <vector>

#include "hyperlap/cone_spectra.hpp"
#include "hyperlap/numerics.hpp"
#include "hyperlap/test_functions.hpp"

namespace hyperlap::graphs {

// rho(theta) = c0 + sum_k (a_k cos(k theta) + b_k sin(k theta))
struct TrigPolynomial {
    double constant = 0.0;
    std::vector<double> cos_coeffs;  // a_1, a_2, ...
    std::vector<double> sin_coeffs;  // b_1, b_2, ...
    double value(double th) const;
    double derivative(double th) const;
};

// Surface asymptotic to Gamma written as a normal graph over its cone:
//   X(t, theta) = t gamma(theta) + amplitude (1-t)^{1+decay} rho(theta) nu(theta),
// where nu is the unit normal to Gamma within the sphere directions. The
// decay exponent keeps the graph C^1 up to the boundary sphere and meeting
// it orthogonally. amplitude = 0 reproduces the cone itself.
struct GraphCurrent {
    cones::Cone cone;  // the asymptotic cone; gamma must carry curve data (m = 2)
    double amplitude = 0.0;
    double decay = 1.0;  // the exponent gamma > 0
    TrigPolynomial rho;
};

// Radial profile with derivatives, for Laplacian and Rayleigh checks.
struct RadialFunction {
    numerics::RealFn f;
    numerics::RealFn df;
    numerics::RealFn d2f;
};

struct FrameDecomposition {
    double varphi;     // cosine between the tangential radial field and X_r
    double y_norm_sq;  // 1 - varphi^2
};

// Two-parameter patch (r, theta) of a cone or graph in the ball model.
// Positions, first derivatives and the induced (conformal) metric are all
// closed-form; near-boundary quantities go through the complement
// c = 1 - tanh(r/2), never through 1 - t directly.
class SurfacePatch {
  public:
    struct Jet {
        double t, c;                  // t = tanh(r/2) and c = 1 - t
        double q, dq;                 // offset magnitude A c^{1+decay} and d/dr
        double rho, drho;
        double e_rr, e_rth, e_thth;   // Euclidean first fundamental form
        double det_e;
        double x_dot_xr, x_dot_xth;
        double norm_sq;               // |x|^2
        double one_minus_norm_sq;     // 1 - |x|^2, no cancellation
        double conf;                  // 2 / (1 - |x|^2)
        double r_exact;               // hyperbolic distance to the origin
        double dr_dr, dr_dth;         // parameter derivatives of r_exact
    };

    SurfacePatch(cones::BoundaryManifold gamma, double amplitude, double decay,
                 TrigPolynomial rho, double r_min, double r_max, double th_min,
                 double th_max);

    Jet jet(double r, double th) const;
    BallPoint position(double r, double th) const;

    const Dimensions& dims() const { return gamma_.dims(); }
    bool is_cone() const { return amplitude_ == 0.0; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double th_min() const { return th_min_; }
    double th_max() const { return th_max_; }
    const cones::BoundaryManifold& gamma() const { return gamma_; }

  private:
    cones::BoundaryManifold gamma_;
    double amplitude_, decay_;
    TrigPolynomial rho_;
    double r_min_, r_max_, th_min_, th_max_;
};

SurfacePatch patch_from_cone(const cones::Cone& cone, double r_min, double r_max,
                             double th_min, double th_max);
SurfacePatch patch_from_cone(const cones::Cone& cone, double r_min, double r_max);

SurfacePatch patch_from_graph(const GraphCurrent& gc, double r_min, double r_max,
                              double th_min, double th_max);
SurfacePatch patch_from_graph(const GraphCurrent& gc, double r_min, double r_max);

// Tensor-product adaptive quadrature of f(r(x)) over the patch, against the
// induced hyperbolic area measure.
double mass_integral(const SurfacePatch& patch, const numerics::RealFn& f_of_r,
                     double rel_tol = 1e-12);

// mass(graph, f) / mass(cone, f) for f supported in [r_lo, r_hi].
double sandwich_ratio(const GraphCurrent& gc, const numerics::RealFn& f, double r_lo,
                      double r_hi);

// Laplace-Beltrami of u(r(x)) at parameter point (r, th), divergence form:
// the flux field sqrt(G) G^{ij} d_j u is evaluated in closed form and its
// divergence by Richardson-extrapolated central differences.
double intrinsic_laplacian(const SurfacePatch& patch, const RadialFunction& u, double r,
                           double th,
                           const numerics::DerivativeStencil& stencil = {1e-3, 3});

FrameDecomposition frame_decomposition(const SurfacePatch& patch, double r, double th);

struct LaplaceSample {
    double r_param, theta;
    double r_exact;
    double error;       // E = intrinsic Laplacian - radial model
    double ratio;       // |E| / (|f''| + |f'|)
    double predicted;   // (1-phi^2)|f''| + (n-m) coth(r)(1-phi^2)|f'|
    double varphi, y_norm_sq;
};

struct LaplaceErrorReport {
    std::vector<LaplaceSample> samples;  // sorted by r_param
    double fd_tolerance;                 // 10x the cone-benchmark FD error
};

// Error term of the radial Laplacian model on the graph, sampled on an
// (r, theta) grid, with the frame-decomposition prediction per point.
// Throws InvariantViolation if |E| exceeds prediction + fd_tolerance.
LaplaceErrorReport laplace_error_report(const GraphCurrent& gc, const RadialFunction& f,
                                        const std::vector<double>& r_samples,
                                        int theta_samples = 8, bool enforce = true);

// Mass(boundary)/Mass(bulk) for the annulus r_inner < r < r_outer of a cone
// patch (both boundary circles counted). Returns (ratio, iso_constant bound)
// and throws InvariantViolation if the ratio falls below the bound.
std::pair<double, double> divergence_ratio_check(const SurfacePatch& patch,
                                                 double r_inner, double r_outer,
                                                 bool enforce = true);

// Rayleigh quotient of u_R composed with the distance function on the graph;
// checks the pointwise gradient bound and the (1+eps)/(1-eps) comparison
// against the cone quotient, with eps recorded from the mass sandwich.
testfn::RayleighReport rayleigh_on_graph(const GraphCurrent& gc,
                                         const testfn::FirstKindFamily& family,
                                         bool enforce = true);

}  // namespace hyperlap::graphs
