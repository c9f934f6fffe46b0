#pragma once

#include <array>
#include <string>
#include <vector>

#include "hyperlap/hyperbolic.hpp"
#include "hyperlap/test_functions.hpp"

namespace hyperlap::cones {

using Vec4 = std::array<double, 4>;  // ambient coordinates, n+1 <= 4 for curves

struct CrossSectionMode {
    double mu;         // Laplace eigenvalue of the cross-section
    int multiplicity;
};

// Closed submanifold Gamma^{m-1} of the unit n-sphere: its (m-1)-volume and
// cross-section spectrum, plus explicit curve data when m == 2 (used by the
// graph machinery). Latitude circles and equatorial round spheres carry
// analytic spectra; anything else comes from a plain-text eigenvalue list.
class BoundaryManifold {
  public:
    // Latitude circle of spherical radius rho in S^2: omega = 2 pi sin(rho),
    // mu_k = (k / sin rho)^2 with multiplicity 2 for k >= 1.
    static BoundaryManifold circle(double rho);

    // Equatorial S^{m-1} inside S^n: omega = 2 pi^{m/2} / Gamma(m/2),
    // mu_k = k (k + m - 2) with the spherical-harmonic multiplicities.
    static BoundaryManifold sphere(const Dimensions& dims);

    // One "mu multiplicity" pair per line, ascending mu; '#' comments.
    static BoundaryManifold from_file(const Dimensions& dims, const std::string& path,
                                      double omega);

    const Dimensions& dims() const { return dims_; }
    double omega() const { return omega_; }
    CrossSectionMode mode(int j) const;
    int mode_limit() const;  // number of modes available (large for analytic families)

    // curve data, available when m == 2
    bool has_curve() const { return has_curve_; }
    int ambient_coords() const { return dims_.n + 1; }
    Vec4 curve(double th) const;
    Vec4 curve_derivative(double th) const;
    Vec4 normal(double th) const;
    Vec4 normal_derivative(double th) const;
    // constants of the (homogeneous) curve families
    double curve_speed_sq() const { return curve_speed_sq_; }
    double normal_speed_sq() const { return normal_speed_sq_; }
    double curve_d_dot_normal_d() const { return curve_d_dot_normal_d_; }
    double theta_period() const { return theta_period_; }

  private:
    enum class Kind { Circle, Sphere, File };
    BoundaryManifold(Kind kind, Dimensions dims);

    Kind kind_;
    Dimensions dims_;
    double omega_ = 0.0;
    double rho_ = 0.0;  // Circle only
    std::vector<CrossSectionMode> file_modes_;
    bool has_curve_ = false;
    double curve_speed_sq_ = 0.0, normal_speed_sq_ = 0.0, curve_d_dot_normal_d_ = 0.0;
    double theta_period_ = 0.0;
};

// Geodesic cone over Gamma with vertex at the origin of the ball.
struct Cone {
    BoundaryManifold gamma;
};

// Mass(boundary)/Mass(bulk) of the truncated cone; the omega factors cancel
// and the result equals iso_constant(m, r).
double cone_truncation_iso_ratio(const Cone& cone, double r);

// Radial reduction of the cone Laplacian at cross-section eigenvalue mu:
//   -(w u')'/w + mu sinh^{-2}(r) u = lambda u,  w = sinh^{m-1}(r),
// on (r_min, length) with a Dirichlet cap at the outer radius. r_min = 0
// keeps the natural (weighted-form) origin for mu = 0; for mu > 0 the first
// node carries a Dirichlet cap. The solver discretizes the weighted form on
// a uniform grid with flux-exact cell coefficients and symmetrizes through
// v_i = sqrt(M_i) u_i; the continuum transform v = sqrt(w) u turns the
// operator into -v'' + V v with V = (m-1)^2/4 + alpha(r) + mu sinh^{-2}(r),
// which is where the (m-1)^2/4 spectral threshold comes from.
struct RadialEigenproblem {
    Dimensions dims;
    double mu = 0.0;
    double r_min = 0.0;
    double length = 40.0;
    int grid_size = 4096;     // cells at the base resolution
    double tolerance = 1e-6;  // stabilization target for the refinement
};

// k smallest eigenvalues, ascending. Solved at grid_size/2, grid_size and
// 2*grid_size; the observed convergence order must be close to 2, and the
// returned values are Richardson-extrapolated from the two finest grids.
// Throws NonConvergence when the refinement does not stabilize.
std::vector<double> radial_eigs(const RadialEigenproblem& problem, int k);

// Number of eigenvalues strictly below sigma at the base grid resolution
// (Sturm count of the discretized weighted form).
int radial_count_below(const RadialEigenproblem& problem, double sigma);

// Ground state on the base grid, for oscillation checks.
struct GroundState {
    double lambda;
    std::vector<double> r;
    std::vector<double> u;
};
GroundState radial_ground_state(const RadialEigenproblem& problem);

struct SpectrumEntry {
    double value;
    int mu_index;      // index into the cross-section mode list
    int radial_index;  // index within the radial branch
    int multiplicity;
};

struct SpectrumWindow {
    std::vector<SpectrumEntry> entries;  // ascending (value, mu_index, radial_index)
    double truncation_radius;
};

// Merge radial branches over the cross-section spectrum until k_max
// eigenvalues (counting multiplicity) are collected.
SpectrumWindow cone_spectrum_window(const Cone& cone, double L, int k_max,
                                    int grid_size = 4096);

// Residual ratios int |Delta phi_k - lambda phi_k|^2 / int |phi_k|^2 over
// the cone for each quasimode; each must stay below 4 eps_{R_k}.
std::vector<double> essential_spectrum_probe(const Cone& cone, double lambda,
                                             const std::vector<testfn::Quasimode>& modes,
                                             bool enforce = true);

}  // namespace hyperlap::cones
