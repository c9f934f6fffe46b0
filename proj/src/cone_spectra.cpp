#include "hyperlap/cone_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hyperlap/errors.hpp"
#include "hyperlap/numerics.hpp"
#include "hyperlap/radial.hpp"

namespace hyperlap::cones {

BoundaryManifold::BoundaryManifold(Kind kind, Dimensions dims)
    : kind_(kind), dims_(dims) {}

BoundaryManifold BoundaryManifold::circle(double rho) {
    if (!(rho > 0.0) || !(rho < M_PI))
        throw std::domain_error("BoundaryManifold::circle: rho must lie in (0, pi)");
    BoundaryManifold b(Kind::Circle, Dimensions(2, 2));
    b.rho_ = rho;
    b.omega_ = 2.0 * M_PI * std::sin(rho);
    b.has_curve_ = true;
    b.curve_speed_sq_ = std::sin(rho) * std::sin(rho);
    b.normal_speed_sq_ = std::cos(rho) * std::cos(rho);
    b.curve_d_dot_normal_d_ = std::sin(rho) * std::cos(rho);
    b.theta_period_ = 2.0 * M_PI;
    return b;
}

BoundaryManifold BoundaryManifold::sphere(const Dimensions& dims) {
    BoundaryManifold b(Kind::Sphere, dims);
    b.omega_ = 2.0 * std::pow(M_PI, 0.5 * dims.m) / std::tgamma(0.5 * dims.m);
    if (dims.m == 2 && dims.n <= 3) {  // curve storage holds n+1 <= 4 coordinates
        // great circle (cos th, sin th, 0, ...); offsets point along e_3
        b.has_curve_ = true;
        b.curve_speed_sq_ = 1.0;
        b.normal_speed_sq_ = 0.0;
        b.curve_d_dot_normal_d_ = 0.0;
        b.theta_period_ = 2.0 * M_PI;
    }
    return b;
}

BoundaryManifold BoundaryManifold::from_file(const Dimensions& dims,
                                             const std::string& path, double omega) {
    if (!(omega > 0.0))
        throw std::domain_error("BoundaryManifold::from_file: omega must be positive");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("BoundaryManifold::from_file: cannot open " + path);
    BoundaryManifold b(Kind::File, dims);
    b.omega_ = omega;
    std::string line;
    double prev = -1.0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double mu;
        int mult;
        if (!(ls >> mu)) continue;  // blank line
        if (!(ls >> mult) || mult < 1 || mu < prev)
            throw std::runtime_error(
                "BoundaryManifold::from_file: expected ascending 'mu multiplicity' lines");
        b.file_modes_.push_back({mu, mult});
        prev = mu;
    }
    if (b.file_modes_.empty() || b.file_modes_.front().mu != 0.0)
        throw std::runtime_error("BoundaryManifold::from_file: list must start at mu = 0");
    return b;
}

namespace {

long long binomial(int n, int k) {
    if (n < k || k < 0) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// dimension of the degree-j spherical harmonics on S^{m-1}:
// C(j+d, d) - C(j+d-2, d) with d = m-1
int sphere_multiplicity(int m, int j) {
    const int d = m - 1;
    return static_cast<int>(binomial(j + d, d) - binomial(j + d - 2, d));
}

}  // namespace

CrossSectionMode BoundaryManifold::mode(int j) const {
    if (j < 0) throw std::out_of_range("BoundaryManifold::mode: negative index");
    switch (kind_) {
        case Kind::Circle: {
            if (j == 0) return {0.0, 1};
            const double k = j / std::sin(rho_);
            return {k * k, 2};
        }
        case Kind::Sphere: {
            const double mu = static_cast<double>(j) * (j + dims_.m - 2);
            return {mu, sphere_multiplicity(dims_.m, j)};
        }
        case Kind::File:
            if (j >= static_cast<int>(file_modes_.size()))
                throw std::out_of_range("BoundaryManifold::mode: list exhausted");
            return file_modes_[j];
    }
    throw std::logic_error("BoundaryManifold::mode: unreachable");
}

int BoundaryManifold::mode_limit() const {
    return kind_ == Kind::File ? static_cast<int>(file_modes_.size())
                               : std::numeric_limits<int>::max();
}

Vec4 BoundaryManifold::curve(double th) const {
    if (!has_curve_) throw GeometryError("BoundaryManifold: no curve data (m != 2)");
    if (kind_ == Kind::Circle)
        return {std::sin(rho_) * std::cos(th), std::sin(rho_) * std::sin(th),
                std::cos(rho_), 0.0};
    return {std::cos(th), std::sin(th), 0.0, 0.0};
}

Vec4 BoundaryManifold::curve_derivative(double th) const {
    if (!has_curve_) throw GeometryError("BoundaryManifold: no curve data (m != 2)");
    if (kind_ == Kind::Circle)
        return {-std::sin(rho_) * std::sin(th), std::sin(rho_) * std::cos(th), 0.0, 0.0};
    return {-std::sin(th), std::cos(th), 0.0, 0.0};
}

Vec4 BoundaryManifold::normal(double th) const {
    if (!has_curve_) throw GeometryError("BoundaryManifold: no curve data (m != 2)");
    if (kind_ == Kind::Circle)
        return {std::cos(rho_) * std::cos(th), std::cos(rho_) * std::sin(th),
                -std::sin(rho_), 0.0};
    return {0.0, 0.0, 1.0, 0.0};
}

Vec4 BoundaryManifold::normal_derivative(double th) const {
    if (!has_curve_) throw GeometryError("BoundaryManifold: no curve data (m != 2)");
    if (kind_ == Kind::Circle)
        return {-std::cos(rho_) * std::sin(th), std::cos(rho_) * std::cos(th), 0.0, 0.0};
    return {0.0, 0.0, 0.0, 0.0};
}

double cone_truncation_iso_ratio(const Cone& cone, double r) {
    if (!(r > 0.0))
        throw std::domain_error("cone_truncation_iso_ratio: r must be positive");
    const Dimensions& dims = cone.gamma.dims();
    const double omega = cone.gamma.omega();
    // Mass(boundary) = omega sinh^{m-1}(r); Mass(bulk) = omega int_0^r sinh^{m-1}.
    // Written with the boundary weight factored out so nothing overflows.
    const double boundary = omega * 1.0;
    const double bulk = omega * numerics::integrate(
                                    [&](double t) {
                                        if (t <= 0.0) return 0.0;
                                        return std::exp(radial::log_weight(dims, t) -
                                                        radial::log_weight(dims, r));
                                    },
                                    0.0, r, 1e-14, 1e-12);
    return boundary / bulk;
}

namespace {

// 4-point Gauss-Legendre on [-1, 1]
constexpr double kGx[4] = {-0.8611363115940526, -0.3399810435848563,
                           0.3399810435848563, 0.8611363115940526};
constexpr double kGw[4] = {0.3478548451374538, 0.6521451548625461,
                           0.6521451548625461, 0.3478548451374538};

double cell_mass(const Dimensions& dims, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double t = mid + half * kGx[i];
        s += kGw[i] * (t > 0.0 ? std::exp(radial::log_weight(dims, t)) : 0.0);
    }
    return s * half;
}

struct Discretization {
    numerics::TridiagonalSystem sys;
    std::vector<double> masses;
    std::vector<double> grid;
};

Discretization assemble(const RadialEigenproblem& p, int cells) {
    const Dimensions& dims = p.dims;
    const double lo = p.r_min;
    const double L = p.length;
    if (!(lo >= 0.0) || !(lo < L))
        throw std::domain_error("radial_eigs: need 0 <= r_min < length");
    if (cells < 16) throw std::domain_error("radial_eigs: grid too coarse");
    const double h = (L - lo) / cells;
    const bool natural_origin = (lo == 0.0 && p.mu == 0.0);
    const int first = natural_origin ? 0 : 1;

    auto weight_at = [&](double t) {
        return t > 0.0 ? std::exp(radial::log_weight(dims, t)) : 0.0;
    };

    Discretization d;
    const int unknowns = cells - first;  // nodes first .. cells-1; u(L) = 0
    d.sys.diagonal.resize(unknowns);
    d.sys.off_diagonal.resize(unknowns - 1);
    d.masses.resize(unknowns);
    d.grid.resize(unknowns);

    for (int i = first; i < cells; ++i) {
        const int idx = i - first;
        const double r = lo + i * h;
        d.grid[idx] = r;
        const double cell_lo = std::max(lo, r - 0.5 * h);
        const double cell_hi = r + 0.5 * h;
        const double mass = cell_mass(dims, cell_lo, cell_hi);
        const double flux_left = (i == 0) ? 0.0 : weight_at(r - 0.5 * h);
        const double flux_right = weight_at(r + 0.5 * h);
        double diag = (flux_left + flux_right) / h;
        if (p.mu != 0.0)
            diag += p.mu * std::exp(-2.0 * log_sinh(r)) * mass;
        d.masses[idx] = mass;
        d.sys.diagonal[idx] = diag / mass;
        if (i + 1 < cells)
            d.sys.off_diagonal[idx] = -flux_right;  // scaled below
    }
    for (int idx = 0; idx + 1 < unknowns; ++idx)
        d.sys.off_diagonal[idx] /= h * std::sqrt(d.masses[idx] * d.masses[idx + 1]);
    return d;
}

std::vector<double> solve_at(const RadialEigenproblem& p, int cells, int k) {
    const Discretization d = assemble(p, cells);
    return numerics::eigen_smallest_k(d.sys, k);
}

}  // namespace

std::vector<double> radial_eigs(const RadialEigenproblem& p, int k) {
    if (k < 1) throw std::invalid_argument("radial_eigs: k must be >= 1");
    const int N = p.grid_size;
    const auto coarse = solve_at(p, N / 2, k);
    const auto base = solve_at(p, N, k);
    const auto fine = solve_at(p, 2 * N, k);

    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) {
        const double d1 = coarse[j] - base[j];
        const double d2 = base[j] - fine[j];
        const double scale = std::max(1.0, std::abs(fine[j]));
        if (std::abs(d2) > 10.0 * p.tolerance * scale) {
            const double ratio = d1 / d2;
            if (!(ratio > 2.0 && ratio < 8.0))
                throw NonConvergence(
                    "radial_eigs: refinement is not second order; eigenvalue " +
                    std::to_string(j));
        }
        out[j] = (4.0 * fine[j] - base[j]) / 3.0;
    }
    return out;
}

int radial_count_below(const RadialEigenproblem& p, double sigma) {
    const Discretization d = assemble(p, p.grid_size);
    return numerics::sturm_count(d.sys, sigma);
}

GroundState radial_ground_state(const RadialEigenproblem& p) {
    const Discretization d = assemble(p, p.grid_size);
    const double lambda = numerics::eigen_smallest_k(d.sys, 1)[0];
    const int n = d.sys.size();

    // inverse iteration with a shift just below the ground eigenvalue
    const double shift = lambda - std::max(1e-6, 1e-6 * std::abs(lambda));
    std::vector<double> v(n, 1.0);
    for (int it = 0; it < 4; ++it) {
        v = numerics::shifted_solve(d.sys, shift, v);
        double nrm = 0.0;
        for (double c : v) nrm += c * c;
        nrm = std::sqrt(nrm);
        for (double& c : v) c /= nrm;
    }

    GroundState g;
    g.lambda = lambda;
    g.r = d.grid;
    g.u.resize(n);
    for (int i = 0; i < n; ++i) g.u[i] = v[i] / std::sqrt(d.masses[i]);
    return g;
}

SpectrumWindow cone_spectrum_window(const Cone& cone, double L, int k_max,
                                    int grid_size) {
    if (k_max < 1) throw std::invalid_argument("cone_spectrum_window: k_max >= 1");
    const Dimensions& dims = cone.gamma.dims();

    SpectrumWindow window;
    window.truncation_radius = L;

    auto kth_smallest = [&](const std::vector<SpectrumEntry>& entries) {
        // value of the k_max-th smallest eigenvalue counting multiplicity
        int count = 0;
        for (const auto& e : entries) {
            count += e.multiplicity;
            if (count >= k_max) return e.value;
        }
        return std::numeric_limits<double>::infinity();
    };

    std::vector<SpectrumEntry> all;
    for (int j = 0; j < cone.gamma.mode_limit(); ++j) {
        const CrossSectionMode mode = cone.gamma.mode(j);
        RadialEigenproblem problem{dims, mode.mu, 0.0, L, grid_size, 1e-6};
        const int branch_k = std::min(k_max, grid_size / 2 - 2);
        const auto eigs = radial_eigs(problem, branch_k);
        std::sort(all.begin(), all.end(),
                  [](const SpectrumEntry& a, const SpectrumEntry& b) {
                      return a.value < b.value;
                  });
        if (eigs[0] > kth_smallest(all)) break;  // branch bottoms increase with mu
        for (int i = 0; i < branch_k; ++i)
            all.push_back({eigs[i], j, i, mode.multiplicity});
    }

    std::sort(all.begin(), all.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.mu_index != b.mu_index) return a.mu_index < b.mu_index;
        return a.radial_index < b.radial_index;
    });
    int count = 0;
    for (const auto& e : all) {
        window.entries.push_back(e);
        count += e.multiplicity;
        if (count >= k_max) break;
    }
    return window;
}

std::vector<double> essential_spectrum_probe(const Cone& cone, double lambda,
                                             const std::vector<testfn::Quasimode>& modes,
                                             bool enforce) {
    const Dimensions& dims = cone.gamma.dims();
    const double omega = cone.gamma.omega();
    std::vector<double> ratios;
    ratios.reserve(modes.size());
    for (const auto& mode : modes) {
        if (mode.dims().m != dims.m)
            throw std::invalid_argument("essential_spectrum_probe: dimension mismatch");
        if (mode.lambda() != lambda)
            throw std::invalid_argument("essential_spectrum_probe: lambda mismatch");
        // cone integrals factor through omega(Gamma), which cancels in the ratio
        const double lhs =
            omega * numerics::integrate(
                        [&](double t) { return mode.reduced_residual_density(t); },
                        mode.support_lo(), mode.support_hi(), 1e-14, 1e-12);
        const double norm_sq =
            omega * numerics::integrate(
                        [&](double t) { return mode.reduced_density(t); },
                        mode.support_lo(), mode.support_hi(), 1e-14, 1e-12);
        const double ratio = lhs / norm_sq;
        const double bound = 4.0 * testfn::epsilon_r(dims, lambda, mode.R());
        if (enforce && ratio > bound * (1.0 + 1e-9))
            throw InvariantViolation("essential_spectrum_probe: ratio above 4 eps_R");
        ratios.push_back(ratio);
    }
    return ratios;
}

}  // namespace hyperlap::cones
