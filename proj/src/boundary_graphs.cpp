#include "hyperlap/boundary_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperlap/errors.hpp"
#include "hyperlap/radial.hpp"

namespace hyperlap::graphs {

double TrigPolynomial::value(double th) const {
    double s = constant;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
        s += cos_coeffs[k] * std::cos((k + 1) * th);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
        s += sin_coeffs[k] * std::sin((k + 1) * th);
    return s;
}

double TrigPolynomial::derivative(double th) const {
    double s = 0.0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
        s -= cos_coeffs[k] * (k + 1) * std::sin((k + 1) * th);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
        s += sin_coeffs[k] * (k + 1) * std::cos((k + 1) * th);
    return s;
}

SurfacePatch::SurfacePatch(cones::BoundaryManifold gamma, double amplitude, double decay,
                           TrigPolynomial rho, double r_min, double r_max, double th_min,
                           double th_max)
    : gamma_(std::move(gamma)),
      amplitude_(amplitude),
      decay_(decay),
      rho_(std::move(rho)),
      r_min_(r_min),
      r_max_(r_max),
      th_min_(th_min),
      th_max_(th_max) {
    if (gamma_.dims().m != 2)
        throw GeometryError("SurfacePatch: patches are built for m = 2 only");
    if (!gamma_.has_curve())
        throw GeometryError("SurfacePatch: boundary manifold carries no curve data");
    if (!(r_min >= 0.0) || !(r_min < r_max))
        throw std::domain_error("SurfacePatch: need 0 <= r_min < r_max");
    if (!(th_min < th_max))
        throw std::domain_error("SurfacePatch: need th_min < th_max");
    if (amplitude_ != 0.0 && !(decay_ > 0.0))
        throw std::domain_error("SurfacePatch: decay exponent must be positive");
}

SurfacePatch::Jet SurfacePatch::jet(double r, double th) const {
    Jet j;
    const double e = std::exp(-r);
    j.c = 2.0 * e / (1.0 + e);  // 1 - tanh(r/2)
    j.t = 1.0 - j.c;
    const double tp = 0.5 * j.c * (2.0 - j.c);  // dt/dr = (1 - t^2)/2
    j.rho = rho_.value(th);
    j.drho = rho_.derivative(th);
    if (amplitude_ != 0.0) {
        j.q = amplitude_ * std::pow(j.c, 1.0 + decay_);
        j.dq = -amplitude_ * (1.0 + decay_) * std::pow(j.c, decay_) * tp;
    } else {
        j.q = 0.0;
        j.dq = 0.0;
    }

    const double gsp = gamma_.curve_speed_sq();
    const double nsp = gamma_.normal_speed_sq();
    const double gdnd = gamma_.curve_d_dot_normal_d();

    j.e_rr = tp * tp + j.dq * j.dq * j.rho * j.rho;
    j.e_rth = j.q * j.dq * j.rho * j.drho;
    j.e_thth = j.t * j.t * gsp + 2.0 * j.t * j.q * j.rho * gdnd +
               j.q * j.q * (j.drho * j.drho + j.rho * j.rho * nsp);
    j.det_e = j.e_rr * j.e_thth - j.e_rth * j.e_rth;

    j.x_dot_xr = j.t * tp + j.q * j.dq * j.rho * j.rho;
    j.x_dot_xth = j.q * j.q * j.rho * j.drho;
    j.norm_sq = j.t * j.t + j.q * j.q * j.rho * j.rho;
    j.one_minus_norm_sq = j.c * (2.0 - j.c) - j.q * j.q * j.rho * j.rho;
    if (!(j.one_minus_norm_sq > 0.0))
        throw GeometryError("SurfacePatch: point left the open unit ball");
    j.conf = 2.0 / j.one_minus_norm_sq;

    const double s = std::sqrt(j.norm_sq);
    if (s > 0.0) {
        const double one_minus_s = j.one_minus_norm_sq / (1.0 + s);
        j.r_exact = std::log1p(s) - std::log(one_minus_s);
        j.dr_dr = j.conf * j.x_dot_xr / s;
        j.dr_dth = j.conf * j.x_dot_xth / s;
    } else {
        j.r_exact = 0.0;
        j.dr_dr = 1.0;
        j.dr_dth = 0.0;
    }
    return j;
}

BallPoint SurfacePatch::position(double r, double th) const {
    const Jet j = jet(r, th);
    const cones::Vec4 g = gamma_.curve(th);
    const cones::Vec4 nu = gamma_.normal(th);
    BallPoint p;
    p.coords.resize(gamma_.ambient_coords());
    for (int i = 0; i < gamma_.ambient_coords(); ++i)
        p.coords[i] = j.t * g[i] + j.q * j.rho * nu[i];
    return p;
}

SurfacePatch patch_from_cone(const cones::Cone& cone, double r_min, double r_max,
                             double th_min, double th_max) {
    return SurfacePatch(cone.gamma, 0.0, 1.0, TrigPolynomial{}, r_min, r_max, th_min,
                        th_max);
}

SurfacePatch patch_from_cone(const cones::Cone& cone, double r_min, double r_max) {
    return patch_from_cone(cone, r_min, r_max, 0.0, cone.gamma.theta_period());
}

SurfacePatch patch_from_graph(const GraphCurrent& gc, double r_min, double r_max,
                              double th_min, double th_max) {
    return SurfacePatch(gc.cone.gamma, gc.amplitude, gc.decay, gc.rho, r_min, r_max,
                        th_min, th_max);
}

SurfacePatch patch_from_graph(const GraphCurrent& gc, double r_min, double r_max) {
    return patch_from_graph(gc, r_min, r_max, 0.0, gc.cone.gamma.theta_period());
}

double mass_integral(const SurfacePatch& patch, const numerics::RealFn& f_of_r,
                     double rel_tol) {
    auto integrand = [&](double r, double th) {
        const auto j = patch.jet(r, th);
        if (!(j.det_e >= 0.0))
            throw GeometryError("mass_integral: Gram matrix lost positivity");
        const double area = j.conf * j.conf * std::sqrt(j.det_e);
        return f_of_r(j.r_exact) * area;
    };
    // coarse probe for the absolute scale, so slices where the integrand is
    // negligible get an absolute floor instead of an unreachable relative one
    double scale = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double r =
            patch.r_min() + (patch.r_max() - patch.r_min()) * (i + 0.5) / 16.0;
        for (int k = 0; k < 6; ++k) {
            const double th =
                patch.th_min() + (patch.th_max() - patch.th_min()) * (k + 0.5) / 6.0;
            scale = std::max(scale, std::abs(integrand(r, th)));
        }
    }
    const double abs_inner = std::max(
        1e-280, scale * (patch.th_max() - patch.th_min()) * 1e-14);
    // the inner pass runs an order tighter so its noise does not stall the
    // outer error estimates
    auto slice = [&](double r) {
        numerics::QuadratureRule inner;
        inner.a = patch.th_min();
        inner.b = patch.th_max();
        inner.abs_tol = abs_inner;
        inner.rel_tol = 0.1 * rel_tol;
        inner.max_subdivisions = 4000;
        return numerics::integrate([&](double th) { return integrand(r, th); }, inner);
    };
    numerics::QuadratureRule outer;
    outer.a = patch.r_min();
    outer.b = patch.r_max();
    outer.abs_tol = std::max(1e-280, scale * 1e-14);
    outer.rel_tol = rel_tol;
    outer.max_subdivisions = 8000;
    return numerics::integrate(slice, outer);
}

double sandwich_ratio(const GraphCurrent& gc, const numerics::RealFn& f, double r_lo,
                      double r_hi) {
    if (!(r_lo > 0.0) || !(r_lo < r_hi))
        throw std::domain_error("sandwich_ratio: need 0 < r_lo < r_hi");
    // pad the lower parameter edge: the graph sits at slightly larger radius
    // than its parameter, so f's support starts just inside the patch
    const double pad = std::min(0.05, 0.5 * r_lo);
    const SurfacePatch graph = patch_from_graph(gc, r_lo - pad, r_hi);
    const SurfacePatch cone = patch_from_cone(gc.cone, r_lo - pad, r_hi);
    const double denominator = mass_integral(cone, f, 1e-11);
    if (denominator == 0.0)
        throw std::domain_error("sandwich_ratio: cone integral vanishes");
    return mass_integral(graph, f, 1e-11) / denominator;
}

namespace {

// flux field W^i = sqrt(det E) E^{ij} d_j(u o r); the conformal factor of the
// two-dimensional metric cancels in W and reappears in the divisor
std::pair<double, double> flux_field(const SurfacePatch& patch, const RadialFunction& u,
                                     double r, double th) {
    const auto j = patch.jet(r, th);
    if (!(j.det_e > 0.0)) throw GeometryError("intrinsic_laplacian: degenerate metric");
    const double fp = u.df(j.r_exact);
    const double ur = fp * j.dr_dr;
    const double uth = fp * j.dr_dth;
    const double sq = std::sqrt(j.det_e);
    return {(j.e_thth * ur - j.e_rth * uth) / sq, (j.e_rr * uth - j.e_rth * ur) / sq};
}

}  // namespace

double intrinsic_laplacian(const SurfacePatch& patch, const RadialFunction& u, double r,
                           double th, const numerics::DerivativeStencil& stencil) {
    const auto j = patch.jet(r, th);
    if (!(j.det_e > 0.0)) throw GeometryError("intrinsic_laplacian: degenerate metric");
    const double div_r = numerics::fd_derivative(
        [&](double rr) { return flux_field(patch, u, rr, th).first; }, r, 1, stencil);
    const double div_th = numerics::fd_derivative(
        [&](double tt) { return flux_field(patch, u, r, tt).second; }, th, 1, stencil);
    return (div_r + div_th) / (j.conf * j.conf * std::sqrt(j.det_e));
}

FrameDecomposition frame_decomposition(const SurfacePatch& patch, double r, double th) {
    const auto j = patch.jet(r, th);
    const double s = std::sqrt(j.norm_sq);
    if (!(s > 0.0)) throw GeometryError("frame_decomposition: at the cone vertex");
    if (!(j.det_e > 0.0)) throw GeometryError("frame_decomposition: degenerate metric");
    // tangential projection of the unit radial direction: solve E ab = b
    const double b_r = j.x_dot_xr / s;
    const double b_th = j.x_dot_xth / s;
    const double a = (j.e_thth * b_r - j.e_rth * b_th) / j.det_e;
    const double b = (j.e_rr * b_th - j.e_rth * b_r) / j.det_e;
    double phi_sq = a * b_r + b * b_th;  // = |P x_hat|^2
    phi_sq = std::clamp(phi_sq, 0.0, 1.0);
    if (!(phi_sq > 0.0))
        throw GeometryError("frame_decomposition: tangential projection vanishes");
    return FrameDecomposition{std::sqrt(phi_sq), 1.0 - phi_sq};
}

LaplaceErrorReport laplace_error_report(const GraphCurrent& gc, const RadialFunction& f,
                                        const std::vector<double>& r_samples,
                                        int theta_samples, bool enforce) {
    if (r_samples.empty())
        throw std::domain_error("laplace_error_report: no sample radii");
    if (theta_samples < 1)
        throw std::domain_error("laplace_error_report: need theta samples");
    std::vector<double> radii(r_samples);
    std::sort(radii.begin(), radii.end());
    const double r_lo = std::max(0.5, radii.front() - 1.0);
    const double r_hi = radii.back() + 1.0;
    const SurfacePatch graph = patch_from_graph(gc, r_lo, r_hi);
    const SurfacePatch cone = patch_from_cone(gc.cone, r_lo, r_hi);
    const int m = gc.cone.gamma.dims().m;
    const int n = gc.cone.gamma.dims().n;
    const double period = gc.cone.gamma.theta_period();

    auto model = [&](double r_exact) {
        return f.d2f(r_exact) + (m - 1) * coth(r_exact) * f.df(r_exact);
    };

    LaplaceErrorReport report;
    double cone_error = 0.0;
    for (double r : radii) {
        for (int i = 0; i < theta_samples; ++i) {
            const double th = period * (i + 0.37) / theta_samples;
            const auto jc = cone.jet(r, th);
            cone_error = std::max(
                cone_error,
                std::abs(intrinsic_laplacian(cone, f, r, th) - model(jc.r_exact)));

            const auto jg = graph.jet(r, th);
            LaplaceSample sample;
            sample.r_param = r;
            sample.theta = th;
            sample.r_exact = jg.r_exact;
            sample.error = intrinsic_laplacian(graph, f, r, th) - model(jg.r_exact);
            const double fpp = std::abs(f.d2f(jg.r_exact));
            const double fp = std::abs(f.df(jg.r_exact));
            sample.ratio = std::abs(sample.error) / (fpp + fp);
            const auto frame = frame_decomposition(graph, r, th);
            sample.varphi = frame.varphi;
            sample.y_norm_sq = frame.y_norm_sq;
            sample.predicted = frame.y_norm_sq * fpp +
                               (n - m) * coth(jg.r_exact) * frame.y_norm_sq * fp;
            report.samples.push_back(sample);
        }
    }
    report.fd_tolerance = 10.0 * cone_error;
    for (const auto& s : report.samples)
        if (enforce && std::abs(s.error) > s.predicted + report.fd_tolerance)
            throw InvariantViolation(
                "laplace_error_report: error term exceeds the frame prediction");
    return report;
}

std::pair<double, double> divergence_ratio_check(const SurfacePatch& patch,
                                                 double r_inner, double r_outer,
                                                 bool enforce) {
    if (!patch.is_cone())
        throw std::invalid_argument("divergence_ratio_check: patch must be a cone");
    if (!(r_inner >= 0.0) || !(r_inner < r_outer))
        throw std::domain_error("divergence_ratio_check: need 0 <= r_inner < r_outer");
    if (r_inner < patch.r_min() || r_outer > patch.r_max())
        throw std::domain_error("divergence_ratio_check: annulus outside the patch");

    auto boundary_length = [&](double r) {
        if (r == 0.0) return 0.0;
        return numerics::integrate(
            [&](double th) {
                const auto j = patch.jet(r, th);
                return j.conf * std::sqrt(j.e_thth);
            },
            patch.th_min(), patch.th_max(), 1e-30, 1e-12);
    };
    auto bulk = [&](double r) {
        return numerics::integrate(
            [&](double th) {
                const auto j = patch.jet(r, th);
                return j.conf * j.conf * std::sqrt(std::max(j.det_e, 0.0));
            },
            patch.th_min(), patch.th_max(), 1e-30, 1e-12);
    };
    const double boundary = boundary_length(r_inner) + boundary_length(r_outer);
    const double volume =
        numerics::integrate(bulk, r_inner, r_outer, 1e-30, 1e-12);
    const double ratio = boundary / volume;
    const double bound = radial::iso_constant(patch.dims(), r_outer);
    if (enforce && ratio < bound * (1.0 - 1e-9) - 1e-12)
        throw InvariantViolation("divergence_ratio_check: below the comparison bound");
    return {ratio, bound};
}

testfn::RayleighReport rayleigh_on_graph(const GraphCurrent& gc,
                                         const testfn::FirstKindFamily& family,
                                         bool enforce) {
    const double lo = family.support_lo();
    const double hi = family.support_hi();
    const double pad = std::min(0.05, 0.5 * lo);
    const SurfacePatch graph = patch_from_graph(gc, lo - pad, hi);

    // pointwise |grad(u o r)| <= |u'(r)|, i.e. |grad r|_g <= 1
    for (int i = 0; i < 100; ++i) {
        const double r = lo + (hi - lo) * (i + 0.5) / 100.0;
        const double th = gc.cone.gamma.theta_period() * 0.01 * i;
        const auto j = graph.jet(r, th);
        const double eform = (j.e_thth * j.dr_dr * j.dr_dr -
                              2.0 * j.e_rth * j.dr_dr * j.dr_dth +
                              j.e_rr * j.dr_dth * j.dr_dth) /
                             j.det_e;
        const double grad_sq = eform / (j.conf * j.conf);
        if (enforce && grad_sq > 1.0 + 1e-10)
            throw InvariantViolation("rayleigh_on_graph: gradient bound violated");
    }

    auto energy_integrand = [&](double r, double th) {
        const auto j = graph.jet(r, th);
        const double up = family.derivative(j.r_exact);
        const double eform = (j.e_thth * j.dr_dr * j.dr_dr -
                              2.0 * j.e_rth * j.dr_dr * j.dr_dth +
                              j.e_rr * j.dr_dth * j.dr_dth) /
                             j.det_e;
        // conformal factors cancel between |grad|^2 and the area element
        return up * up * eform * std::sqrt(j.det_e);
    };
    double scale = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int k = 0; k < 6; ++k)
            scale = std::max(scale,
                             std::abs(energy_integrand(
                                 lo - pad + (hi - lo + pad) * (i + 0.5) / 16.0,
                                 graph.th_min() + (graph.th_max() - graph.th_min()) *
                                                      (k + 0.5) / 6.0)));
    auto energy_slice = [&](double r) {
        numerics::QuadratureRule inner;
        inner.a = graph.th_min();
        inner.b = graph.th_max();
        inner.abs_tol = std::max(
            1e-280, scale * (graph.th_max() - graph.th_min()) * 1e-14);
        inner.rel_tol = 1e-12;
        inner.max_subdivisions = 4000;
        return numerics::integrate([&](double th) { return energy_integrand(r, th); },
                                   inner);
    };
    numerics::QuadratureRule outer;
    outer.a = graph.r_min();
    outer.b = graph.r_max();
    outer.abs_tol = std::max(1e-280, scale * 1e-14);
    outer.rel_tol = 1e-11;
    outer.max_subdivisions = 8000;
    const double numerator = numerics::integrate(energy_slice, outer);
    const double denominator = mass_integral(
        graph, [&](double r) { const double u = family.value(r); return u * u; }, 1e-11);
    const double quotient = numerator / denominator;

    // sandwich factor for the two densities entering the quotient
    const double s_mass = sandwich_ratio(
        gc, [&](double r) { const double u = family.value(r); return u * u; }, lo, hi);
    const double s_energy = sandwich_ratio(
        gc, [&](double r) { const double u = family.derivative(r); return u * u; }, lo,
        hi);
    const double eps = std::max(std::abs(s_mass - 1.0), std::abs(s_energy - 1.0));
    const double cone_quotient = testfn::rayleigh_radial(family).quotient;
    const double allowed = (1.0 + eps) / (1.0 - eps) * cone_quotient;
    if (enforce && quotient > allowed * (1.0 + 1e-8) + 1e-12)
        throw InvariantViolation("rayleigh_on_graph: sandwich comparison violated");
    return testfn::RayleighReport{numerator, denominator, quotient, "graph"};
}

}  // namespace hyperlap::graphs
