// Command-line front end: parameter sweeps over the radial calculus, the
// test-function estimates, cone spectra and graph patches, with CSV/JSON
// reports. Exit status: 0 all asserted invariants pass, 1 at least one
// failed, 2 usage or configuration error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperlap/boundary_graphs.hpp"
#include "hyperlap/cone_spectra.hpp"
#include "hyperlap/errors.hpp"
#include "hyperlap/hyperbolic.hpp"
#include "hyperlap/radial.hpp"
#include "hyperlap/report.hpp"
#include "hyperlap/test_functions.hpp"

namespace {

using namespace hyperlap;

struct Options {
    std::string subcommand;
    int m = 2;
    int n = 0;  // 0: resolved per subcommand
    double lambda = 0.5;
    std::vector<double> R_sweep;
    std::vector<double> L_sweep;
    std::vector<double> r_sweep;
    double r_inner = 0.0;
    double r0 = 10.0;
    int count = 3;
    int k = 5;
    double mu = -1.0;  // >= 0 selects a single radial branch in `spectrum`
    std::string gamma = "sphere";
    double rho = M_PI / 2.0;
    std::string gamma_file;
    double omega = 0.0;
    double amplitude = 1.0;
    double decay = 1.0;
    double rho_c0 = 0.5;
    std::vector<double> rho_cos{0.3};
    std::vector<double> rho_sin;
    double width = 4.0;
    double tol = 1e-8;
    int grid = 4096;
    std::string output = "csv";
    std::string out_path;
};

int resolve_n(const Options& o, int fallback) { return o.n > 0 ? o.n : fallback; }

cones::BoundaryManifold make_gamma(const Options& o, int n) {
    const Dimensions dims(o.m, n);
    if (o.gamma == "equator") {
        if (o.m == 2 && n == 2) return cones::BoundaryManifold::circle(M_PI / 2.0);
        return cones::BoundaryManifold::sphere(dims);
    }
    if (o.gamma == "circle") {
        if (o.m != 2 || n != 2)
            throw CLI::ValidationError("--gamma",
                                       "circle cross-sections require m = 2, n = 2");
        return cones::BoundaryManifold::circle(o.rho);
    }
    if (o.gamma == "sphere") return cones::BoundaryManifold::sphere(dims);
    if (o.gamma == "file")
        return cones::BoundaryManifold::from_file(dims, o.gamma_file, o.omega);
    throw CLI::ValidationError("--gamma", "expected equator|circle|sphere|file");
}

graphs::GraphCurrent make_graph(const Options& o, int n) {
    return graphs::GraphCurrent{cones::Cone{make_gamma(o, n)}, o.amplitude, o.decay,
                                graphs::TrigPolynomial{o.rho_c0, o.rho_cos, o.rho_sin}};
}

std::vector<double> default_geometric_sweep() {
    // r in {0.1 * 2^k}, capped at 50
    std::vector<double> out;
    for (double r = 0.1; r <= 50.0; r *= 2.0) out.push_back(r);
    out.push_back(50.0);
    return out;
}

std::vector<std::pair<std::string, std::string>> metadata_echo(const Options& o) {
    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("subcommand", o.subcommand);
    auto add = [&](const std::string& k, const std::string& v) { meta.emplace_back(k, v); };
    add("m", std::to_string(o.m));
    if (o.n > 0) add("n", std::to_string(o.n));
    add("gamma", o.gamma);
    add("tol", report::format_double(o.tol));
    add("grid", std::to_string(o.grid));
    return meta;
}

int emit(const Options& o, const report::Table& table) {
    const auto meta = metadata_echo(o);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file) {
            std::cerr << "hyperlap: cannot open output file " << o.out_path << '\n';
            return 2;
        }
        out = &file;
    }
    if (o.output == "json")
        table.write_json(*out, meta);
    else
        table.write_csv(*out);
    return table.any_fail() ? 1 : 0;
}

// ---------------------------------------------------------------- iso

int run_iso(Options& o) {
    if (o.r_sweep.empty()) o.r_sweep = default_geometric_sweep();
    const Dimensions dims(o.m, resolve_n(o, o.m));
    report::Table table({"m", "r", "iso_constant", "iso_lower_bound", "mckean",
                         "cheeger_lower", "iso_ge_lower", "lower_gt_flat",
                         "cheeger_ge_mckean"});
    for (double r : o.r_sweep) {
        const double h = radial::iso_constant(dims, r);
        const double lower = radial::iso_lower_bound(dims, r);
        const double mck = radial::mckean_bound(dims);
        const double cheeger = 0.25 * h * h;
        report::Row row;
        row.set("m", o.m);
        row.set("r", r);
        row.set("iso_constant", h);
        row.set("iso_lower_bound", lower);
        row.set("mckean", mck);
        row.set("cheeger_lower", cheeger);
        row.set_flag("iso_ge_lower", h >= lower - o.tol);
        row.set_flag("lower_gt_flat", lower >= dims.m - 1);
        row.set_flag("cheeger_ge_mckean", cheeger >= mck - o.tol);
        table.add(row);
    }
    return emit(o, table);
}

// ---------------------------------------------------------------- profile

int run_profile(Options& o) {
    if (o.r_sweep.empty()) o.r_sweep = default_geometric_sweep();
    const Dimensions dims(o.m, resolve_n(o, o.m));
    const auto profile = radial::comparison_profile(dims);
    report::Table table({"m", "r", "f", "f_prime", "f_second", "ode_residual",
                         "mcoth_term", "residual_ok", "mcoth_nonneg",
                         "fprime_increasing"});
    std::vector<report::Row> rows(o.r_sweep.size());
    report::parallel_for(static_cast<int>(o.r_sweep.size()), [&](int i) {
        const double r = o.r_sweep[i];
        const double fp = profile.f_prime(r);
        const double fpp = profile.f_second(r);
        const double fd_fpp = numerics::fd_derivative(
            [&](double s) { return profile.f_prime(s); }, r, 1,
            {std::min(1e-4, 0.05 * r), 3});
        const double residual = std::abs(fd_fpp + (dims.m - 1) * coth(r) * fp - 1.0);
        const double mcoth = dims.m * coth(r) * fp - 1.0;
        report::Row row;
        row.set("m", o.m);
        row.set("r", r);
        row.set("f", profile.f(r));
        row.set("f_prime", fp);
        row.set("f_second", fpp);
        row.set("ode_residual", residual);
        row.set("mcoth_term", mcoth);
        row.set_flag("residual_ok", residual < o.tol);
        row.set_flag("mcoth_nonneg", mcoth >= -o.tol);
        rows[i] = row;
    });
    double prev = -1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double fp = profile.f_prime(o.r_sweep[i]);
        if (i == 0)
            rows[i].set_flag_na("fprime_increasing");
        else
            rows[i].set_flag("fprime_increasing", fp > prev);
        prev = fp;
        table.add(rows[i]);
    }
    return emit(o, table);
}

// ---------------------------------------------------------------- rayleigh

int run_rayleigh(Options& o) {
    if (o.R_sweep.empty()) o.R_sweep = {4, 8, 16, 32, 64};
    const Dimensions dims(o.m, resolve_n(o, o.m));
    report::Table table({"m", "R", "A_R", "B_R", "quotient", "rin_bound_sqrt",
                         "rin_slack", "rin_ok", "above_mckean", "envelope_ok"});
    std::vector<report::Row> rows(o.R_sweep.size());
    report::parallel_for(static_cast<int>(o.R_sweep.size()), [&](int i) {
        const double R = o.R_sweep[i];
        const auto [a, b] = testfn::ab_constants(dims, R);
        const auto check = testfn::rin_check(dims, R, /*enforce=*/false);
        const double mck = radial::mckean_bound(dims);
        const double gap = check.quotient - mck;
        const double envelope =
            4.0 * M_PI * M_PI / (R * R) + 3.0 * b * std::sqrt(a) + 1e-6;
        report::Row row;
        row.set("m", o.m);
        row.set("R", R);
        row.set("A_R", a);
        row.set("B_R", b);
        row.set("quotient", check.quotient);
        row.set("rin_bound_sqrt", check.bound_sqrt);
        row.set("rin_slack", check.slack);
        row.set_flag("rin_ok", check.holds);
        row.set_flag("above_mckean", gap >= -1e-12);
        row.set_flag("envelope_ok", gap >= -1e-12 && gap <= envelope);
        rows[i] = row;
    });
    for (auto& row : rows) table.add(row);
    return emit(o, table);
}

// ---------------------------------------------------------------- quasimode

int run_quasimode(Options& o) {
    if (o.R_sweep.empty()) o.R_sweep = {8, 16, 32, 64};
    const Dimensions dims(o.m, resolve_n(o, o.m));
    const double lambda = o.lambda;
    report::Table table({"m", "lambda", "R", "residual_lhs", "norm_sq", "ratio",
                         "eps_R", "residual_ok", "grad_ratio", "second_ratio",
                         "c_star_running", "identity_max", "identity_ok"});
    struct Point {
        testfn::ResidualPair pair;
        double eps, r1, r2, identity;
    };
    std::vector<Point> pts(o.R_sweep.size());
    report::parallel_for(static_cast<int>(o.R_sweep.size()), [&](int i) {
        const double R = o.R_sweep[i];
        Point p;
        p.pair = testfn::quasimode_residual(dims, lambda, R, /*enforce=*/false);
        p.eps = testfn::bound_constants(dims, lambda, R).epsilon_R;
        std::tie(p.r1, p.r2) = testfn::derivative_norm_ratios(dims, lambda, R);
        const testfn::Quasimode mode(dims, lambda, R);
        double worst = 0.0;
        for (int j = 0; j < 64; ++j) {
            const double t = 0.5 * R + R * 0.5 * (j + 0.5) / 64.0;
            worst = std::max(worst,
                             std::abs(mode.residual(t) - mode.residual_closed_form(t)));
        }
        p.identity = worst;
        pts[i] = p;
    });
    double c_star = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        c_star = std::max({c_star, p.r1, p.r2});
        report::Row row;
        row.set("m", o.m);
        row.set("lambda", lambda);
        row.set("R", o.R_sweep[i]);
        row.set("residual_lhs", p.pair.lhs);
        row.set("norm_sq", p.pair.norm_sq);
        row.set("ratio", p.pair.lhs / p.pair.norm_sq);
        row.set("eps_R", p.eps);
        row.set_flag("residual_ok", p.pair.lhs <= p.pair.rhs * (1.0 + 1e-9));
        row.set("grad_ratio", p.r1);
        row.set("second_ratio", p.r2);
        row.set("c_star_running", c_star);
        row.set("identity_max", p.identity);
        row.set_flag("identity_ok", p.identity < 1e-9);
        table.add(row);
    }
    return emit(o, table);
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(Options& o) {
    if (o.L_sweep.empty()) o.L_sweep = {40};
    const Dimensions dims(o.m, resolve_n(o, o.m));
    report::Table table({"m", "L", "index", "mu", "mu_index", "radial_index",
                         "multiplicity", "value", "cheeger_lower", "ge_cheeger",
                         "gt_mckean"});
    const double mck = radial::mckean_bound(dims);
    for (double L : o.L_sweep) {
        const double cheeger = radial::cheeger_lower(dims, L);
        struct Entry {
            double value, mu;
            int mu_index, radial_index, multiplicity;
        };
        std::vector<Entry> entries;
        if (o.mu >= 0.0) {
            cones::RadialEigenproblem problem{dims, o.mu, 0.0, L, o.grid, 1e-6};
            const auto eigs = cones::radial_eigs(problem, o.k);
            for (int j = 0; j < o.k; ++j)
                entries.push_back({eigs[j], o.mu, -1, j, 1});
        } else {
            const cones::Cone cone{make_gamma(o, dims.n)};
            const auto window = cones::cone_spectrum_window(cone, L, o.k, o.grid);
            for (const auto& e : window.entries)
                entries.push_back({e.value, cone.gamma.mode(e.mu_index).mu, e.mu_index,
                                   e.radial_index, e.multiplicity});
        }
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            report::Row row;
            row.set("m", o.m);
            row.set("L", L);
            row.set("index", static_cast<int>(i));
            row.set("mu", e.mu);
            row.set("mu_index", e.mu_index);
            row.set("radial_index", e.radial_index);
            row.set("multiplicity", e.multiplicity);
            row.set("value", e.value);
            row.set("cheeger_lower", cheeger);
            row.set_flag("ge_cheeger", e.value >= cheeger - o.tol);
            row.set_flag("gt_mckean", e.value > mck);
            table.add(row);
        }
    }
    return emit(o, table);
}

// ---------------------------------------------------------------- probe

int run_probe(Options& o) {
    const Dimensions dims(o.m, resolve_n(o, o.m));
    const cones::Cone cone{make_gamma(o, dims.n)};
    const auto modes = testfn::build_quasimode_sequence(dims, o.lambda, o.r0, o.count);
    const auto ratios =
        cones::essential_spectrum_probe(cone, o.lambda, modes, /*enforce=*/false);
    report::Table table(
        {"m", "lambda", "k", "R", "ratio", "bound_4eps", "within_bound", "decreasing"});
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double bound = 4.0 * testfn::epsilon_r(dims, o.lambda, modes[i].R());
        report::Row row;
        row.set("m", o.m);
        row.set("lambda", o.lambda);
        row.set("k", static_cast<int>(i));
        row.set("R", modes[i].R());
        row.set("ratio", ratios[i]);
        row.set("bound_4eps", bound);
        row.set_flag("within_bound", ratios[i] <= bound * (1.0 + 1e-9));
        if (i == 0)
            row.set_flag_na("decreasing");
        else
            row.set_flag("decreasing", ratios[i] < ratios[i - 1]);
        table.add(row);
    }
    return emit(o, table);
}

// ---------------------------------------------------------------- sandwich

int run_sandwich(Options& o) {
    if (o.R_sweep.empty()) o.R_sweep = {5, 10, 20};
    const int n = resolve_n(o, 3);
    if (o.m != 2)
        throw CLI::ValidationError("--m", "graph patches are built for m = 2");
    const auto gc = make_graph(o, n);
    report::Table table({"m", "n", "amplitude", "decay", "R", "width", "ratio",
                         "deviation", "nonincreasing"});
    std::vector<double> ratios(o.R_sweep.size());
    report::parallel_for(static_cast<int>(o.R_sweep.size()), [&](int i) {
        const double R = o.R_sweep[i];
        auto bump = [R, w = o.width](double r) {
            if (r <= R || r >= R + w) return 0.0;
            const double s = std::sin(M_PI * (r - R) / w);
            return s * s;
        };
        ratios[i] = graphs::sandwich_ratio(gc, bump, R, R + o.width);
    });
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        report::Row row;
        row.set("m", o.m);
        row.set("n", n);
        row.set("amplitude", o.amplitude);
        row.set("decay", o.decay);
        row.set("R", o.R_sweep[i]);
        row.set("width", o.width);
        row.set("ratio", ratios[i]);
        const double dev = std::abs(ratios[i] - 1.0);
        row.set("deviation", dev);
        if (i == 0)
            row.set_flag_na("nonincreasing");
        else
            row.set_flag("nonincreasing",
                         dev <= std::abs(ratios[i - 1] - 1.0) * (1.0 + 1e-9) + 1e-12);
        table.add(row);
    }
    return emit(o, table);
}

// ---------------------------------------------------------------- laplace-error

int run_laplace_error(Options& o) {
    if (o.r_sweep.empty()) o.r_sweep = {6, 9, 12};
    const int n = resolve_n(o, 3);
    if (o.m != 2)
        throw CLI::ValidationError("--m", "graph patches are built for m = 2");
    const auto gc = make_graph(o, n);
    const graphs::RadialFunction f{[](double r) { return r * r; },
                                   [](double r) { return 2.0 * r; },
                                   [](double) { return 2.0; }};
    const auto report_data =
        graphs::laplace_error_report(gc, f, o.r_sweep, 8, /*enforce=*/false);
    // one row per patch sample, plus the per-radius maximum and its trend
    report::Table table({"m", "n", "r", "theta", "r_exact", "E", "ratio", "predicted",
                         "varphi", "y_norm_sq", "fd_tolerance", "within_prediction",
                         "radius_max_ratio", "radius_ratio_decreasing"});
    std::vector<double> sorted_r(o.r_sweep);
    std::sort(sorted_r.begin(), sorted_r.end());
    double prev_ratio = -1.0;
    for (std::size_t i = 0; i < sorted_r.size(); ++i) {
        double max_ratio = 0.0;
        for (const auto& s : report_data.samples)
            if (s.r_param == sorted_r[i]) max_ratio = std::max(max_ratio, s.ratio);
        bool first_of_radius = true;
        for (const auto& s : report_data.samples) {
            if (s.r_param != sorted_r[i]) continue;
            report::Row row;
            row.set("m", o.m);
            row.set("n", n);
            row.set("r", s.r_param);
            row.set("theta", s.theta);
            row.set("r_exact", s.r_exact);
            row.set("E", s.error);
            row.set("ratio", s.ratio);
            row.set("predicted", s.predicted);
            row.set("varphi", s.varphi);
            row.set("y_norm_sq", s.y_norm_sq);
            row.set("fd_tolerance", report_data.fd_tolerance);
            row.set_flag("within_prediction",
                         std::abs(s.error) <= s.predicted + report_data.fd_tolerance);
            row.set("radius_max_ratio", max_ratio);
            if (!first_of_radius || i == 0)
                row.set_flag_na("radius_ratio_decreasing");
            else
                row.set_flag("radius_ratio_decreasing", max_ratio < prev_ratio);
            first_of_radius = false;
            table.add(row);
        }
        prev_ratio = max_ratio;
    }
    return emit(o, table);
}

// ---------------------------------------------------------------- cheeger

int run_cheeger(Options& o) {
    if (o.r_sweep.empty()) o.r_sweep = {1, 2, 4, 8};
    if (o.m != 2)
        throw CLI::ValidationError("--m", "patch-level annuli are built for m = 2");
    const int n = resolve_n(o, 2);
    const cones::Cone cone{make_gamma(o, n)};
    report::Table table({"m", "r_inner", "r_outer", "ratio", "bound", "ge_bound"});
    for (double r : o.r_sweep) {
        const auto patch = graphs::patch_from_cone(cone, 0.0, r + 1.0);
        const auto [ratio, bound] =
            graphs::divergence_ratio_check(patch, o.r_inner, r, /*enforce=*/false);
        report::Row row;
        row.set("m", o.m);
        row.set("r_inner", o.r_inner);
        row.set("r_outer", r);
        row.set("ratio", ratio);
        row.set("bound", bound);
        row.set_flag("ge_bound", ratio >= bound * (1.0 - 1e-9) - 1e-12);
        table.add(row);
    }
    return emit(o, table);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Numerical laboratory for spectra of minimal hypersurfaces in "
                 "hyperbolic space"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key=value configuration file");
    app.allow_config_extras(CLI::config_extras_mode::error);

    app.add_option("--m", o.m, "intrinsic dimension m >= 2");
    app.add_option("--n", o.n, "sphere-at-infinity dimension (default per subcommand)");
    app.add_option("--lambda", o.lambda, "spectral parameter");
    app.add_option("--R", o.R_sweep, "test-function sweep R values");
    app.add_option("--L", o.L_sweep, "truncation radii");
    app.add_option("--r", o.r_sweep, "radial sample sweep");
    app.add_option("--r-inner", o.r_inner, "inner radius for annuli");
    app.add_option("--r0", o.r0, "first quasimode radius");
    app.add_option("--count", o.count, "quasimode sequence length");
    app.add_option("--k", o.k, "number of eigenvalues");
    app.add_option("--mu", o.mu, "fixed cross-section eigenvalue (spectrum only)");
    app.add_option("--gamma", o.gamma, "equator|circle|sphere|file");
    app.add_option("--rho", o.rho, "spherical radius of the latitude circle");
    app.add_option("--gamma-file", o.gamma_file, "cross-section eigenvalue list file");
    app.add_option("--omega", o.omega, "volume of Gamma for --gamma file");
    app.add_option("--amplitude", o.amplitude, "perturbation amplitude");
    app.add_option("--decay", o.decay, "perturbation decay exponent");
    app.add_option("--rho-c0", o.rho_c0, "constant term of rho(theta)");
    app.add_option("--rho-cos", o.rho_cos, "cosine coefficients of rho(theta)");
    app.add_option("--rho-sin", o.rho_sin, "sine coefficients of rho(theta)");
    app.add_option("--width", o.width, "support width of the sandwich bump");
    app.add_option("--tol", o.tol, "tolerance for flagged checks");
    app.add_option("--grid", o.grid, "radial grid cells");
    app.add_option("--output", o.output, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", o.out_path, "output path (default stdout)");

    app.add_subcommand("iso", "isoperimetric profile sweep");
    app.add_subcommand("profile", "comparison profile residuals");
    app.add_subcommand("rayleigh", "first-kind Rayleigh bound sweep");
    app.add_subcommand("quasimode", "quasimode residual estimates");
    app.add_subcommand("spectrum", "truncated cone spectra");
    app.add_subcommand("probe", "essential spectrum probe");
    app.add_subcommand("sandwich", "near-infinity mass comparison");
    app.add_subcommand("laplace-error", "Laplacian error term on graphs");
    app.add_subcommand("cheeger", "isoperimetric ratio of cone annuli");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    o.subcommand = app.get_subcommands().front()->get_name();
    try {
        // sweep lists must arrive ascending; defaults are generated that way
        for (const auto* sweep : {&o.R_sweep, &o.L_sweep, &o.r_sweep})
            for (std::size_t i = 1; i < sweep->size(); ++i)
                if (!((*sweep)[i] > (*sweep)[i - 1]))
                    throw CLI::ValidationError("sweep",
                                               "sweep values must be ascending");
        if (o.subcommand == "iso") return run_iso(o);
        if (o.subcommand == "profile") return run_profile(o);
        if (o.subcommand == "rayleigh") return run_rayleigh(o);
        if (o.subcommand == "quasimode") return run_quasimode(o);
        if (o.subcommand == "spectrum") return run_spectrum(o);
        if (o.subcommand == "probe") return run_probe(o);
        if (o.subcommand == "sandwich") return run_sandwich(o);
        if (o.subcommand == "laplace-error") return run_laplace_error(o);
        if (o.subcommand == "cheeger") return run_cheeger(o);
    } catch (const CLI::Error& e) {
        std::cerr << "hyperlap: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "hyperlap: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hyperlap: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hyperlap: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
