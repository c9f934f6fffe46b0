#include "hyperlap/cone_spectra.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "hyperlap/errors.hpp"
#include "hyperlap/radial.hpp"
#include "oracles.hpp"

using namespace hyperlap;
using cones::BoundaryManifold;
using cones::Cone;
using cones::RadialEigenproblem;

TEST_CASE("circle cross-sections") {
    const auto equator = BoundaryManifold::circle(M_PI / 2.0);
    CHECK(equator.omega() == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(equator.mode(0).mu == 0.0);
    CHECK(equator.mode(0).multiplicity == 1);
    CHECK(equator.mode(1).mu == doctest::Approx(1.0));
    CHECK(equator.mode(1).multiplicity == 2);
    CHECK(equator.mode(3).mu == doctest::Approx(9.0));

    const auto narrow = BoundaryManifold::circle(M_PI / 6.0);
    CHECK(narrow.omega() == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(narrow.mode(1).mu == doctest::Approx(4.0).epsilon(1e-14));

    CHECK(BoundaryManifold::circle(1e-4).omega() ==
          doctest::Approx(2.0 * M_PI * 1e-4).epsilon(1e-10));
    CHECK_THROWS_AS(BoundaryManifold::circle(0.0), std::domain_error);
    CHECK_THROWS_AS(BoundaryManifold::circle(M_PI), std::domain_error);
}

TEST_CASE("equatorial sphere cross-sections") {
    const auto s1 = BoundaryManifold::sphere(Dimensions(2, 2));
    CHECK(s1.omega() == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(s1.mode(2).mu == doctest::Approx(4.0));
    CHECK(s1.mode(2).multiplicity == 2);

    const auto s2 = BoundaryManifold::sphere(Dimensions(3, 3));
    CHECK(s2.omega() == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
    CHECK(s2.mode(1).mu == doctest::Approx(2.0));  // k(k+1) at k = 1
    CHECK(s2.mode(1).multiplicity == 3);
    CHECK(s2.mode(2).multiplicity == 5);

    const auto s3 = BoundaryManifold::sphere(Dimensions(4, 4));
    CHECK(s3.mode(2).mu == doctest::Approx(8.0));  // k(k+2) at k = 2
    CHECK(s3.mode(2).multiplicity == 9);           // (k+1)^2
    CHECK(s3.mode(0).multiplicity == 1);
}

TEST_CASE("cross-section list from file") {
    const std::string path = "gamma_modes_test.txt";
    {
        std::ofstream out(path);
        out << "# test spectrum\n0 1\n1.5 2\n3.5 4\n";
    }
    const auto fromfile = BoundaryManifold::from_file(Dimensions(2, 3), path, 5.0);
    CHECK(fromfile.omega() == 5.0);
    CHECK(fromfile.mode(1).mu == doctest::Approx(1.5));
    CHECK(fromfile.mode(2).multiplicity == 4);
    CHECK(fromfile.mode_limit() == 3);
    CHECK_THROWS_AS(fromfile.mode(3), std::out_of_range);
    {
        std::ofstream out(path);
        out << "0 1\n2.0 1\n1.0 1\n";  // not ascending
    }
    CHECK_THROWS_AS(BoundaryManifold::from_file(Dimensions(2, 3), path, 1.0),
                    std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("curve data lies on the unit sphere") {
    for (const auto& gamma : {BoundaryManifold::circle(0.7),
                              BoundaryManifold::sphere(Dimensions(2, 2)),
                              BoundaryManifold::sphere(Dimensions(2, 3))}) {
        for (double th = 0.1; th < 6.3; th += 0.63) {
            const auto g = gamma.curve(th);
            const auto nu = gamma.normal(th);
            double gn = 0.0, nn = 0.0, dot = 0.0;
            for (int i = 0; i < 4; ++i) {
                gn += g[i] * g[i];
                nn += nu[i] * nu[i];
                dot += g[i] * nu[i];
            }
            CHECK(gn == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(nn == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(std::abs(dot) < 1e-15);
        }
    }
}

TEST_CASE("cone truncation ratio reduces to the ball profile") {
    const Cone equator{BoundaryManifold::circle(M_PI / 2.0)};
    CHECK(cones::cone_truncation_iso_ratio(equator, 1.0) ==
          doctest::Approx(radial::iso_constant(Dimensions(2, 2), 1.0)).epsilon(1e-10));
    const Cone narrow{BoundaryManifold::circle(0.4)};
    // omega cancels: any circle gives the same ratio
    CHECK(cones::cone_truncation_iso_ratio(narrow, 1.0) ==
          doctest::Approx(cones::cone_truncation_iso_ratio(equator, 1.0))
              .epsilon(1e-12));
    const Cone c3{BoundaryManifold::sphere(Dimensions(3, 3))};
    CHECK(cones::cone_truncation_iso_ratio(c3, 1.0) ==
          doctest::Approx(3.3957377999494269).epsilon(1e-10));
}

TEST_CASE("radial eigenvalues against the shooting oracle") {
    struct Case {
        int m;
        double mu, L, lo, hi;
    };
    // each bracket contains the branch bottom only; the next eigenvalue sits
    // near (m-1)^2/4 + (2 pi / L)^2 and stays outside
    const Case cases[] = {
        {2, 0.0, 10.0, 0.26, 0.40},
        {2, 0.0, 40.0, 0.2501, 0.263},
        {3, 0.0, 20.0, 1.01, 1.05},
        {8, 0.0, 10.0, 12.30, 12.50},
        {2, 1.0, 40.0, 0.2501, 0.263},
        {2, 4.0, 40.0, 0.2501, 0.263},
    };
    for (const auto& c : cases) {
        const double want =
            oracles::shooting_ground_eigenvalue(c.m, c.mu, c.L, c.lo, c.hi);
        RadialEigenproblem problem{Dimensions(c.m, c.m), c.mu, 0.0, c.L, 2048, 1e-6};
        const double got = cones::radial_eigs(problem, 1)[0];
        CHECK(got == doctest::Approx(want).epsilon(5e-7));
    }
}

TEST_CASE("radial eigenvalues: monotonicity and Cheeger floor") {
    const Dimensions dims(2, 2);
    double prev = 1e300;
    for (double L : {10.0, 20.0, 40.0}) {
        RadialEigenproblem problem{dims, 0.0, 0.0, L, 2048, 1e-6};
        const double lam = cones::radial_eigs(problem, 1)[0];
        CHECK(lam < prev);
        CHECK(lam > 0.25);
        CHECK(lam >= radial::cheeger_lower(dims, L) - 1e-8);
        prev = lam;
    }
    // centrifugal term raises the bottom
    RadialEigenproblem base{dims, 0.0, 0.0, 40.0, 2048, 1e-6};
    RadialEigenproblem shifted{dims, 1.0, 0.0, 40.0, 2048, 1e-6};
    CHECK(cones::radial_eigs(shifted, 1)[0] > cones::radial_eigs(base, 1)[0]);
    // ascending output
    const auto eigs = cones::radial_eigs(base, 4);
    for (int i = 1; i < 4; ++i) CHECK(eigs[i] > eigs[i - 1]);
}

TEST_CASE("ground state has no interior sign change") {
    for (double mu : {0.0, 1.0}) {
        RadialEigenproblem problem{Dimensions(2, 2), mu, 0.0, 20.0, 1024, 1e-6};
        const auto gs = cones::radial_ground_state(problem);
        CHECK(gs.lambda > 0.25);
        double peak = 0.0;
        for (double v : gs.u) peak = std::max(peak, std::abs(v));
        int changes = 0;
        double last = 0.0;
        for (double v : gs.u) {
            if (std::abs(v) < 1e-8 * peak) continue;
            if (last != 0.0 && (v > 0) != (last > 0)) ++changes;
            last = v;
        }
        CHECK(changes == 0);
    }
}

TEST_CASE("spectrum window of the equatorial cone") {
    const Cone cone{BoundaryManifold::circle(M_PI / 2.0)};
    const auto window = cones::cone_spectrum_window(cone, 40.0, 5, 1024);
    REQUIRE(!window.entries.empty());
    CHECK(window.truncation_radius == 40.0);
    CHECK(window.entries.front().value > 0.25);
    CHECK(window.entries.front().value < 0.27);
    CHECK(window.entries.front().mu_index == 0);
    int count = 0;
    double prev = 0.0;
    const double cheeger = radial::cheeger_lower(Dimensions(2, 2), 40.0);
    for (const auto& e : window.entries) {
        CHECK(e.value >= prev);
        CHECK(e.value > 0.25);  // McKean floor for cones
        CHECK(e.value >= cheeger - 1e-6);
        prev = e.value;
        count += e.multiplicity;
    }
    CHECK(count >= 5);

    // separation completeness: same entries from assembling branches directly
    for (const auto& e : window.entries) {
        RadialEigenproblem problem{Dimensions(2, 2), cone.gamma.mode(e.mu_index).mu,
                                   0.0, 40.0, 1024, 1e-6};
        const auto branch = cones::radial_eigs(problem, e.radial_index + 1);
        CHECK(branch[e.radial_index] == doctest::Approx(e.value).epsilon(1e-12));
    }
}

TEST_CASE("eigenvalue count below 1.25 grows with the truncation radius") {
    // spectral accumulation onto [1/4, inf): the window (0.25, 1.25] fills in
    const Dimensions dims(2, 2);
    auto count_below = [&](double L) {
        int total = 0;
        for (int j = 0;; ++j) {
            const double mu = static_cast<double>(j) * j;  // equatorial circle
            RadialEigenproblem problem{dims, mu, 0.0, L, 1024, 1e-6};
            const int branch = cones::radial_count_below(problem, 1.25);
            if (branch == 0) break;
            total += branch * (j == 0 ? 1 : 2);
        }
        return total;
    };
    const int n4 = count_below(4.0);
    const int n8 = count_below(8.0);
    CHECK(n8 > n4);
    CHECK(n4 > 0);
}

TEST_CASE("essential spectrum probe on cones") {
    const Dimensions dims(2, 2);
    const Cone cone{BoundaryManifold::sphere(dims)};
    const auto modes = testfn::build_quasimode_sequence(dims, 0.5, 10.0, 3);
    const auto ratios = cones::essential_spectrum_probe(cone, 0.5, modes);
    REQUIRE(ratios.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ratios[i] <= 4.0 * testfn::epsilon_r(dims, 0.5, modes[i].R()));
        if (i > 0) CHECK(ratios[i] < ratios[i - 1]);
    }
    // omega cancels: a rescaled cross-section gives identical ratios
    const Cone narrow{BoundaryManifold::circle(0.3)};
    const auto ratios2 = cones::essential_spectrum_probe(narrow, 0.5, modes);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(ratios2[i] == doctest::Approx(ratios[i]).epsilon(1e-14));

    // a higher point of the essential spectrum, m = 3
    const Dimensions d3(3, 3);
    const Cone cone3{BoundaryManifold::sphere(d3)};
    const auto modes3 = testfn::build_quasimode_sequence(d3, 11.0, 10.0, 3);
    const auto ratios3 = cones::essential_spectrum_probe(cone3, 11.0, modes3);
    for (std::size_t i = 1; i < 3; ++i) CHECK(ratios3[i] < ratios3[i - 1]);
}

TEST_CASE("input validation") {
    RadialEigenproblem bad{Dimensions(2, 2), 0.0, 5.0, 4.0, 1024, 1e-6};
    CHECK_THROWS_AS(cones::radial_eigs(bad, 1), std::domain_error);
    RadialEigenproblem ok{Dimensions(2, 2), 0.0, 0.0, 20.0, 1024, 1e-6};
    CHECK_THROWS_AS(cones::radial_eigs(ok, 0), std::invalid_argument);
    CHECK_THROWS_AS(cones::cone_truncation_iso_ratio(
                        Cone{BoundaryManifold::circle(1.0)}, 0.0),
                    std::domain_error);
}
