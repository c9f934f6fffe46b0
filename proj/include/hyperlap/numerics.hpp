#pragma once

#include <functional>
#include <vector>

namespace hyperlap::numerics {

using RealFn = std::function<double(double)>;

// Composite Gauss-Legendre quadrature with adaptive panel bisection.
struct QuadratureRule {
    double a = 0.0;
    double b = 1.0;
    int order = 12;               // Gauss-Legendre points per panel, >= 2
    int max_subdivisions = 2000;  // total bisections before giving up
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

// Integral of f over [rule.a, rule.b]. Panels are bisected until the local
// error estimate passes max(abs_tol, rel_tol*|I|) distributed by length.
// Throws NonConvergence when the subdivision budget runs out.
double integrate(const RealFn& f, const QuadratureRule& rule);

double integrate(const RealFn& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-10);

// Symmetric tridiagonal matrix; only one off-diagonal is stored.
struct TridiagonalSystem {
    std::vector<double> diagonal;       // length N
    std::vector<double> off_diagonal;   // length N-1
    int size() const { return static_cast<int>(diagonal.size()); }
};

// Number of eigenvalues strictly below sigma (Sturm sequence sign count).
int sturm_count(const TridiagonalSystem& sys, double sigma);

// The k smallest eigenvalues in ascending order, each located by bisection
// on the Sturm count to an absolute tolerance near 1e-12 (or until the
// bracket collapses in double precision). k must satisfy 1 <= k <= N.
std::vector<double> eigen_smallest_k(const TridiagonalSystem& sys, int k);

// Solve (T - sigma) x = b by LDL^T; valid when sigma is below the spectrum.
std::vector<double> shifted_solve(const TridiagonalSystem& sys, double sigma,
                                  const std::vector<double>& b);

struct DerivativeStencil {
    double base_step = 1e-4;
    int richardson_levels = 3;  // >= 2
};

// Central-difference estimate of f'(x) (order 1) or f''(x) (order 2),
// Richardson-extrapolated over the configured number of halvings.
double fd_derivative(const RealFn& f, double x, int order,
                     const DerivativeStencil& stencil = {});

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hyperlap::numerics
