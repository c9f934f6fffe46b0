#pragma once

#include "hyperlap/hyperbolic.hpp"

namespace hyperlap::radial {

// sinh^{m-1}(t); goes through log space so large arguments stay in range.
double weight(const Dimensions& dims, double t);
double log_weight(const Dimensions& dims, double t);

// Isoperimetric constant of the hyperbolic m-ball of radius r,
//   h(B_r^m) = sinh^{m-1}(r) / int_0^r sinh^{m-1}(t) dt,
// evaluated as the reciprocal of a shift-normalized integral so the
// quotient never overflows. Decreases to m-1 as r grows.
double iso_constant(const Dimensions& dims, double r);

// (m-1) coth(r); a lower bound for iso_constant, strictly above m-1.
double iso_lower_bound(const Dimensions& dims, double r);

// (m-1)^2/4, the bottom of the spectrum of H^m.
double mckean_bound(const Dimensions& dims);

// Cheeger bound h(B_r^m)^2 / 4 for the truncated spectrum bottom.
double cheeger_lower(const Dimensions& dims, double r);

// The comparison profile f with f'(r) = 1/h_r, f(0) = f'(0) = 0, which
// solves f'' + (m-1) coth(r) f' = 1. f'' is evaluated from the rearranged
// equation; an independent finite-difference route validates it in tests.
class ComparisonProfile {
  public:
    explicit ComparisonProfile(Dimensions dims);
    double f(double r) const;
    double f_prime(double r) const;
    double f_second(double r) const;
    const Dimensions& dims() const { return dims_; }

  private:
    Dimensions dims_;
};

ComparisonProfile comparison_profile(const Dimensions& dims);

}  // namespace hyperlap::radial
