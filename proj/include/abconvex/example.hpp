#pragma once

#include <span>
#include <utility>

#include "abconvex/duality.hpp"

namespace abconvex::example {

enum class Which { f1, f2, f3 };

// The worked problem: f1(x) = x^4 - x^2, f2(x) = 1 - 2|x|, and f3 equal to
// f2 on [-1/2, 1/2] and 0 elsewhere.
ExtFunction make(Which which);
ExtFunction make_cos();
ExtFunction make_zero();
ExtFunction make_quartic();   // x^4, used as a convex companion in tests

// max over |x| <= 1/2 of a*x^2 + 2|x|, minus 1; defined for a <= 0.
// Piecewise: -1 - 1/a below a = -2, a/4 on [-2, 0]; continuous at -2.
double chi(double a);

// Closed-form conjugates:
//   f1*: (a+1)^2/4 for a >= -1, else 0
//   f2*: +inf for a >= 0, else -1 - 1/a
//   f3*: +inf for a > 0, a/4 on [-2, 0], -1 - 1/a below -2
ExtReal closed_conjugate(Which which, double a);

// Closed-form support-set membership in the (a, b) plane, with the strict
// boundaries honored exactly.
bool closed_support_contains(Which which, double a, double b);

struct SubdiffDescriptor {
  enum class Kind { Empty, Singleton, Interval, Ray } kind;
  double lo = 0.0;   // Singleton: the value; Interval: [lo, hi]; Ray: a <= hi
  double hi = 0.0;

  bool contains(double a, double tol = 0.0) const;
  // Hausdorff-style agreement with a sampled set, at one-lattice-step scale.
  bool matches(std::span<const double> sample, const Grid1D& a_grid) const;
};

// Closed-form subdifferential map.
SubdiffDescriptor closed_subdiff(Which which, double x);

struct LClassification {
  enum class Kind { MemberOfL, IndicatorOfZero, NotLConvex } kind;
  double a = 0.0;   // with MemberOfL
};

// Classifies a function against the abstract-linear structure: either it is
// some a*x^2, or the indicator of {0}, or neither.
LClassification classify_L_convex(const ExtFunction& f, const Grid1D& x_grid, double tol);

enum class HRegionVerdict { HConvexCertified, FailsFiniteSup, FailsDownwardClosed, FailsConvex };

struct HRegionFlags {
  bool downward_closed = true;   // the tested region is the downward closure
  bool convex_hull = true;       // the tested region is the convex hull
};

// Certifies the sufficient conditions for a sampled parameter region to be a
// set of minorants closed under the sup operation: convexity (midpoints of
// the generators stay inside), downward closedness (a construction flag),
// and a finite pointwise sup. Generators at or above b_cap stand for an
// unbounded column, which fails the finite-sup condition.
HRegionVerdict check_H_convex_region(std::span<const std::pair<double, double>> pts, double b_cap,
                                     HRegionFlags flags, const Grid1D& x_grid, double tol);

// Everything the verification pipeline needs about the worked example.
struct Catalog {
  std::vector<ExtFunction> fs;              // f1, f2, f3
  std::vector<ConjugateFn> closed_conjs;    // closed-form conjugates
  ConjugateFn sum_conj_oracle;              // oracle conjugate of f1+f2+f3
  static Catalog make(const Grid1D& x_grid);
};

}  // namespace abconvex::example
