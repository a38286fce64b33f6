#pragma once

#include <span>
#include <vector>

#include "abconvex/transforms.hpp"

namespace abconvex {

struct SubdiffQuery {
  const ExtFunction* f;
  double x;
  double eps;   // >= 0
};

// Grid sample of an eps-subdifferential: the member coefficients, sorted.
// emptiness_certified is set only when the slack minimum over the lattice is
// strictly positive with margin, so (the slack being convex in the
// coefficient) refinement cannot create members between samples.
struct SubdiffSet {
  std::vector<double> members;
  bool emptiness_certified = false;
  bool empty() const { return members.empty(); }
};

// Membership test via the conjugate: f*(a) + f(x) <= a*x^2 + eps + tol.
// False whenever f(x) = +inf.
bool subdiff_contains(const ExtFunction& f, double x, double eps, QuadLinear l,
                      const ConjugateFn& conj, double tol);

// Slack of the membership inequality; +inf where the conjugate is +inf.
ExtReal subdiff_slack(const ExtFunction& f, double x, double eps, double a,
                      const ConjugateFn& conj);

SubdiffSet subdiff_enumerate(const ExtFunction& f, double x, double eps, const Grid1D& a_grid,
                             const ConjugateFn& conj, double tol);

// Grid x values where the eps-subdifferential is nonempty.
std::vector<double> domain_map(const ExtFunction& f, double eps, const Grid1D& x_grid,
                               const Grid1D& a_grid, const ConjugateFn& conj, double tol);

// All sums of one member per set, deduplicated at the given coefficient
// resolution. Empty when any factor is empty.
std::vector<double> minkowski_sum_subdiffs(std::span<const SubdiffSet> sets, double a_resolution);

struct InclusionReport {
  bool holds = true;
  bool lhs_empty = false;
  std::vector<double> violations;   // LHS members missing from the dilated RHS
  std::vector<double> lhs;
  std::vector<double> rhs;
};

// Checks the sum-rule inclusion: every member of the eps-subdifferential of
// the summed function must lie within one lattice step of the Minkowski sum
// of the K*eps component subdifferentials.
InclusionReport check_inclusion_T33(std::span<const ExtFunction> fs,
                                    std::span<const ConjugateFn> conjs,
                                    const ConjugateFn& sum_conj, double x, double eps, double K,
                                    const Grid1D& a_grid, double tol);

struct SumRuleReport {
  struct PerEta {
    double eta;
    bool lhs_in_rhs = true;
    bool rhs_in_lhs = true;
    std::vector<double> lhs_violations;
    std::vector<double> rhs_violations;
  };
  std::vector<PerEta> entries;
  bool holds() const {
    for (const auto& e : entries)
      if (!e.lhs_in_rhs || !e.rhs_in_lhs) return false;
    return true;
  }
};

// Per eta, sandwiches the union over simplex-sampled (eps_1, ..., eps_m)
// with sum = eps + eta of the Minkowski sums of component subdifferentials:
// it must contain the eps-subdifferential of the sum and be contained in the
// (eps + eta)-subdifferential. Set comparisons are dilated by one lattice
// step.
// Throws EmptyIntersection when some f_i(x) = +inf.
SumRuleReport check_sum_rule_F2(std::span<const ExtFunction> fs,
                                std::span<const ConjugateFn> conjs, const ConjugateFn& sum_conj,
                                double x, double eps, std::span<const double> eta_ladder,
                                const Grid1D& a_grid, double tol, int simplex_subdivisions = 10);

}  // namespace abconvex
