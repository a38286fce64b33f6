#pragma once

#include <optional>
#include <span>
#include <vector>

#include "abconvex/subdiff.hpp"

namespace abconvex {

struct PrimalResult {
  double value = 0.0;
  double argmin = 0.0;                 // smallest minimizing grid point
  double conjugate_route = 0.0;        // -(sum f)*(0), the cross-check
};

// Grid minimum of the summed functions, with the escape test on the negated
// sum. Throws EmptyIntersection when no grid point is in every domain and
// UnboundedBelow when the escape test fires.
PrimalResult primal_value(std::span<const ExtFunction> fs, const ConjugateFn& sum_conj,
                          const Grid1D& x_grid);

struct DualResult {
  bool all_pruned = false;             // every decomposition hit a +inf summand
  double value = 0.0;                  // meaningful when !all_pruned
  std::vector<QuadLinear> witness;
};

// v(D) = -(f_1* [] ... [] f_m*)(0) over the coefficient lattice.
DualResult dual_value(std::span<const ConjugateFn> conjs, const Grid1D& a_grid);

// One rung of the eps ladder: a decomposition of the zero coefficient into
// members of the component eps-subdifferentials at x_witness.
struct LadderCertificate {
  double eps = 0.0;
  bool certified = false;
  double x_witness = 0.0;
  std::vector<QuadLinear> decomposition;
  double slack = 0.0;                  // worst component slack of the certificate
};

struct GapReport {
  bool primal_unbounded = false;
  bool dual_all_pruned = false;
  double v_primal = 0.0;
  double primal_argmin = 0.0;
  double v_dual = 0.0;
  std::vector<QuadLinear> dual_witness;
  double gap = 0.0;
  std::vector<LadderCertificate> eps_ladder_certificates;
  int certified_depth = 0;             // leading rungs with a certificate
  double condition_ii_lhs = 0.0;       // (sum f)*(0)
  double condition_ii_rhs = 0.0;       // infimal convolution at 0
  std::optional<double> theorem36_point;
  bool point_is_solution = false;      // with theorem36_point: objective matches v_primal
};

// Zero-duality-gap certification: for each eps in the ladder, searches grid
// points and decompositions of the zero coefficient into members of the
// eps/m component subdifferentials, and compares the two conjugate routes.
GapReport certify_gap_T35(std::span<const ExtFunction> fs, std::span<const ConjugateFn> conjs,
                          const ConjugateFn& sum_conj, std::span<const double> eps_ladder,
                          const Grid1D& x_grid, const Grid1D& a_grid, double tol);

// Pointwise variant: all certificate memberships are taken at the given x;
// full certification additionally requires the objective at x to match the
// primal value.
GapReport certify_gap_T36(std::span<const ExtFunction> fs, std::span<const ConjugateFn> conjs,
                          const ConjugateFn& sum_conj, double x, std::span<const double> eps_ladder,
                          const Grid1D& x_grid, const Grid1D& a_grid, double tol);

}  // namespace abconvex
