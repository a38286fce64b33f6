#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "abconvex/ext_function.hpp"
#include "abconvex/quadspace.hpp"

namespace abconvex {

// Conjugate of f over the coefficient axis: a -> sup_x { a*x^2 - f(x) }.
// Either a registered closed form or an oracle backed by grid_sup with the
// escape test. Oracle values are cached per coefficient; the cache is safe
// for concurrent idempotent insertion.
class ConjugateFn {
 public:
  static ConjugateFn closed_form(std::string source, std::function<ExtReal(double)> eval);
  static ConjugateFn oracle(const ExtFunction& f, const Grid1D& x_grid, SupOptions opts = {.escape = true});

  ExtReal operator()(double a) const;
  const std::string& source() const;

  // Precompute values for every lattice coefficient (parallelized sweep).
  void tabulate(const Grid1D& a_grid) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  explicit ConjugateFn(std::shared_ptr<Impl> impl);
};

// sup over the x-grid of a*x^2 - f(x), with the escape test for closed-form
// functions; sampled functions are swept on their own lattice only.
// Throws EmptyDomain when f is +inf on the whole grid.
ExtReal conjugate(const ExtFunction& f, double a, const Grid1D& x_grid,
                  SupOptions opts = {.escape = true});

// sup over the coefficient lattice (with window doubling) of a*x^2 - f*(a),
// skipping coefficients where the conjugate is +inf. Never exceeds f(x).
ExtReal biconjugate(const ConjugateFn& conj, double x, const Grid1D& a_grid,
                    SupOptions opts = {.escape = true});

struct InfConvResult {
  ExtReal value;                      // +inf iff every decomposition was pruned
  std::vector<QuadLinear> witness;    // minimizing tuple, smallest-lexicographic
};

// Infimal convolution of conjugates at l: min over decompositions of l into
// m coefficients (first m-1 on the lattice, last the exact closure) of the
// summed conjugates. Decompositions with a +inf summand are pruned.
InfConvResult inf_convolution(std::span<const ConjugateFn> conjs, QuadLinear l,
                              const Grid1D& a_grid);

// True iff a*x^2 + b <= f(x) + tol at every grid point with f(x) finite.
// For closed-form f the window-doubling sweep is applied so violations at
// large |x| are caught.
bool support_contains(const ExtFunction& f, QuadAffine h, const Grid1D& x_grid, double tol,
                      SupOptions opts = {.escape = true});

// (l, r) in epi f*  <=>  the affine function a*x^2 - r is a minorant of f.
bool epi_conjugate_contains(const ExtFunction& f, QuadLinear l, double r, const Grid1D& x_grid,
                            double tol);

// A downward-closed region of the (a, b) plane described by its upper
// boundary b_max(a) = -f*(a), sampled on a coefficient lattice.
class SupportRegion {
 public:
  SupportRegion(const ConjugateFn& conj, const Grid1D& a_grid);

  // Membership of (a, b) against the sampled boundary, with tolerance.
  bool contains(double a, double b, double tol) const;

  const std::vector<double>& coefficients() const { return as_; }
  // Boundary height at sample i; nullopt where the conjugate is +inf
  // (no minorant with that leading coefficient exists).
  std::optional<double> boundary(std::size_t i) const;

 private:
  std::vector<double> as_;
  std::vector<ExtReal> conj_vals_;
};

struct ClosureCheckResult {
  bool in_supp_sum;               // probe is a minorant of f + g
  bool in_closure_of_minkowski;   // probe is near the sampled Minkowski sum of the regions
};

// Compares membership of a probe in supp(f+g) against the closure of
// supp f + supp g, both sampled on the boundary b_max(a) = -f*(a).
ClosureCheckResult support_sum_closure_check(const ExtFunction& f, const ExtFunction& g,
                                             const ConjugateFn& conj_f, const ConjugateFn& conj_g,
                                             QuadAffine probe, const Grid1D& x_grid,
                                             const Grid1D& a_grid, double closure_tol,
                                             double support_tol = 1e-9);

}  // namespace abconvex
