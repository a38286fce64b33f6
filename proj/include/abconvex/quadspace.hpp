#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>

#include "abconvex/grid.hpp"

namespace abconvex {

// The abstract-linear function x -> a*x^2. These form a vector space under
// coefficient arithmetic; the zero element is a = 0.
struct QuadLinear {
  double a = 0.0;
  double operator()(double x) const { return a * x * x; }
  friend QuadLinear operator+(QuadLinear l, QuadLinear r) { return {l.a + r.a}; }
  friend QuadLinear operator-(QuadLinear l) { return {-l.a}; }
  friend QuadLinear operator*(double s, QuadLinear l) { return {s * l.a}; }
  friend bool operator==(QuadLinear l, QuadLinear r) { return l.a == r.a; }
};

inline double lin_eval(QuadLinear l, double x) { return l(x); }
inline QuadLinear lin_add(QuadLinear l, QuadLinear r) { return l + r; }

// The abstract-affine function x -> a*x^2 + b.
struct QuadAffine {
  double a = 0.0;
  double b = 0.0;
  double operator()(double x) const { return a * x * x + b; }
  friend bool operator==(QuadAffine l, QuadAffine r) { return l.a == r.a && l.b == r.b; }
};

// Discretization of the coefficient space (and optionally the shift axis).
struct ParamGrid {
  Grid1D a_grid;
  std::optional<Grid1D> b_grid;
};

// Streams every tuple (l_1, ..., l_m) with the first m-1 coefficients on the
// lattice and the last one the exact closure l.a - sum, so each tuple sums to
// l to machine precision. Deterministic and restartable; m in {2, 3}.
class DecompositionStream {
 public:
  DecompositionStream(QuadLinear target, int arity, const Grid1D& a_grid);

  // Fills out[0..arity-1]; returns false when exhausted.
  bool next(std::array<QuadLinear, 3>& out);
  void reset() { i_ = j_ = 0; }
  int arity() const { return m_; }

 private:
  QuadLinear target_;
  int m_;
  const Grid1D& grid_;
  std::size_t i_ = 0, j_ = 0;
};

// Convenience visitor over all decompositions.
void for_each_decomposition(QuadLinear target, int arity, const Grid1D& a_grid,
                            const std::function<void(std::span<const QuadLinear>)>& fn);

Grid1D default_x_grid();
Grid1D default_a_grid();

}  // namespace abconvex
