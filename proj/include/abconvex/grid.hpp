#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "abconvex/ext_real.hpp"

namespace abconvex {

// Uniform 1-D lattice on [lo, hi]. The point 0 is always present: when the
// lattice crosses zero it is snapped exactly, otherwise it is inserted as an
// extra point. When lo is a near-multiple of step the points are generated
// as k*step so that values like -1, 0, 1 come out bit-exact.
class Grid1D {
 public:
  Grid1D(double lo, double hi, double step);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double step() const { return step_; }
  const std::vector<double>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  double operator[](std::size_t i) const { return pts_[i]; }

  // Index of the lattice point nearest to x; throws OutOfDomainGrid when x is
  // farther than step/2 from every point.
  std::size_t nearest(double x) const;

  bool contains(double x) const;

  // Window scaled about the origin: [factor*lo, factor*hi] with step scaled
  // by the same factor, so the point count stays constant.
  Grid1D scaled(double factor) const { return Grid1D(lo_ * factor, hi_ * factor, step_ * factor); }

 private:
  double lo_, hi_, step_;
  std::vector<double> pts_;
};

struct SupOptions {
  bool escape = false;       // detect sup = +inf by window doubling
  int max_doublings = 7;     // windows [lo,hi], 2[lo,hi], ..., 2^7 [lo,hi]
  double escape_tol = 1.0;   // still climbing by this much at the last doubling => +inf
};

struct SupResult {
  ExtReal value;
  double argmax = 0.0;   // smallest maximizing point
  bool unbounded = false;
};

// Finite approximation of sup f over the grid. The evaluator returns nullopt
// at points it excludes (where the underlying expression is -infinity).
// Throws AllInfinite when every point is excluded.
//
// With escape enabled, the window is doubled (and the lattice coarsened to
// keep the point count) max_doublings times; the reported value is the best
// over all windows, and unbounded is set when the last doubling still raised
// the sup by at least escape_tol.
SupResult grid_sup(const std::function<std::optional<double>(double)>& f, const Grid1D& grid,
                   const SupOptions& opts = {});

}  // namespace abconvex
