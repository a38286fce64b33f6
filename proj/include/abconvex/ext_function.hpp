#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "abconvex/grid.hpp"

namespace abconvex {

// An extended-real-valued function on R: either a registered closed form or
// a table of samples on a Grid1D. Evaluation is deterministic and total on
// its domain of definition; sampled lookup snaps to the nearest lattice
// point within step/2 (no interpolation).
class ExtFunction {
 public:
  static ExtFunction closed_form(std::string name, std::function<ExtReal(double)> eval);
  static ExtFunction sampled(std::string name, Grid1D grid, std::vector<ExtReal> values);

  ExtReal operator()(double x) const;

  const std::string& name() const { return impl_->name; }
  bool is_sampled() const { return impl_->grid.has_value(); }
  const Grid1D* sample_grid() const { return impl_->grid ? &*impl_->grid : nullptr; }

 private:
  struct Impl {
    std::string name;
    std::function<ExtReal(double)> eval;    // closed form
    std::optional<Grid1D> grid;             // sampled
    std::vector<ExtReal> values;
  };
  std::shared_ptr<const Impl> impl_;
  explicit ExtFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// Pointwise sum, +inf absorbing. Sampled summands restrict evaluation to
// their own lattice.
ExtFunction sum(std::span<const ExtFunction> fs, std::string name = "sum");

}  // namespace abconvex
