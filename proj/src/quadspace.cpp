#include "abconvex/quadspace.hpp"

#include "abconvex/errors.hpp"

namespace abconvex {

DecompositionStream::DecompositionStream(QuadLinear target, int arity, const Grid1D& a_grid)
    : target_(target), m_(arity), grid_(a_grid) {
  if (m_ != 2 && m_ != 3) throw ConfigError("DecompositionStream: arity must be 2 or 3");
}

bool DecompositionStream::next(std::array<QuadLinear, 3>& out) {
  const auto n = grid_.size();
  if (m_ == 2) {
    if (i_ >= n) return false;
    out[0] = {grid_[i_]};
    out[1] = {target_.a - grid_[i_]};
    ++i_;
    return true;
  }
  if (i_ >= n) return false;
  out[0] = {grid_[i_]};
  out[1] = {grid_[j_]};
  out[2] = {target_.a - grid_[i_] - grid_[j_]};
  if (++j_ >= n) {
    j_ = 0;
    ++i_;
  }
  return true;
}

void for_each_decomposition(QuadLinear target, int arity, const Grid1D& a_grid,
                            const std::function<void(std::span<const QuadLinear>)>& fn) {
  DecompositionStream stream(target, arity, a_grid);
  std::array<QuadLinear, 3> buf;
  while (stream.next(buf)) fn(std::span<const QuadLinear>(buf.data(), static_cast<std::size_t>(arity)));
}

Grid1D default_x_grid() { return Grid1D(-3.0, 3.0, 1e-3); }
Grid1D default_a_grid() { return Grid1D(-10.0, 10.0, 0.01); }

}  // namespace abconvex
