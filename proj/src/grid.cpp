#include "abconvex/grid.hpp"

#include <algorithm>
#include <cmath>

#include "abconvex/errors.hpp"

namespace abconvex {

Grid1D::Grid1D(double lo, double hi, double step) : lo_(lo), hi_(hi), step_(step) {
  if (!(step > 0)) throw ConfigError("Grid1D: step must be positive");
  if (!(lo < hi)) throw ConfigError("Grid1D: lo must be less than hi");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n < 2) throw ConfigError("Grid1D: fewer than two points");
  pts_.reserve(n + 1);

  const double k0 = std::round(lo / step);
  const bool aligned = std::abs(k0 * step - lo) < 1e-9 * step;
  for (std::size_t i = 0; i < n; ++i) {
    double x = aligned ? (k0 + static_cast<double>(i)) * step : lo + static_cast<double>(i) * step;
    pts_.push_back(x);
  }
  // 0 is a distinguished point; make sure it is present exactly.
  bool has_zero = false;
  for (double& x : pts_) {
    if (std::abs(x) < 1e-9 * step) {
      x = 0.0;
      has_zero = true;
    }
  }
  if (!has_zero && lo < 0.0 && hi > 0.0) {
    pts_.push_back(0.0);
    std::sort(pts_.begin(), pts_.end());
  }
}

std::size_t Grid1D::nearest(double x) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), x);
  std::size_t best;
  if (it == pts_.begin()) {
    best = 0;
  } else if (it == pts_.end()) {
    best = pts_.size() - 1;
  } else {
    std::size_t hi_idx = static_cast<std::size_t>(it - pts_.begin());
    best = (std::abs(pts_[hi_idx] - x) < std::abs(pts_[hi_idx - 1] - x)) ? hi_idx : hi_idx - 1;
  }
  if (std::abs(pts_[best] - x) > step_ / 2 + 1e-12 * step_)
    throw OutOfDomainGrid("Grid1D: point farther than step/2 from the lattice");
  return best;
}

bool Grid1D::contains(double x) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), x - 1e-9 * step_);
  return it != pts_.end() && std::abs(*it - x) < 1e-9 * std::max(1.0, std::abs(x));
}

namespace {

// Sup over one window; nullopt if every point is excluded.
std::optional<SupResult> window_sup(const std::function<std::optional<double>(double)>& f,
                                    const Grid1D& g) {
  SupResult r;
  bool any = false;
  for (double x : g.points()) {
    auto v = f(x);
    if (!v) continue;
    if (!any || *v > r.value.as_double()) {
      r.value = ExtReal(*v);
      r.argmax = x;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return r;
}

}  // namespace

SupResult grid_sup(const std::function<std::optional<double>(double)>& f, const Grid1D& grid,
                   const SupOptions& opts) {
  auto base = window_sup(f, grid);
  if (!opts.escape) {
    if (!base) throw AllInfinite("grid_sup: no finite value on the grid");
    return *base;
  }

  SupResult best;
  bool any = base.has_value();
  if (any) best = *base;
  double prev = any ? best.value.finite() : 0.0;
  bool prev_valid = any;
  double last_increase = 0.0;
  for (int k = 1; k <= opts.max_doublings; ++k) {
    auto w = window_sup(f, grid.scaled(std::ldexp(1.0, k)));
    if (!w) {
      last_increase = 0.0;
      continue;
    }
    if (!any || w->value.as_double() > best.value.as_double()) {
      // Keep the smallest argmax among equal values; windows only grow, so a
      // strictly larger sup legitimately replaces the argmax.
      best = *w;
    }
    last_increase = prev_valid ? w->value.finite() - prev : 0.0;
    prev = std::max(prev_valid ? prev : w->value.finite(), w->value.finite());
    prev_valid = true;
    any = true;
  }
  if (!any) throw AllInfinite("grid_sup: no finite value on any window");
  if (last_increase >= opts.escape_tol) {
    best.unbounded = true;
    best.value = ExtReal::inf();
  }
  return best;
}

}  // namespace abconvex
