#include "abconvex/transforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "abconvex/errors.hpp"
#include "abconvex/parallel.hpp"

namespace abconvex {

struct ConjugateFn::Impl {
  std::string source;
  std::function<ExtReal(double)> closed;          // closed-form route
  std::optional<ExtFunction> f;                   // oracle route
  std::optional<Grid1D> x_grid;
  SupOptions opts;
  mutable std::unordered_map<std::uint64_t, ExtReal> cache;
  mutable std::mutex cache_mu;
};

ConjugateFn::ConjugateFn(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

ConjugateFn ConjugateFn::closed_form(std::string source, std::function<ExtReal(double)> eval) {
  auto impl = std::make_shared<Impl>();
  impl->source = std::move(source);
  impl->closed = std::move(eval);
  return ConjugateFn(std::move(impl));
}

ConjugateFn ConjugateFn::oracle(const ExtFunction& f, const Grid1D& x_grid, SupOptions opts) {
  auto impl = std::make_shared<Impl>();
  impl->source = f.name();
  impl->f = f;
  impl->x_grid = x_grid;
  impl->opts = opts;
  return ConjugateFn(std::move(impl));
}

const std::string& ConjugateFn::source() const { return impl_->source; }

ExtReal ConjugateFn::operator()(double a) const {
  if (impl_->closed) return impl_->closed(a);
  const auto key = std::bit_cast<std::uint64_t>(a);
  {
    std::lock_guard lock(impl_->cache_mu);
    auto it = impl_->cache.find(key);
    if (it != impl_->cache.end()) return it->second;
  }
  ExtReal v = conjugate(*impl_->f, a, *impl_->x_grid, impl_->opts);
  {
    std::lock_guard lock(impl_->cache_mu);
    impl_->cache.emplace(key, v);   // idempotent: concurrent writers insert the same value
  }
  return v;
}

void ConjugateFn::tabulate(const Grid1D& a_grid) const {
  if (impl_->closed) return;
  const auto& pts = a_grid.points();
  std::vector<ExtReal> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    vals[i] = conjugate(*impl_->f, pts[i], *impl_->x_grid, impl_->opts);
  });
  std::lock_guard lock(impl_->cache_mu);
  for (std::size_t i = 0; i < pts.size(); ++i)
    impl_->cache.emplace(std::bit_cast<std::uint64_t>(pts[i]), vals[i]);
}

ExtReal conjugate(const ExtFunction& f, double a, const Grid1D& x_grid, SupOptions opts) {
  const Grid1D& grid = f.is_sampled() ? *f.sample_grid() : x_grid;
  if (f.is_sampled()) opts.escape = false;   // cannot extrapolate samples
  auto integrand = [&](double x) -> std::optional<double> {
    ExtReal v = f(x);
    if (v.is_inf()) return std::nullopt;
    return a * x * x - v.finite();
  };
  try {
    return grid_sup(integrand, grid, opts).value;
  } catch (const AllInfinite&) {
    throw EmptyDomain("conjugate: function is +inf on the whole grid");
  }
}

ExtReal biconjugate(const ConjugateFn& conj, double x, const Grid1D& a_grid, SupOptions opts) {
  auto integrand = [&](double a) -> std::optional<double> {
    ExtReal v = conj(a);
    if (v.is_inf()) return std::nullopt;
    return a * x * x - v.finite();
  };
  try {
    return grid_sup(integrand, a_grid, opts).value;
  } catch (const AllInfinite&) {
    throw EmptyDomain("biconjugate: conjugate is +inf on the whole lattice");
  }
}

InfConvResult inf_convolution(std::span<const ConjugateFn> conjs, QuadLinear l,
                              const Grid1D& a_grid) {
  const int m = static_cast<int>(conjs.size());
  if (m < 2 || m > 3) throw ConfigError("inf_convolution: 2 or 3 conjugates supported");
  const auto& as = a_grid.points();
  const std::size_t n = as.size();

  // Tabulate summands so the sweep is lookups only.
  std::vector<std::vector<ExtReal>> tab(static_cast<std::size_t>(m) - 1);
  for (int i = 0; i + 1 < m; ++i) {
    tab[static_cast<std::size_t>(i)].resize(n);
    auto& t = tab[static_cast<std::size_t>(i)];
    const auto& c = conjs[static_cast<std::size_t>(i)];
    parallel_for(n, [&](std::size_t j) { t[j] = c(as[j]); });
  }

  InfConvResult res{ExtReal::inf(), {}};
  const auto& last = conjs[static_cast<std::size_t>(m) - 1];
  auto consider = [&](double total, std::span<const double> coeffs) {
    if (res.value.is_inf() || total < res.value.finite()) {
      res.value = ExtReal(total);
      res.witness.assign(coeffs.size(), QuadLinear{});
      for (std::size_t i = 0; i < coeffs.size(); ++i) res.witness[i] = {coeffs[i]};
    }
  };

  if (m == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (tab[0][i].is_inf()) continue;
      const double a2 = l.a - as[i];
      ExtReal v2 = last(a2);
      if (v2.is_inf()) continue;
      const double coeffs[2] = {as[i], a2};
      consider(tab[0][i].finite() + v2.finite(), coeffs);
    }
    return res;
  }

  // m == 3: cache the closure coordinate over its reachable lattice.
  std::unordered_map<std::uint64_t, ExtReal> last_cache;
  for (std::size_t i = 0; i < n; ++i) {
    if (tab[0][i].is_inf()) continue;
    const double v1 = tab[0][i].finite();
    for (std::size_t j = 0; j < n; ++j) {
      if (tab[1][j].is_inf()) continue;
      const double a3 = l.a - as[i] - as[j];
      auto key = std::bit_cast<std::uint64_t>(a3);
      auto it = last_cache.find(key);
      if (it == last_cache.end()) it = last_cache.emplace(key, last(a3)).first;
      if (it->second.is_inf()) continue;
      const double coeffs[3] = {as[i], as[j], a3};
      consider(v1 + tab[1][j].finite() + it->second.finite(), coeffs);
    }
  }
  return res;
}

bool support_contains(const ExtFunction& f, QuadAffine h, const Grid1D& x_grid, double tol,
                      SupOptions opts) {
  const Grid1D& base = f.is_sampled() ? *f.sample_grid() : x_grid;
  const int doublings = (f.is_sampled() || !opts.escape) ? 0 : opts.max_doublings;
  for (int k = 0; k <= doublings; ++k) {
    const Grid1D window = (k == 0) ? base : base.scaled(std::ldexp(1.0, k));
    for (double x : window.points()) {
      ExtReal v = f(x);
      if (v.is_inf()) continue;   // comparison only needed on dom f
      if (h(x) > v.finite() + tol) return false;
    }
  }
  return true;
}

bool epi_conjugate_contains(const ExtFunction& f, QuadLinear l, double r, const Grid1D& x_grid,
                            double tol) {
  return support_contains(f, QuadAffine{l.a, -r}, x_grid, tol);
}

SupportRegion::SupportRegion(const ConjugateFn& conj, const Grid1D& a_grid)
    : as_(a_grid.points()), conj_vals_(as_.size()) {
  parallel_for(as_.size(), [&](std::size_t i) { conj_vals_[i] = conj(as_[i]); });
}

std::optional<double> SupportRegion::boundary(std::size_t i) const {
  if (conj_vals_[i].is_inf()) return std::nullopt;
  return -conj_vals_[i].finite();
}

bool SupportRegion::contains(double a, double b, double tol) const {
  // Distance to the downward-closed region spanned by the boundary samples.
  double best = HUGE_VAL;
  for (std::size_t i = 0; i < as_.size(); ++i) {
    auto bmax = boundary(i);
    if (!bmax) continue;
    const double dx = a - as_[i];
    const double dy = std::max(0.0, b - *bmax);
    best = std::min(best, std::hypot(dx, dy));
    if (best <= tol) return true;
  }
  return best <= tol;
}

ClosureCheckResult support_sum_closure_check(const ExtFunction& f, const ExtFunction& g,
                                             const ConjugateFn& conj_f, const ConjugateFn& conj_g,
                                             QuadAffine probe, const Grid1D& x_grid,
                                             const Grid1D& a_grid, double closure_tol,
                                             double support_tol) {
  const std::array pair{f, g};
  const ExtFunction fg = sum(pair, f.name() + "+" + g.name());
  ClosureCheckResult res{};
  res.in_supp_sum = support_contains(fg, probe, x_grid, support_tol);

  SupportRegion rf(conj_f, a_grid), rg(conj_g, a_grid);
  const auto& as = a_grid.points();
  double best = HUGE_VAL;
  for (std::size_t i = 0; i < as.size() && best > closure_tol; ++i) {
    auto bf = rf.boundary(i);
    if (!bf) continue;
    for (std::size_t j = 0; j < as.size(); ++j) {
      auto bg = rg.boundary(j);
      if (!bg) continue;
      const double dx = probe.a - (as[i] + as[j]);
      if (std::abs(dx) > closure_tol) continue;
      const double dy = std::max(0.0, probe.b - (*bf + *bg));
      best = std::min(best, std::hypot(dx, dy));
      if (best <= closure_tol) break;
    }
  }
  res.in_closure_of_minkowski = best <= closure_tol;
  return res;
}

}  // namespace abconvex
