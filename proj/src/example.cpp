#include "abconvex/example.hpp"

#include <algorithm>
#include <cmath>

#include "abconvex/errors.hpp"

namespace abconvex::example {

ExtFunction make(Which which) {
  switch (which) {
    case Which::f1:
      return ExtFunction::closed_form("f1", [](double x) -> ExtReal {
        const double x2 = x * x;
        return x2 * x2 - x2;
      });
    case Which::f2:
      return ExtFunction::closed_form("f2", [](double x) -> ExtReal { return 1.0 - 2.0 * std::abs(x); });
    case Which::f3:
      return ExtFunction::closed_form("f3", [](double x) -> ExtReal {
        const double ax = std::abs(x);
        return ax <= 0.5 ? 1.0 - 2.0 * ax : 0.0;
      });
  }
  throw ConfigError("example::make: bad selector");
}

ExtFunction make_cos() {
  return ExtFunction::closed_form("cos", [](double x) -> ExtReal { return std::cos(x); });
}

ExtFunction make_zero() {
  return ExtFunction::closed_form("zero", [](double) -> ExtReal { return 0.0; });
}

ExtFunction make_quartic() {
  return ExtFunction::closed_form("quartic", [](double x) -> ExtReal {
    const double x2 = x * x;
    return x2 * x2;
  });
}

double chi(double a) {
  if (a > 0) throw ConfigError("chi: defined for a <= 0");
  return a < -2.0 ? -1.0 - 1.0 / a : a / 4.0;
}

ExtReal closed_conjugate(Which which, double a) {
  switch (which) {
    case Which::f1:
      return a >= -1.0 ? (a + 1.0) * (a + 1.0) / 4.0 : 0.0;
    case Which::f2:
      if (a >= 0.0) return ExtReal::inf();
      return -1.0 - 1.0 / a;
    case Which::f3:
      if (a > 0.0) return ExtReal::inf();
      return chi(a);
  }
  throw ConfigError("closed_conjugate: bad selector");
}

bool closed_support_contains(Which which, double a, double b) {
  switch (which) {
    case Which::f1:
      return ((a + 1.0) * (a + 1.0) / 4.0 + b <= 0.0) || (a <= -1.0 && b <= 0.0);
    case Which::f2:
      return a < 0.0 && b <= 1.0 / a + 1.0;
    case Which::f3:
      return (a <= -2.0 && b <= 1.0 / a + 1.0) || (-2.0 < a && a <= 0.0 && b <= -a / 4.0);
  }
  throw ConfigError("closed_support_contains: bad selector");
}

bool SubdiffDescriptor::contains(double a, double tol) const {
  switch (kind) {
    case Kind::Empty:
      return false;
    case Kind::Singleton:
      return std::abs(a - lo) <= tol;
    case Kind::Interval:
      return a >= lo - tol && a <= hi + tol;
    case Kind::Ray:
      return a <= hi + tol;
  }
  return false;
}

bool SubdiffDescriptor::matches(std::span<const double> sample, const Grid1D& a_grid) const {
  const double step = a_grid.step() * (1 + 1e-9);
  if (kind == Kind::Empty) return sample.empty();
  if (sample.empty()) return false;
  // Every sample member within one step of the descriptor...
  for (double a : sample)
    if (!contains(a, step)) return false;
  // ...and the descriptor covered by the sample at one-step scale, clipped
  // to the lattice range.
  auto covered = [&](double a) {
    for (double s : sample)
      if (std::abs(s - a) <= step) return true;
    return false;
  };
  switch (kind) {
    case Kind::Singleton:
      return covered(lo);
    case Kind::Interval: {
      const double lo_c = std::max(lo, a_grid.lo()), hi_c = std::min(hi, a_grid.hi());
      for (double a = lo_c; a <= hi_c; a += a_grid.step())
        if (!covered(a)) return false;
      return true;
    }
    case Kind::Ray: {
      const double hi_c = std::min(hi, a_grid.hi());
      for (double a = hi_c; a >= a_grid.lo(); a -= a_grid.step())
        if (!covered(a)) return false;
      return true;
    }
    default:
      return true;
  }
}

SubdiffDescriptor closed_subdiff(Which which, double x) {
  using K = SubdiffDescriptor::Kind;
  const double ax = std::abs(x);
  switch (which) {
    case Which::f1:
      if (x == 0.0) return {K::Ray, 0.0, -1.0};
      return {K::Singleton, 2.0 * x * x - 1.0, 0.0};
    case Which::f2:
      if (x == 0.0) return {K::Empty};
      return {K::Singleton, -1.0 / ax, 0.0};
    case Which::f3:
      if (x == 0.0) return {K::Empty};
      if (ax < 0.5) return {K::Singleton, -1.0 / ax, 0.0};
      if (ax == 0.5) return {K::Interval, -2.0, 0.0};
      return {K::Singleton, 0.0, 0.0};
  }
  throw ConfigError("closed_subdiff: bad selector");
}

LClassification classify_L_convex(const ExtFunction& f, const Grid1D& x_grid, double tol) {
  ExtReal at0 = f(0.0);
  if (at0.is_inf() || std::abs(at0.finite()) > tol) return {LClassification::Kind::NotLConvex};

  bool all_inf = true, all_finite = true;
  bool have_ratio = false;
  double ratio = 0.0;
  for (double x : x_grid.points()) {
    if (x == 0.0) continue;
    ExtReal v = f(x);
    if (v.is_inf()) {
      all_finite = false;
      continue;
    }
    all_inf = false;
    const double r = v.finite() / (x * x);
    if (!have_ratio) {
      ratio = r;
      have_ratio = true;
    } else if (std::abs(r - ratio) > tol) {
      return {LClassification::Kind::NotLConvex};
    }
  }
  if (all_inf) return {LClassification::Kind::IndicatorOfZero};
  if (!all_finite) return {LClassification::Kind::NotLConvex};
  return {LClassification::Kind::MemberOfL, ratio};
}

HRegionVerdict check_H_convex_region(std::span<const std::pair<double, double>> pts, double b_cap,
                                     HRegionFlags flags, const Grid1D& x_grid, double tol) {
  if (pts.empty()) throw ConfigError("check_H_convex_region: no generators");

  // (1) Convexity: midpoints of generator pairs must stay in the region.
  // With the hull flag the region is convex by construction.
  if (!flags.convex_hull) {
    auto in_region = [&](double a, double b) {
      double best = HUGE_VAL;
      for (const auto& [pa, pb] : pts) {
        const double dx = flags.downward_closed ? std::max(0.0, a - pa) : a - pa;
        const double dy = flags.downward_closed ? std::max(0.0, b - pb) : b - pb;
        best = std::min(best, std::hypot(dx, dy));
      }
      return best <= tol;
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (!in_region((pts[i].first + pts[j].first) / 2, (pts[i].second + pts[j].second) / 2))
          return HRegionVerdict::FailsConvex;
  }

  // (2) Downward closedness is a construction property of the region.
  if (!flags.downward_closed) return HRegionVerdict::FailsDownwardClosed;

  // (3) Finite sup: some grid point where the generator sup stays clear of
  // the truncation cap. Generators pushed to the cap stand for an unbounded
  // column, which forces the sup to the cap everywhere.
  double min_sup = HUGE_VAL;
  for (double x : x_grid.points()) {
    double s = -HUGE_VAL;
    for (const auto& [pa, pb] : pts) s = std::max(s, pa * x * x + pb);
    min_sup = std::min(min_sup, s);
  }
  if (min_sup >= b_cap - tol) return HRegionVerdict::FailsFiniteSup;
  return HRegionVerdict::HConvexCertified;
}

Catalog Catalog::make(const Grid1D& x_grid) {
  std::vector<ExtFunction> fs{example::make(Which::f1), example::make(Which::f2),
                              example::make(Which::f3)};
  std::vector<ConjugateFn> conjs;
  conjs.push_back(ConjugateFn::closed_form("f1*", [](double a) { return closed_conjugate(Which::f1, a); }));
  conjs.push_back(ConjugateFn::closed_form("f2*", [](double a) { return closed_conjugate(Which::f2, a); }));
  conjs.push_back(ConjugateFn::closed_form("f3*", [](double a) { return closed_conjugate(Which::f3, a); }));
  ConjugateFn sum_conj = ConjugateFn::oracle(sum(fs, "f1+f2+f3"), x_grid);
  return Catalog{std::move(fs), std::move(conjs), std::move(sum_conj)};
}

}  // namespace abconvex::example
