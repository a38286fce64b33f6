#include <doctest.h>

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "abconvex/example.hpp"

using namespace abconvex;
using example::Which;

namespace {

const Grid1D& xg() {
  static const Grid1D g = default_x_grid();
  return g;
}

}  // namespace

TEST_CASE("worked functions: closed-form values and pointwise ordering") {
  const ExtFunction f1 = example::make(Which::f1);
  const ExtFunction f2 = example::make(Which::f2);
  const ExtFunction f3 = example::make(Which::f3);

  CHECK(f1(1.0).finite() == 0.0);
  CHECK(f1(-1.0).finite() == 0.0);
  CHECK(f1(0.5).finite() == doctest::Approx(-0.1875));
  CHECK(f2(0.0).finite() == 1.0);
  CHECK(f2(1.0).finite() == -1.0);
  CHECK(f3(0.5).finite() == 0.0);
  CHECK(f3(0.51).finite() == 0.0);
  CHECK(f3(0.25).finite() == 0.5);

  // f3 truncates the negative tail of f2, so it dominates pointwise.
  for (double x : xg().points()) CHECK(f3(x).finite() >= f2(x).finite());
}

TEST_CASE("chi: branch values, continuity at -2, and the domain guard") {
  CHECK(example::chi(0.0) == 0.0);
  CHECK(example::chi(-1.0) == doctest::Approx(-0.25));
  CHECK(example::chi(-2.0) == doctest::Approx(-0.5));
  CHECK(example::chi(-2.0 - 1e-12) == doctest::Approx(-0.5));
  CHECK(example::chi(-4.0) == doctest::Approx(-0.75));
  CHECK_THROWS_AS((void)example::chi(0.1), ConfigError);
}

TEST_CASE("closed conjugates: branch boundaries") {
  CHECK(example::closed_conjugate(Which::f1, 1.0).finite() == doctest::Approx(1.0));
  CHECK(example::closed_conjugate(Which::f1, -1.0).finite() == 0.0);
  CHECK(example::closed_conjugate(Which::f1, -5.0).finite() == 0.0);
  CHECK(example::closed_conjugate(Which::f2, 0.0).is_inf());
  CHECK(example::closed_conjugate(Which::f2, -1.0).finite() == 0.0);
  CHECK(example::closed_conjugate(Which::f3, 0.0).finite() == 0.0);
  CHECK(example::closed_conjugate(Which::f3, 1e-12).is_inf());
}

TEST_CASE("closed support sets honor the strict boundaries") {
  CHECK(example::closed_support_contains(Which::f1, 0.0, -0.25));
  CHECK_FALSE(example::closed_support_contains(Which::f1, 0.0, -0.24));
  CHECK(example::closed_support_contains(Which::f1, -3.0, 0.0));   // ray branch
  CHECK_FALSE(example::closed_support_contains(Which::f1, -3.0, 0.01));

  CHECK(example::closed_support_contains(Which::f2, -2.0, 0.5));
  CHECK_FALSE(example::closed_support_contains(Which::f2, -2.0, 0.51));
  CHECK_FALSE(example::closed_support_contains(Which::f2, 0.0, -100.0));

  CHECK(example::closed_support_contains(Which::f3, -1.0, 0.25));
  CHECK_FALSE(example::closed_support_contains(Which::f3, -1.0, 0.26));
  CHECK(example::closed_support_contains(Which::f3, -4.0, 0.75));
  CHECK_FALSE(example::closed_support_contains(Which::f3, 0.01, -100.0));
}

TEST_CASE("subdifferential descriptors: containment and lattice agreement") {
  using K = example::SubdiffDescriptor::Kind;
  const Grid1D ag(-10.0, 10.0, 0.01);

  auto ray = example::closed_subdiff(Which::f1, 0.0);
  CHECK(ray.kind == K::Ray);
  CHECK(ray.contains(-1.0));
  CHECK(ray.contains(-9.0));
  CHECK_FALSE(ray.contains(-0.9));

  auto single = example::closed_subdiff(Which::f2, 0.5);
  CHECK(single.kind == K::Singleton);
  CHECK(single.lo == doctest::Approx(-2.0));
  CHECK(single.matches(std::vector<double>{-2.0}, ag));
  CHECK(single.matches(std::vector<double>{-2.01}, ag));
  CHECK_FALSE(single.matches(std::vector<double>{-2.05}, ag));
  CHECK_FALSE(single.matches(std::vector<double>{}, ag));

  auto interval = example::closed_subdiff(Which::f3, 0.5);
  CHECK(interval.kind == K::Interval);
  std::vector<double> dense;
  for (double a = -2.0; a <= 0.0 + 1e-12; a += 0.01) dense.push_back(a);
  CHECK(interval.matches(dense, ag));
  CHECK_FALSE(interval.matches(std::vector<double>{-2.0, 0.0}, ag));   // gap in the middle

  CHECK(example::closed_subdiff(Which::f3, 0.0).kind == K::Empty);
  CHECK(example::closed_subdiff(Which::f3, 2.0).contains(0.0));
}

TEST_CASE("abstract-linear classification") {
  using LK = example::LClassification::Kind;
  const Grid1D coarse(-1.0, 1.0, 0.25);

  const ExtFunction twice = ExtFunction::closed_form("2x^2", [](double x) -> ExtReal {
    return 2.0 * x * x;
  });
  auto c = example::classify_L_convex(twice, coarse, 1e-9);
  CHECK(c.kind == LK::MemberOfL);
  CHECK(c.a == doctest::Approx(2.0));

  CHECK(example::classify_L_convex(example::make(Which::f1), coarse, 1e-9).kind == LK::NotLConvex);

  std::vector<ExtReal> ind(coarse.size(), ExtReal::inf());
  ind[coarse.nearest(0.0)] = 0.0;
  const ExtFunction indicator = ExtFunction::sampled("ind0", coarse, std::move(ind));
  CHECK(example::classify_L_convex(indicator, coarse, 1e-9).kind == LK::IndicatorOfZero);

  // Partially infinite but not an indicator: neither class fits.
  const ExtFunction half = ExtFunction::closed_form("half", [](double x) -> ExtReal {
    return x < 0 ? ExtReal::inf() : ExtReal(x * x);
  });
  CHECK(example::classify_L_convex(half, coarse, 1e-9).kind == LK::NotLConvex);
}

TEST_CASE("minorant-region certification covers all verdicts") {
  using V = example::HRegionVerdict;
  const Grid1D coarse(-1.0, 1.0, 0.1);
  const double b_cap = 10.0;

  const std::array<std::pair<double, double>, 2> boundary{{{-1.0, 0.0}, {-2.0, 0.5}}};
  CHECK(example::check_H_convex_region(boundary, b_cap, {}, coarse, 1e-6) ==
        V::HConvexCertified);

  const std::array<std::pair<double, double>, 1> capped{{{1.0, b_cap}}};
  CHECK(example::check_H_convex_region(capped, b_cap, {}, coarse, 1e-6) == V::FailsFiniteSup);

  example::HRegionFlags not_down{};
  not_down.downward_closed = false;
  CHECK(example::check_H_convex_region(boundary, b_cap, not_down, coarse, 1e-6) ==
        V::FailsDownwardClosed);

  example::HRegionFlags raw{};
  raw.convex_hull = false;
  const std::array<std::pair<double, double>, 2> corners{{{-2.0, 0.0}, {0.0, -2.0}}};
  CHECK(example::check_H_convex_region(corners, b_cap, raw, coarse, 1e-6) == V::FailsConvex);

  CHECK_THROWS_AS(
      (void)example::check_H_convex_region({}, b_cap, {}, coarse, 1e-6), ConfigError);
}

TEST_CASE("catalog bundles the example consistently") {
  example::Catalog cat = example::Catalog::make(xg());
  REQUIRE(cat.fs.size() == 3);
  REQUIRE(cat.closed_conjs.size() == 3);
  CHECK(cat.fs[0].name() == "f1");
  CHECK(cat.closed_conjs[2](-1.0).finite() == doctest::Approx(-0.25));
  // The oracle conjugate of the sum agrees with the primal optimum at 0.
  CHECK(cat.sum_conj_oracle(0.0).finite() == doctest::Approx(1.0).epsilon(1e-6));
}
