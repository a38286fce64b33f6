#include <doctest.h>

#include <array>
#include <cmath>

#include "abconvex/example.hpp"
#include "abconvex/transforms.hpp"

using namespace abconvex;
using example::Which;

namespace {

const Grid1D& xg() {
  static const Grid1D g = default_x_grid();
  return g;
}

const Grid1D& ag() {
  static const Grid1D g = default_a_grid();
  return g;
}

}  // namespace

TEST_CASE("conjugate oracle: worked-example spot values") {
  const ExtFunction f1 = example::make(Which::f1);
  const ExtFunction f2 = example::make(Which::f2);
  const ExtFunction f3 = example::make(Which::f3);

  // (a+1)^2 / 4 branch of f1*.
  CHECK(conjugate(f1, 1.0, xg()).finite() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(conjugate(f1, -2.0, xg()).finite() == doctest::Approx(0.0).scale(1).epsilon(1e-9));

  // f2* is +inf on a >= 0 and -1 - 1/a below.
  CHECK(conjugate(f2, 0.0, xg()).is_inf());
  CHECK(conjugate(f2, 0.5, xg()).is_inf());
  CHECK(conjugate(f2, -2.0, xg()).finite() == doctest::Approx(-0.5).epsilon(1e-9));
  // Maximizer at x = -1/a = 100 sits far outside the base window.
  CHECK(conjugate(f2, -0.01, xg()).finite() == doctest::Approx(99.0).epsilon(1e-6));

  // f3* branches: +inf for a > 0, a/4 on [-2, 0], -1 - 1/a below; both
  // expressions meet at a = -2.
  CHECK(conjugate(f3, 0.01, xg()).is_inf());
  CHECK(conjugate(f3, 0.0, xg()).finite() == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(conjugate(f3, -1.0, xg()).finite() == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(conjugate(f3, -2.0, xg()).finite() == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(conjugate(f3, -4.0, xg()).finite() == doctest::Approx(-0.75).epsilon(1e-9));
}

TEST_CASE("conjugate: everywhere-infinite function has an empty domain") {
  const ExtFunction bad =
      ExtFunction::closed_form("inf", [](double) -> ExtReal { return ExtReal::inf(); });
  CHECK_THROWS_AS((void)conjugate(bad, 0.0, xg()), EmptyDomain);
}

TEST_CASE("Fenchel-Young holds across a parameter sample") {
  for (int i = 0; i < 3; ++i) {
    const auto which = static_cast<Which>(i);
    const ExtFunction f = example::make(which);
    for (double x : {-2.0, -0.7, 0.0, 0.4, 1.0, 2.5}) {
      ExtReal fx = f(x);
      for (double a : {-8.0, -2.0, -1.0, -0.3, 0.0, 1.0, 4.0}) {
        ExtReal fs = example::closed_conjugate(which, a);
        if (fx.is_inf() || fs.is_inf()) continue;
        CHECK(fx.finite() + fs.finite() >= a * x * x - 1e-12);
      }
    }
  }
}

TEST_CASE("biconjugate: caps at the original function and recovers f2 at 0") {
  const ConjugateFn c2 = ConjugateFn::closed_form(
      "f2*", [](double a) { return example::closed_conjugate(Which::f2, a); });
  const double b0 = biconjugate(c2, 0.0, ag()).finite();
  CHECK(b0 <= 1.0 + 1e-12);
  CHECK(b0 == doctest::Approx(1.0).epsilon(2e-3));   // limited by the widened lattice
  const double b1 = biconjugate(c2, 1.0, ag()).finite();
  CHECK(b1 == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("infimal convolution: exact witness for a smooth pair") {
  // g = x^2 has conjugate 0 for a <= 1 and +inf above, so the only
  // unpruned split of coefficient 2 is (1, 1) with value 0.
  const ConjugateFn gstar = ConjugateFn::closed_form("g*", [](double a) -> ExtReal {
    return a <= 1.0 ? ExtReal(0.0) : ExtReal::inf();
  });
  const std::array pair{gstar, gstar};
  InfConvResult r = inf_convolution(pair, {2.0}, ag());
  REQUIRE(r.value.is_finite());
  CHECK(r.value.finite() == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0].a == doctest::Approx(1.0));
  CHECK(r.witness[1].a == doctest::Approx(1.0));
}

TEST_CASE("infimal convolution: every split of an impossible target is pruned") {
  const ConjugateFn f2star = ConjugateFn::closed_form(
      "f2*", [](double a) { return example::closed_conjugate(Which::f2, a); });
  const std::array pair{f2star, f2star};
  // Any a1 + a2 = 1 has some a_i >= 1/2 >= 0, where f2* = +inf.
  CHECK(inf_convolution(pair, {1.0}, ag()).value.is_inf());
}

TEST_CASE("minorant membership: sampled test with the doubling window") {
  const ExtFunction f2 = example::make(Which::f2);
  CHECK(support_contains(f2, {-3.0, -0.5}, xg(), 1e-9));
  CHECK_FALSE(support_contains(f2, {0.0, 0.5}, xg(), 1e-9));
  // -0.1 x^2 + b is violated only far outside the base window.
  CHECK_FALSE(support_contains(f2, {-0.1, -5.0}, xg(), 1e-9));
  CHECK(epi_conjugate_contains(f2, {-2.0}, -0.5, xg(), 1e-9));
  CHECK_FALSE(epi_conjugate_contains(f2, {-2.0}, -0.6, xg(), 1e-9));
}

TEST_CASE("support region: downward-closed membership from the boundary") {
  const ConjugateFn c1 = ConjugateFn::closed_form(
      "f1*", [](double a) { return example::closed_conjugate(Which::f1, a); });
  SupportRegion region(c1, ag());
  CHECK(region.contains(-1.0, -0.1, 0.02));
  CHECK(region.contains(-4.0, 0.0, 0.02));       // ray branch: b_max = 0 for a <= -1
  CHECK_FALSE(region.contains(-1.0, 0.5, 0.02));
  CHECK_FALSE(region.contains(0.0, 0.0, 0.02));  // b_max(0) = -1/4
}

TEST_CASE("support of a sum vs the Minkowski closure of supports") {
  const ExtFunction f2 = example::make(Which::f2);
  const ExtFunction f3 = example::make(Which::f3);
  const ConjugateFn c2 = ConjugateFn::closed_form(
      "f2*", [](double a) { return example::closed_conjugate(Which::f2, a); });
  const ConjugateFn c3 = ConjugateFn::closed_form(
      "f3*", [](double a) { return example::closed_conjugate(Which::f3, a); });
  const double closure_tol = 2 * (ag().step() + 0.045);

  auto inside = support_sum_closure_check(f2, f3, c2, c3, {-3.0, -0.55}, xg(), ag(), closure_tol);
  CHECK(inside.in_supp_sum);
  CHECK(inside.in_closure_of_minkowski);

  auto outside = support_sum_closure_check(f2, f3, c2, c3, {0.0, 0.0}, xg(), ag(), closure_tol);
  CHECK_FALSE(outside.in_supp_sum);
  CHECK_FALSE(outside.in_closure_of_minkowski);
}

TEST_CASE("conjugate of a sampled function stays on its own lattice") {
  const Grid1D sg(-1.0, 1.0, 0.1);
  std::vector<ExtReal> vals;
  for (double x : sg.points()) vals.push_back(x * x);   // g = x^2 on [-1, 1]
  const ExtFunction g = ExtFunction::sampled("g", sg, std::move(vals));
  // sup over the samples of 3x^2 - x^2: attained at the edge, no escape.
  CHECK(conjugate(g, 3.0, xg()).finite() == doctest::Approx(2.0));
}
