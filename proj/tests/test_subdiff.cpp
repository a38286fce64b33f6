#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "abconvex/example.hpp"
#include "abconvex/subdiff.hpp"

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

ConjugateFn closed(Which which) {
  return ConjugateFn::closed_form("conj", [which](double a) {
    return example::closed_conjugate(which, a);
  });
}

}  // namespace

TEST_CASE("membership: direct slack arithmetic") {
  const ExtFunction f2 = example::make(Which::f2);
  const ConjugateFn c2 = closed(Which::f2);
  // f2*(-20) = -0.95, f2(0) = 1: slack -0.95 + 1 - 0 - 0.1 = -0.05.
  CHECK(subdiff_contains(f2, 0.0, 0.1, {-20.0}, c2, 0.0));
  CHECK(subdiff_slack(f2, 0.0, 0.1, -20.0, c2).finite() == doctest::Approx(-0.05));
  // At eps = 0 there is no member at all.
  CHECK_FALSE(subdiff_contains(f2, 0.0, 0.0, {-20.0}, c2, 0.0));
  // Outside the domain branch: +inf conjugate never passes.
  CHECK(subdiff_slack(f2, 0.0, 0.1, 1.0, c2).is_inf());
}

TEST_CASE("enumeration matches the closed-form subdifferentials") {
  const ExtFunction f1 = example::make(Which::f1);
  const ExtFunction f2 = example::make(Which::f2);
  const ExtFunction f3 = example::make(Which::f3);
  const ConjugateFn c1 = closed(Which::f1), c2 = closed(Which::f2), c3 = closed(Which::f3);
  const double tol = ag().step() * ag().step() / 8;

  SUBCASE("f1 at 1 is the singleton {1}") {
    SubdiffSet s = subdiff_enumerate(f1, 1.0, 0.0, ag(), c1, tol);
    REQUIRE(s.members.size() >= 1);
    CHECK(example::closed_subdiff(Which::f1, 1.0).matches(s.members, ag()));
    CHECK(std::abs(s.members.front() - 1.0) <= ag().step());
  }

  SUBCASE("f1 at 0 is the ray a <= -1") {
    SubdiffSet s = subdiff_enumerate(f1, 0.0, 0.0, ag(), c1, tol);
    CHECK(example::closed_subdiff(Which::f1, 0.0).matches(s.members, ag()));
    CHECK(s.members.front() == -10.0);   // reaches the edge of the lattice
    CHECK(s.members.back() == doctest::Approx(-1.0));
  }

  SUBCASE("f2 and f3 at 0 are certifiably empty") {
    SubdiffSet s2 = subdiff_enumerate(f2, 0.0, 0.0, ag(), c2, 1e-9);
    CHECK(s2.empty());
    CHECK(s2.emptiness_certified);
    SubdiffSet s3 = subdiff_enumerate(f3, 0.0, 0.0, ag(), c3, 1e-9);
    CHECK(s3.empty());
    CHECK(s3.emptiness_certified);
  }

  SUBCASE("f2 away from 0 is the singleton -1/|x|") {
    for (double x : {0.25, -0.5, 1.0}) {
      SubdiffSet s = subdiff_enumerate(f2, x, 0.0, ag(), c2,
                                       2 * std::pow(std::abs(x), 3.0) * 2.5e-5);
      CHECK(example::closed_subdiff(Which::f2, x).matches(s.members, ag()));
    }
  }

  SUBCASE("f3 at the kink is the interval [-2, 0]") {
    SubdiffSet s = subdiff_enumerate(f3, 0.5, 0.0, ag(), c3, 6.25e-6);
    CHECK(example::closed_subdiff(Which::f3, 0.5).matches(s.members, ag()));
    CHECK(s.members.front() == doctest::Approx(-2.0));
    CHECK(s.members.back() == doctest::Approx(0.0));
  }

  SUBCASE("f3 outside the hump is the singleton {0}") {
    SubdiffSet s = subdiff_enumerate(f3, 1.0, 0.0, ag(), c3, 1e-9);
    CHECK(example::closed_subdiff(Which::f3, 1.0).matches(s.members, ag()));
  }
}

TEST_CASE("enumeration is monotone in eps") {
  const ExtFunction f1 = example::make(Which::f1);
  const ConjugateFn c1 = closed(Which::f1);
  SubdiffSet small = subdiff_enumerate(f1, 1.0, 0.1, ag(), c1, 1e-9);
  SubdiffSet large = subdiff_enumerate(f1, 1.0, 0.5, ag(), c1, 1e-9);
  CHECK(small.members.size() < large.members.size());
  for (double a : small.members)
    CHECK(std::binary_search(large.members.begin(), large.members.end(), a));
}

TEST_CASE("domain map: where the eps-subdifferential is nonempty") {
  const ExtFunction f2 = example::make(Which::f2);
  const ConjugateFn c2 = closed(Which::f2);
  const Grid1D coarse_x(-1.0, 1.0, 0.1);
  const Grid1D coarse_a(-10.0, 10.0, 0.1);
  // At eps = 0, f2 has empty subdifferential exactly at x = 0.
  auto dom = domain_map(f2, 0.0, coarse_x, coarse_a, c2, 1e-9);
  CHECK(std::find(dom.begin(), dom.end(), 0.0) == dom.end());
  CHECK(std::find(dom.begin(), dom.end(), 0.5) != dom.end());
  CHECK(std::find(dom.begin(), dom.end(), -1.0) != dom.end());
}

TEST_CASE("minkowski sums deduplicate at lattice resolution") {
  SubdiffSet a{{0.0, 0.01}, false};
  SubdiffSet b{{0.0, 0.01}, false};
  const std::array sets{a, b};
  auto sum = minkowski_sum_subdiffs(sets, 0.01);
  CHECK(sum == std::vector<double>{0.0, 0.01, 0.02});

  SubdiffSet empty;
  const std::array with_empty{a, empty};
  CHECK(minkowski_sum_subdiffs(with_empty, 0.01).empty());
}

TEST_CASE("sum-rule inclusion with doubled eps holds for the worked triple") {
  example::Catalog cat = example::Catalog::make(xg());
  InclusionReport rep = check_inclusion_T33(cat.fs, cat.closed_conjs, cat.sum_conj_oracle, 1.0,
                                            0.5, 2.0, ag(), 1e-8);
  CHECK_FALSE(rep.lhs_empty);
  CHECK(rep.holds);
  CHECK(rep.violations.empty());
  CHECK_THROWS_AS((void)check_inclusion_T33(cat.fs, cat.closed_conjs, cat.sum_conj_oracle, 1.0,
                                            0.5, 1.0, ag(), 1e-8),
                  ConfigError);
}

TEST_CASE("sum-rule inclusion fails without minorant-closed components") {
  // cos admits no quadratic minorant touching near x = 4, so its
  // eps-subdifferential there is empty while the sum with x^4 has members.
  const Grid1D wide_x(-6.0, 6.0, 0.002);
  const Grid1D high_a(25.0, 35.0, 0.01);
  const std::array fs{example::make_cos(), example::make_quartic()};
  const std::array conjs{ConjugateFn::oracle(fs[0], wide_x), ConjugateFn::oracle(fs[1], wide_x)};
  const ConjugateFn sum_conj = ConjugateFn::oracle(sum(fs, "cos+x^4"), wide_x);
  InclusionReport rep =
      check_inclusion_T33(fs, conjs, sum_conj, 4.0, 0.05, 2.0, high_a, 1e-3);
  CHECK_FALSE(rep.lhs_empty);
  CHECK_FALSE(rep.holds);
  CHECK(rep.rhs.empty());   // the cos factor contributes nothing
}

TEST_CASE("two-sided sum rule sandwich at the optimum") {
  example::Catalog cat = example::Catalog::make(xg());
  const double etas[2] = {0.1, 0.01};
  for (double eps : {0.0, 0.5}) {
    SumRuleReport rep = check_sum_rule_F2(cat.fs, cat.closed_conjs, cat.sum_conj_oracle, 1.0, eps,
                                          etas, ag(), 1e-8);
    REQUIRE(rep.entries.size() == 2);
    CHECK(rep.holds());
  }
}

TEST_CASE("two-sided sum rule rejects points outside a domain") {
  const Grid1D sg(-1.0, 1.0, 0.5);
  std::vector<ExtReal> vals{ExtReal::inf(), ExtReal::inf(), 0.0, ExtReal::inf(), ExtReal::inf()};
  const std::array fs{ExtFunction::sampled("spike", sg, vals), example::make(Which::f1)};
  const std::array conjs{ConjugateFn::oracle(fs[0], sg), closed(Which::f1)};
  const ConjugateFn sum_conj = ConjugateFn::oracle(sum(fs), sg);
  const double etas[1] = {0.1};
  CHECK_THROWS_AS(
      (void)check_sum_rule_F2(fs, conjs, sum_conj, 1.0, 0.0, etas, ag(), 1e-8),
      EmptyIntersection);
}
