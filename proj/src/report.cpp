#include "abconvex/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "abconvex/errors.hpp"
#include "abconvex/io.hpp"
#include "abconvex/json_writer.hpp"
#include "abconvex/parallel.hpp"

namespace abconvex::report {

namespace {

using example::Which;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

constexpr const char* kAnchorConj = "conjugate closed forms of the worked example";
constexpr const char* kAnchorBiconj = "second conjugate and Fenchel-Moreau";
constexpr const char* kAnchorFY = "Fenchel-Young inequality";
constexpr const char* kAnchorSupport = "support sets of the worked example";
constexpr const char* kAnchorSubdiff = "subdifferentials of the worked example";
constexpr const char* kAnchorCalc = "eps-subdifferential calculus";
constexpr const char* kAnchorDuality = "duality gap certification";
constexpr const char* kAnchorSumRule = "sum rule for eps-subdifferentials";
constexpr const char* kAnchorStructure = "abstract linear and affine structure";
constexpr const char* kAnchorPlumbing = "plumbing";

class Builder {
 public:
  explicit Builder(std::vector<CheckRecord>& out) : out_(out) {}

  void add(std::string id, std::string anchor, bool pass, double max_error,
           std::string witness = {}) {
    out_.push_back({std::move(id), std::move(anchor), pass ? Status::Pass : Status::Fail,
                    max_error, std::move(witness)});
  }

  void add_status(std::string id, std::string anchor, Status status, double max_error,
                  std::string witness = {}) {
    out_.push_back({std::move(id), std::move(anchor), status, max_error, std::move(witness)});
  }

  // Runs a check body; an exception becomes a failing record.
  template <class F>
  void guarded(const char* group_id, const char* anchor, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(std::string(group_id) + "-exception", anchor, false, HUGE_VAL,
          std::string("exception: ") + e.what());
    }
  }

 private:
  std::vector<CheckRecord>& out_;
};

const char* fname(Which w) {
  switch (w) {
    case Which::f1: return "f1";
    case Which::f2: return "f2";
    case Which::f3: return "f3";
  }
  return "?";
}

// ---------------------------------------------------------------- conjugates

void check_conjugates(Builder& b, std::span<const ConjugateFn> oracles, const Grid1D& ag,
                      double tol) {
  constexpr double kCollar = 0.02;
  for (int i = 0; i < 3; ++i) {
    const auto which = static_cast<Which>(i);
    const auto& pts = ag.points();
    std::vector<double> errs(pts.size(), 0.0);
    std::vector<int> branch_bad(pts.size(), 0);
    parallel_for(pts.size(), [&](std::size_t j) {
      const double a = pts[j];
      if (i != 0 && std::abs(a) <= kCollar + 1e-12) return;   // boundary collar
      ExtReal c = example::closed_conjugate(which, a);
      ExtReal o = oracles[static_cast<std::size_t>(i)](a);
      if (c.is_inf() != o.is_inf()) {
        branch_bad[j] = 1;
        if (c.is_finite()) errs[j] = HUGE_VAL;
        return;
      }
      if (c.is_finite()) errs[j] = std::abs(c.finite() - o.finite());
    });
    double max_err = 0.0, worst_a = 0.0;
    int mismatches = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      mismatches += branch_bad[j];
      if (errs[j] > max_err) {
        max_err = errs[j];
        worst_a = pts[j];
      }
    }
    b.add(std::string("conj-finite-") + fname(which), kAnchorConj, max_err <= tol, max_err,
          "worst at a = " + fmt(worst_a));
    if (i != 0)
      b.add(std::string("conj-unbounded-") + fname(which), kAnchorConj, mismatches == 0,
            static_cast<double>(mismatches),
            "branch mismatches outside the 0.02 collar: " + std::to_string(mismatches));
  }

  const double spot = std::abs(oracles[0](1.0).finite() - 1.0);
  b.add("conj-spot-f1-at-1", kAnchorConj,
        spot <= tol && example::closed_conjugate(Which::f1, 1.0) == ExtReal(1.0), spot);

  const double left = example::closed_conjugate(Which::f3, -2.0 - 1e-9).as_double();
  const double at = example::closed_conjugate(Which::f3, -2.0).as_double();
  const double oracle_err = std::abs(oracles[2](-2.0).as_double() + 0.5);
  b.add("conj-branch-continuity-f3", kAnchorConj,
        std::abs(at + 0.5) <= 1e-12 && std::abs(left + 0.5) <= 1e-6 && oracle_err <= tol,
        oracle_err, "f3* near a = -2: " + fmt(left) + " / " + fmt(at));

  const double chi_err =
      std::max(std::abs(example::chi(-2.0) + 0.5), std::abs(example::chi(-2.0 - 1e-9) + 0.5));
  b.add("chi-continuity", kAnchorConj, chi_err <= 1e-6, chi_err);
}

// -------------------------------------------------------------- biconjugates

void check_biconjugates(Builder& b, const example::Catalog& cat, const Grid1D& xg,
                        const Grid1D& ag, double tol) {
  for (int i = 0; i < 3; ++i) {
    const auto which = static_cast<Which>(i);
    const ExtFunction& f = cat.fs[static_cast<std::size_t>(i)];
    const ConjugateFn& conj = cat.closed_conjs[static_cast<std::size_t>(i)];
    const auto& xs = xg.points();
    std::vector<double> viol(xs.size(), -HUGE_VAL), err(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t j) {
      ExtReal fx = f(xs[j]);
      if (fx.is_inf()) return;
      const double bc = biconjugate(conj, xs[j], ag).as_double();
      viol[j] = bc - fx.finite();
      err[j] = std::abs(fx.finite() - bc);
    });
    double max_viol = -HUGE_VAL, max_err = 0.0, worst_x = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      max_viol = std::max(max_viol, viol[j]);
      if (err[j] > max_err) {
        max_err = err[j];
        worst_x = xs[j];
      }
    }
    b.add(std::string("biconj-minorant-") + fname(which), kAnchorBiconj, max_viol <= 1e-9,
          std::max(0.0, max_viol));
    b.add(std::string("biconj-equality-") + fname(which), kAnchorBiconj, max_err <= tol, max_err,
          "worst at x = " + fmt(worst_x));
  }
}

void check_cos_biconjugate(Builder& b) {
  // cos needs a window wide enough to expose its biconjugate gap; the
  // conjugate oracle is padded by its quantization bound so the second
  // conjugate stays a certified minorant.
  const Grid1D cx(-6.4, 6.4, 4e-3);
  const Grid1D ca(-3.0, 3.0, 0.01);
  const ExtFunction fcos = example::make_cos();
  const ConjugateFn raw = ConjugateFn::oracle(fcos, cx);
  // sup-quantization bound: (step/2)^2 / 2 * max |d^2/dx^2 (a x^2 - cos x)|
  // over the coefficients that matter (|a| <= 3): (2e-3)^2 / 2 * 7.
  const double pad = 1.4e-5;
  const ConjugateFn conj = ConjugateFn::closed_form("cos* (padded oracle)", [raw, pad](double a) {
    ExtReal v = raw(a);
    if (v.is_inf()) return v;
    return ExtReal(v.finite() + pad);
  });
  raw.tabulate(ca);

  const auto& xs = cx.points();
  std::vector<double> viol(xs.size(), -HUGE_VAL), gap(xs.size(), -HUGE_VAL);
  parallel_for(xs.size(), [&](std::size_t j) {
    const double c = std::cos(xs[j]);
    const double bc = biconjugate(conj, xs[j], ca).as_double();
    viol[j] = bc - c;
    gap[j] = c - bc;
  });
  double max_viol = -HUGE_VAL, max_gap = -HUGE_VAL, gap_x = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    max_viol = std::max(max_viol, viol[j]);
    if (gap[j] > max_gap) {
      max_gap = gap[j];
      gap_x = xs[j];
    }
  }
  b.add("biconj-minorant-cos", kAnchorBiconj, max_viol <= 1e-9, std::max(0.0, max_viol));
  b.add("biconj-gap-cos", kAnchorBiconj, max_gap > 0.1, max_gap,
        "largest gap at x = " + fmt(gap_x));
}

// ------------------------------------------------------------- Fenchel-Young

void check_fenchel_young(Builder& b, const example::Catalog& cat, const Grid1D& xg,
                         const Grid1D& ag) {
  for (int i = 0; i < 3; ++i) {
    const auto which = static_cast<Which>(i);
    const ExtFunction& f = cat.fs[static_cast<std::size_t>(i)];
    const ConjugateFn& conj = cat.closed_conjs[static_cast<std::size_t>(i)];
    double max_viol = -HUGE_VAL;
    for (std::size_t xi = 0; xi < xg.size(); xi += 30) {
      const double x = xg[xi];
      ExtReal fx = f(x);
      if (fx.is_inf()) continue;
      for (std::size_t aj = 0; aj < ag.size(); aj += 25) {
        const double a = ag[aj];
        ExtReal fs = conj(a);
        if (fs.is_inf()) continue;
        max_viol = std::max(max_viol, a * x * x - fx.finite() - fs.finite());
      }
    }
    b.add(std::string("fenchel-young-") + fname(which), kAnchorFY, max_viol <= 1e-9,
          std::max(0.0, max_viol));
  }
}

// ------------------------------------------------------------------- support

void check_support(Builder& b, const example::Catalog& cat, const Grid1D& xg, const Grid1D& ag) {
  const int na = 101, nb = 101;
  const double a_lo = -5.0, a_step = 0.07;   // up to a = 2
  const double b_lo = -3.0, b_step = 0.045;  // up to b = 1.5
  constexpr double kCollar = 0.05;

  for (int i = 0; i < 3; ++i) {
    const auto which = static_cast<Which>(i);
    const ExtFunction& f = cat.fs[static_cast<std::size_t>(i)];
    std::vector<int> bad(static_cast<std::size_t>(na) * nb, 0);
    parallel_for(bad.size(), [&](std::size_t idx) {
      const double a = a_lo + a_step * static_cast<double>(idx / nb);
      const double bb = b_lo + b_step * static_cast<double>(idx % nb);
      const bool closed = example::closed_support_contains(which, a, bb);
      // Skip the boundary collar: probes whose membership flips under a
      // small parameter perturbation.
      for (double da : {-kCollar, kCollar})
        if (example::closed_support_contains(which, a + da, bb) != closed) return;
      for (double db : {-kCollar, kCollar})
        if (example::closed_support_contains(which, a, bb + db) != closed) return;
      const bool sampled = support_contains(f, {a, bb}, xg, 1e-6);
      if (sampled != closed) bad[idx] = 1;
    });
    int mismatches = 0;
    std::string witness;
    for (std::size_t idx = 0; idx < bad.size(); ++idx) {
      if (!bad[idx]) continue;
      if (mismatches == 0)
        witness = "first mismatch at (a, b) = (" + fmt(a_lo + a_step * (idx / nb)) + ", " +
                  fmt(b_lo + b_step * (idx % nb)) + ")";
      ++mismatches;
    }
    b.add(std::string("support-lattice-") + fname(which), kAnchorSupport, mismatches == 0,
          static_cast<double>(mismatches), witness);
  }

  // supp f1 is a genuine union: one point per branch, outside the other.
  const bool ray_only = example::closed_support_contains(Which::f1, -2.0, -0.1) &&
                        !((-2.0 + 1.0) * (-2.0 + 1.0) / 4.0 - 0.1 <= 0.0) &&
                        support_contains(cat.fs[0], {-2.0, -0.1}, xg, 1e-6);
  const bool parabola_only = example::closed_support_contains(Which::f1, 0.5, -0.6) &&
                             !(0.5 <= -1.0) &&
                             support_contains(cat.fs[0], {0.5, -0.6}, xg, 1e-6);
  b.add("support-union-f1", kAnchorSupport, ray_only && parabola_only, 0.0,
        "branch witnesses (-2, -0.1) and (0.5, -0.6)");

  // Sum of supports vs support of the sum, via the sampled Minkowski closure.
  const double closure_tol = 2 * (ag.step() + b_step);
  auto r1 = support_sum_closure_check(cat.fs[1], cat.fs[2], cat.closed_conjs[1],
                                      cat.closed_conjs[2], {-3.0, -0.55}, xg, ag, closure_tol);
  auto r2 = support_sum_closure_check(cat.fs[1], cat.fs[2], cat.closed_conjs[1],
                                      cat.closed_conjs[2], {0.0, 0.0}, xg, ag, closure_tol);
  b.add("support-sum-closure", kAnchorSupport,
        r1.in_supp_sum && r1.in_closure_of_minkowski && !r2.in_supp_sum &&
            !r2.in_closure_of_minkowski,
        0.0, "probes (-3, -0.55) and (0, 0) against f2 + f3");
}

// ----------------------------------------------------------- subdifferentials

std::vector<double> subdiff_sample_points() {
  std::vector<double> xs{0.0, 0.5, -0.5, 1.0, -1.0};
  for (int k = 0; k <= 22; ++k) {
    const double x = 0.1 + 0.038 * k;
    xs.push_back(x);
    xs.push_back(-x);
  }
  return xs;   // 51 points per function
}

double subdiff_tol(Which which, double x, double a_step) {
  const double q = (a_step / 2) * (a_step / 2);
  if (which == Which::f1) return std::max(1e-9, a_step * a_step / 8);
  // Slack curvature in the coefficient is 2|x|^3 on the -1 - 1/a branch.
  return std::max(1e-9, 2 * std::abs(x) * std::abs(x) * std::abs(x) * q);
}

void check_subdifferentials(Builder& b, const example::Catalog& cat, const Grid1D& ag) {
  const auto xs = subdiff_sample_points();
  for (int i = 0; i < 3; ++i) {
    const auto which = static_cast<Which>(i);
    const ExtFunction& f = cat.fs[static_cast<std::size_t>(i)];
    const ConjugateFn& conj = cat.closed_conjs[static_cast<std::size_t>(i)];
    int bad = 0;
    std::string witness;
    for (double x : xs) {
      const double tol = subdiff_tol(which, x, ag.step());
      SubdiffSet set = subdiff_enumerate(f, x, 0.0, ag, conj, tol);
      if (!example::closed_subdiff(which, x).matches(set.members, ag)) {
        if (bad == 0) witness = "first mismatch at x = " + fmt(x);
        ++bad;
      }
    }
    b.add(std::string("subdiff-match-") + fname(which), kAnchorSubdiff, bad == 0,
          static_cast<double>(bad), witness);
  }

  for (int i : {1, 2}) {
    const auto which = static_cast<Which>(i);
    SubdiffSet set = subdiff_enumerate(cat.fs[static_cast<std::size_t>(i)], 0.0, 0.0, ag,
                                       cat.closed_conjs[static_cast<std::size_t>(i)], 1e-9);
    b.add(std::string("subdiff-empty-") + fname(which) + "-at-0", kAnchorSubdiff,
          set.empty() && set.emptiness_certified, static_cast<double>(set.members.size()));
  }

  bool interval_ok = true;
  for (double x : {0.5, -0.5}) {
    SubdiffSet set = subdiff_enumerate(cat.fs[2], x, 0.0, ag, cat.closed_conjs[2],
                                       subdiff_tol(Which::f3, x, ag.step()));
    const example::SubdiffDescriptor want{example::SubdiffDescriptor::Kind::Interval, -2.0, 0.0};
    interval_ok = interval_ok && want.matches(set.members, ag);
  }
  b.add("subdiff-interval-f3-at-half", kAnchorSubdiff, interval_ok, 0.0,
        "[-2, 0] at x = +/- 1/2");

  // Spot membership with eps = 0.1 at a point where the exact
  // subdifferential is empty.
  ExtReal slack = subdiff_slack(cat.fs[1], 0.0, 0.1, -20.0, cat.closed_conjs[1]);
  b.add("subdiff-eps-membership-f2", kAnchorSubdiff,
        subdiff_contains(cat.fs[1], 0.0, 0.1, {-20.0}, cat.closed_conjs[1], 1e-9) &&
            slack.is_finite() && std::abs(slack.finite() + 0.05) <= 1e-12,
        std::abs(slack.as_double() + 0.05), "phi_{-20} at x = 0, eps = 0.1");
}

void check_subdiff_calculus(Builder& b, const example::Catalog& cat, const Grid1D& xg,
                            const Grid1D& ag, std::span<const double> ladder, double tol) {
  // Monotonicity in eps: members only grow along the ladder.
  {
    std::vector<double> eps_up(ladder.begin(), ladder.end());
    std::sort(eps_up.begin(), eps_up.end());
    int bad = 0;
    for (int i = 0; i < 3; ++i) {
      for (double x : {0.0, 0.3, 0.7, 1.0}) {
        std::vector<double> prev;
        for (double eps : eps_up) {
          SubdiffSet set = subdiff_enumerate(cat.fs[static_cast<std::size_t>(i)], x, eps, ag,
                                             cat.closed_conjs[static_cast<std::size_t>(i)], 1e-9);
          for (double a : prev)
            if (!std::binary_search(set.members.begin(), set.members.end(), a)) ++bad;
          prev = set.members;
        }
      }
    }
    b.add("subdiff-eps-monotonicity", kAnchorCalc, bad == 0, static_cast<double>(bad));
  }

  // Stability under a small eps bump: the enlarged set stays within two
  // lattice steps of the original (the intersection-over-eta identity at
  // grid scale).
  {
    const double dil = 2 * ag.step() * (1 + 1e-9);
    int bad = 0;
    for (int i : {0, 1}) {
      SubdiffSet base = subdiff_enumerate(cat.fs[static_cast<std::size_t>(i)], 1.0, 0.5, ag,
                                          cat.closed_conjs[static_cast<std::size_t>(i)], 1e-9);
      SubdiffSet bumped = subdiff_enumerate(cat.fs[static_cast<std::size_t>(i)], 1.0, 0.51, ag,
                                            cat.closed_conjs[static_cast<std::size_t>(i)], 1e-9);
      for (double a : base.members)
        if (!std::binary_search(bumped.members.begin(), bumped.members.end(), a)) ++bad;
      for (double a : bumped.members) {
        bool near = false;
        for (double c : base.members)
          if (std::abs(a - c) <= dil) {
            near = true;
            break;
          }
        if (!near) ++bad;
      }
    }
    b.add("subdiff-eta-stability", kAnchorCalc, bad == 0, static_cast<double>(bad),
          "eps 0.5 -> 0.51 at x = 1 for f1, f2");
  }

  // Every coefficient with a finite conjugate appears in some
  // eps-subdifferential on the grid, down to the smallest ladder eps.
  {
    const double eps_min = *std::min_element(ladder.begin(), ladder.end());
    const std::array<std::vector<double>, 3> spots{
        {{-2.0, 0.0, 1.0}, {-5.0, -1.0}, {-4.0, -1.0}}};
    for (int i = 0; i < 3; ++i) {
      const ExtFunction& f = cat.fs[static_cast<std::size_t>(i)];
      const ConjugateFn& conj = cat.closed_conjs[static_cast<std::size_t>(i)];
      double worst = -HUGE_VAL;
      for (double a : spots[static_cast<std::size_t>(i)]) {
        double best = HUGE_VAL;
        for (double x : xg.points()) {
          ExtReal s = subdiff_slack(f, x, 0.0, a, conj);
          if (s.is_finite()) best = std::min(best, s.finite());
        }
        worst = std::max(worst, best);
      }
      b.add(std::string("subdiff-domain-") + fname(static_cast<Which>(i)), kAnchorCalc,
            worst <= eps_min, worst, "largest min-slack over the spot coefficients");
    }
  }

  // Conjugate of the sum never exceeds the infimal convolution.
  {
    double worst = -HUGE_VAL;
    for (double a : {-3.0, -1.0, 0.0, 1.0}) {
      ExtReal lhs = cat.sum_conj_oracle(a);
      ExtReal rhs = inf_convolution(cat.closed_conjs, {a}, ag).value;
      if (rhs.is_inf()) continue;   // lhs <= +inf trivially
      worst = std::max(worst, lhs.as_double() - rhs.finite());
    }
    b.add("conjugate-sum-vs-infconv", kAnchorCalc, worst <= tol, std::max(0.0, worst));
  }

  // Easy inclusion: sums of split-eps members belong to the
  // eps-subdifferential of the sum.
  {
    const ExtFunction fsum = sum(cat.fs, "f1+f2+f3");
    const double eps = 0.5, x = 1.0;
    const std::array<std::array<double, 3>, 7> splits{{{eps, 0, 0},
                                                       {0, eps, 0},
                                                       {0, 0, eps},
                                                       {eps / 2, eps / 2, 0},
                                                       {eps / 2, 0, eps / 2},
                                                       {0, eps / 2, eps / 2},
                                                       {eps / 3, eps / 3, eps / 3}}};
    int bad = 0;
    for (const auto& split : splits) {
      std::array<SubdiffSet, 3> parts;
      for (int i = 0; i < 3; ++i)
        parts[static_cast<std::size_t>(i)] =
            subdiff_enumerate(cat.fs[static_cast<std::size_t>(i)], x, split[static_cast<std::size_t>(i)],
                              ag, cat.closed_conjs[static_cast<std::size_t>(i)], 1e-9);
      for (double s : minkowski_sum_subdiffs(parts, ag.step()))
        if (!subdiff_contains(fsum, x, eps, {s}, cat.sum_conj_oracle, 1e-8)) ++bad;
    }
    b.add("split-sum-inclusion", kAnchorCalc, bad == 0, static_cast<double>(bad),
          "eps = 0.5 splits at x = 1");
  }
}

// ------------------------------------------------------------------- duality

void check_duality(Builder& b, GapReport& gap, const example::Catalog& cat, const Grid1D& xg,
                   const Grid1D& ag, std::span<const double> ladder, double tol) {
  gap = certify_gap_T35(cat.fs, cat.closed_conjs, cat.sum_conj_oracle, ladder, xg, ag, tol);

  b.add("primal-value", kAnchorDuality, !gap.primal_unbounded && std::abs(gap.v_primal + 1) <= 1e-4,
        std::abs(gap.v_primal + 1), "v(P) = " + fmt(gap.v_primal));
  const double argmin_err =
      std::min(std::abs(gap.primal_argmin - 1), std::abs(gap.primal_argmin + 1));
  b.add("primal-argmin", kAnchorDuality, !gap.primal_unbounded && argmin_err <= 2e-3, argmin_err,
        "argmin = " + fmt(gap.primal_argmin));

  {
    PrimalResult p = primal_value(cat.fs, cat.sum_conj_oracle, xg);
    const double err = std::abs(p.value - p.conjugate_route);
    b.add("primal-conjugate-route", kAnchorDuality, err <= tol, err,
          "-(sum f)*(0) = " + fmt(p.conjugate_route));
  }

  b.add("dual-value", kAnchorDuality, !gap.dual_all_pruned && std::abs(gap.v_dual + 1) <= 5e-3,
        std::abs(gap.v_dual + 1), "v(D) = " + fmt(gap.v_dual));

  {
    bool ok = gap.dual_witness.size() == 3;
    double werr = HUGE_VAL;
    if (ok) {
      const double want[3] = {1.0, -1.0, 0.0};
      werr = 0.0;
      for (int i = 0; i < 3; ++i)
        werr = std::max(werr, std::abs(gap.dual_witness[static_cast<std::size_t>(i)].a - want[i]));
      ok = werr <= ag.step() + 1e-12;
    }
    b.add("dual-witness", kAnchorDuality, ok, werr, "want coefficients near (1, -1, 0)");
  }

  b.add("zero-gap", kAnchorDuality,
        !gap.primal_unbounded && !gap.dual_all_pruned && std::abs(gap.gap) <= 5e-3,
        std::abs(gap.gap));

  for (double x : {1.0, -1.0}) {
    const double coeffs[3] = {1.0, -1.0, 0.0};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      ExtReal s = subdiff_slack(cat.fs[static_cast<std::size_t>(i)], x, 0.0, coeffs[i],
                                cat.closed_conjs[static_cast<std::size_t>(i)]);
      worst = std::max(worst, std::abs(s.as_double()));
    }
    b.add(x > 0 ? "exact-cert-pos" : "exact-cert-neg", kAnchorDuality, worst <= 1e-9, worst,
          "decomposition (1, -1, 0) at eps = 0, x = " + fmt(x));
  }

  for (const auto& cert : gap.eps_ladder_certificates) {
    std::string witness;
    if (cert.certified) {
      witness = "x = " + fmt(cert.x_witness) + ", coefficients (";
      for (std::size_t i = 0; i < cert.decomposition.size(); ++i)
        witness += (i ? ", " : "") + fmt(cert.decomposition[i].a);
      witness += ")";
    }
    b.add("ladder-eps-" + fmt(cert.eps), kAnchorDuality, cert.certified, cert.slack, witness);
  }

  {
    const bool full = gap.certified_depth == static_cast<int>(ladder.size());
    const double min_eps = *std::min_element(ladder.begin(), ladder.end());
    Status s = Status::Fail;
    std::string note;
    if (full && min_eps <= 0.01 + 1e-12) {
      s = Status::Pass;
      note = "certified down to eps = " + fmt(min_eps);
    } else if (full) {
      s = Status::Indeterminate;
      note = "ladder stops at eps = " + fmt(min_eps) +
             "; the all-eps intersection claims stay indeterminate";
    } else {
      note = "certified depth " + std::to_string(gap.certified_depth) + " of " +
             std::to_string(ladder.size());
    }
    b.add_status("ladder-depth", kAnchorDuality, s, static_cast<double>(gap.certified_depth), note);
  }

  {
    GapReport at1 = certify_gap_T36(cat.fs, cat.closed_conjs, cat.sum_conj_oracle, 1.0, ladder, xg,
                                    ag, tol);
    b.add("pointwise-cert-x1", kAnchorDuality, at1.point_is_solution,
          static_cast<double>(at1.certified_depth), "x = 1 certified as a solution");
  }

  {
    const std::array fs23{cat.fs[1], cat.fs[2]};
    const std::array conjs23{cat.closed_conjs[1], cat.closed_conjs[2]};
    const ConjugateFn sc = ConjugateFn::oracle(sum(fs23, "f2+f3"), xg);
    bool primal_unbounded = false;
    try {
      primal_value(fs23, sc, xg);
    } catch (const UnboundedBelow&) {
      primal_unbounded = true;
    }
    const bool pruned = dual_value(conjs23, ag).all_pruned;
    b.add("unbounded-f2f3", kAnchorDuality, primal_unbounded && pruned, 0.0,
          "f2 + f3: primal escape fires and every dual decomposition is pruned");
  }

  {
    const std::array conjs22{cat.closed_conjs[1], cat.closed_conjs[1]};
    b.add("dual-pruned-f2f2", kAnchorDuality, dual_value(conjs22, ag).all_pruned, 0.0);
  }

  // Weak duality on randomized sampled instances.
  {
    std::mt19937_64 rng(42);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const Grid1D sg(-2.0, 2.0, 0.05);
    const Grid1D sa(-10.0, 10.0, 0.1);
    double worst = -HUGE_VAL;
    int checked = 0;
    for (int inst = 0; inst < 20; ++inst) {
      std::array<ExtFunction, 2> fs{example::make_zero(), example::make_zero()};
      for (int k = 0; k < 2; ++k) {
        std::vector<ExtReal> vals(sg.size());
        for (std::size_t j = 0; j < sg.size(); ++j) {
          if (sg[j] != 0.0 && uniform() < 0.1)
            vals[j] = ExtReal::inf();   // keep x = 0 in every domain
          else
            vals[j] = 4 * uniform() - 1;
        }
        fs[static_cast<std::size_t>(k)] =
            ExtFunction::sampled("rand" + std::to_string(inst) + std::to_string(k), sg,
                                 std::move(vals));
      }
      double vp = HUGE_VAL;
      for (double x : sg.points()) {
        ExtReal s = fs[0](x) + fs[1](x);
        if (s.is_finite()) vp = std::min(vp, s.finite());
      }
      const std::array conjs{ConjugateFn::oracle(fs[0], sg), ConjugateFn::oracle(fs[1], sg)};
      DualResult d = dual_value(conjs, sa);
      const double vd = d.all_pruned ? -HUGE_VAL : d.value;
      worst = std::max(worst, vd - vp);
      ++checked;
    }
    b.add("weak-duality-random", kAnchorDuality, checked == 20 && worst <= 1e-9,
          std::max(0.0, worst), "20 sampled two-function instances, seed 42");
  }
}

// ------------------------------------------------------------------ sum rule

void check_sum_rules(Builder& b, const example::Catalog& cat, const Grid1D& ag) {
  {
    InclusionReport rep = check_inclusion_T33(cat.fs, cat.closed_conjs, cat.sum_conj_oracle, 1.0,
                                              0.5, 2.0, ag, 1e-8);
    b.add("inclusion-doubled-eps", kAnchorSumRule, rep.holds && !rep.lhs_empty,
          static_cast<double>(rep.violations.size()), "x = 1, eps = 0.5, K = 2");
  }
  const double etas[2] = {0.1, 0.01};
  for (double eps : {0.0, 0.5}) {
    SumRuleReport rep = check_sum_rule_F2(cat.fs, cat.closed_conjs, cat.sum_conj_oracle, 1.0, eps,
                                          etas, ag, 1e-8);
    std::size_t violations = 0;
    for (const auto& e : rep.entries)
      violations += e.lhs_violations.size() + e.rhs_violations.size();
    b.add("sum-rule-eps-" + fmt(eps), kAnchorSumRule, rep.holds(),
          static_cast<double>(violations), "x = 1, eta in {0.1, 0.01}");
  }
}

// ------------------------------------------------------------ classification

void check_structure(Builder& b, const Grid1D& xg) {
  const ExtFunction twice = ExtFunction::closed_form(
      "2x^2", [](double x) -> ExtReal { return 2 * x * x; });
  const ExtFunction ind = ExtFunction::closed_form("ind0", [](double x) -> ExtReal {
    return x == 0.0 ? ExtReal(0.0) : ExtReal::inf();
  });
  auto c1 = example::classify_L_convex(twice, xg, 1e-9);
  auto c2 = example::classify_L_convex(example::make(Which::f1), xg, 1e-9);
  auto c3 = example::classify_L_convex(ind, xg, 1e-9);
  const bool ok = c1.kind == example::LClassification::Kind::MemberOfL &&
                  std::abs(c1.a - 2.0) <= 1e-9 &&
                  c2.kind == example::LClassification::Kind::NotLConvex &&
                  c3.kind == example::LClassification::Kind::IndicatorOfZero;
  b.add("classify-linear-members", kAnchorStructure, ok, 0.0,
        "2x^2, f1, and the indicator of {0}");

  std::vector<std::pair<double, double>> boundary;
  for (double a = -5.0; a <= -0.5 + 1e-9; a += 0.5) boundary.emplace_back(a, 1.0 / a + 1.0);
  using example::HRegionVerdict;
  const auto certified = example::check_H_convex_region(boundary, 10.0, {true, true}, xg, 1e-6);
  const std::vector<std::pair<double, double>> capped{{1.0, 10.0}};
  const auto capped_v = example::check_H_convex_region(capped, 10.0, {true, true}, xg, 1e-6);
  const auto not_down = example::check_H_convex_region(boundary, 10.0, {false, true}, xg, 1e-6);
  b.add("minorant-region-verdicts", kAnchorStructure,
        certified == HRegionVerdict::HConvexCertified &&
            capped_v == HRegionVerdict::FailsFiniteSup &&
            not_down == HRegionVerdict::FailsDownwardClosed,
        0.0, "boundary of supp f2; a capped column; a non-downward region");
}

// ------------------------------------------------------------- serialization

void write_range(json::Writer& w, const RangeSpec& r) {
  w.begin_object();
  w.field("hi", r.hi).field("lo", r.lo).field("step", r.step);
  w.end_object();
}

void write_config(json::Writer& w, const RunConfig& cfg) {
  w.begin_object();
  w.key("a_grid");
  write_range(w, cfg.a_grid);
  w.key("eps_ladder").begin_array();
  for (double e : cfg.eps_ladder) w.value(e);
  w.end_array();
  w.field("output_format", std::string_view(cfg.output_format));
  w.field("output_path", std::string_view(cfg.output_path));
  w.field("tol", cfg.tol);
  w.key("x_grid");
  write_range(w, cfg.x_grid);
  w.end_object();
}

void write_gap(json::Writer& w, const GapReport& gap) {
  w.begin_object();
  if (gap.theorem36_point) w.field("certificate_point", *gap.theorem36_point);
  w.field("certified_depth", gap.certified_depth);
  w.field("condition_ii_lhs", gap.condition_ii_lhs);
  w.field("condition_ii_rhs", gap.condition_ii_rhs);
  w.field("dual_all_pruned", gap.dual_all_pruned);
  w.key("dual_witness").begin_array();
  for (const auto& l : gap.dual_witness) w.value(l.a);
  w.end_array();
  w.key("eps_ladder").begin_array();
  for (const auto& c : gap.eps_ladder_certificates) {
    w.begin_object();
    w.field("certified", c.certified);
    w.key("decomposition").begin_array();
    for (const auto& l : c.decomposition) w.value(l.a);
    w.end_array();
    w.field("eps", c.eps).field("slack", c.slack).field("x_witness", c.x_witness);
    w.end_object();
  }
  w.end_array();
  w.field("gap", gap.gap);
  if (gap.theorem36_point) w.field("point_is_solution", gap.point_is_solution);
  w.field("primal_argmin", gap.primal_argmin);
  w.field("primal_unbounded", gap.primal_unbounded);
  if (gap.primal_unbounded || gap.dual_all_pruned)
    w.field("reason", std::string_view("unbounded"));
  w.field("v_dual", gap.dual_all_pruned ? -HUGE_VAL : gap.v_dual);
  w.field("v_primal", gap.primal_unbounded ? -HUGE_VAL : gap.v_primal);
  w.end_object();
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Indeterminate: return "indeterminate";
  }
  return "?";
}

}  // namespace

int VerificationReport::count(Status s) const {
  int n = 0;
  for (const auto& r : records)
    if (r.status == s) ++n;
  return n;
}

VerificationReport verify_example(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport rep;
  rep.config = cfg;
  Builder b(rep.records);

  const Grid1D xg = cfg.x_grid.grid();
  const Grid1D ag = cfg.a_grid.grid();
  example::Catalog cat = example::Catalog::make(xg);
  cat.sum_conj_oracle.tabulate(ag);

  std::vector<ConjugateFn> oracles;
  for (const auto& f : cat.fs) oracles.push_back(ConjugateFn::oracle(f, xg));
  for (const auto& o : oracles) o.tabulate(ag);

  b.guarded("conjugates", kAnchorConj,
            [&] { check_conjugates(b, oracles, ag, cfg.tol); });
  b.guarded("biconjugates", kAnchorBiconj,
            [&] { check_biconjugates(b, cat, xg, ag, cfg.tol); });
  b.guarded("cos", kAnchorBiconj, [&] { check_cos_biconjugate(b); });
  b.guarded("fenchel-young", kAnchorFY, [&] { check_fenchel_young(b, cat, xg, ag); });
  b.guarded("support", kAnchorSupport, [&] { check_support(b, cat, xg, ag); });
  b.guarded("subdiff", kAnchorSubdiff, [&] { check_subdifferentials(b, cat, ag); });
  b.guarded("calculus", kAnchorCalc,
            [&] { check_subdiff_calculus(b, cat, xg, ag, cfg.eps_ladder, cfg.tol); });
  b.guarded("duality", kAnchorDuality,
            [&] { check_duality(b, rep.gap, cat, xg, ag, cfg.eps_ladder, cfg.tol); });
  b.guarded("sum-rule", kAnchorSumRule, [&] { check_sum_rules(b, cat, ag); });
  b.guarded("structure", kAnchorStructure, [&] { check_structure(b, xg); });

  b.add("record-count", kAnchorPlumbing, rep.records.size() >= 50,
        static_cast<double>(rep.records.size()));
  return rep;
}

std::string to_json(const VerificationReport& rep) {
  json::Writer w;
  w.begin_object();
  w.key("config");
  write_config(w, rep.config);
  w.key("gap");
  write_gap(w, rep.gap);
  w.key("records").begin_array();
  for (const auto& r : rep.records) {
    w.begin_object();
    w.field("anchor", std::string_view(r.anchor));
    w.field("check_id", std::string_view(r.id));
    w.field("max_error", r.max_error);
    w.field("status", std::string_view(status_name(r.status)));
    w.field("witness", std::string_view(r.witness));
    w.end_object();
  }
  w.end_array();
  w.key("summary").begin_object();
  w.field("fail", rep.count(Status::Fail));
  w.field("indeterminate", rep.count(Status::Indeterminate));
  w.field("pass", rep.count(Status::Pass));
  w.end_object();
  w.end_object();
  return w.take();
}

std::string gap_to_json(const GapReport& gap, const RunConfig& cfg) {
  json::Writer w;
  w.begin_object();
  w.key("config");
  write_config(w, cfg);
  w.key("gap");
  write_gap(w, gap);
  w.end_object();
  return w.take();
}

void write_plot_data(const std::filesystem::path& dir, const RunConfig& cfg) {
  std::filesystem::create_directories(dir);
  const Grid1D xg = cfg.x_grid.grid();
  const Grid1D ag = cfg.a_grid.grid();
  example::Catalog cat = example::Catalog::make(xg);
  const ExtFunction fsum = sum(cat.fs, "f1+f2+f3");

  std::vector<ExtReal> vals(xg.size());
  for (std::size_t i = 0; i < xg.size(); ++i) vals[i] = fsum(xg[i]);
  io::save_sampled_csv(dir / "objective.csv", xg, vals);

  for (int i = 0; i < 3; ++i) {
    std::ostringstream out;
    out << "a,b_max\n";
    for (double a : ag.points()) {
      ExtReal c = example::closed_conjugate(static_cast<Which>(i), a);
      if (c.is_inf()) continue;
      out << fmt(a) << ',' << fmt(-c.finite()) << '\n';
    }
    io::atomic_write(dir / ("support_boundary_f" + std::to_string(i + 1) + ".csv"), out.str());
  }
}

}  // namespace abconvex::report
