#include "abconvex/duality.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "abconvex/errors.hpp"

namespace abconvex {

PrimalResult primal_value(std::span<const ExtFunction> fs, const ConjugateFn& sum_conj,
                          const Grid1D& x_grid) {
  const ExtFunction fsum = sum(fs);
  bool any = false;
  PrimalResult res;
  for (double x : x_grid.points()) {
    ExtReal v = fsum(x);
    if (v.is_inf()) continue;
    if (!any || v.finite() < res.value) {
      res.value = v.finite();
      res.argmin = x;
      any = true;
    }
  }
  if (!any) throw EmptyIntersection("primal_value: domains do not intersect on the grid");

  // Escape test on the negated sum: unbounded below <=> sup(-sum) = +inf.
  auto negated = [&](double x) -> std::optional<double> {
    ExtReal v = fsum(x);
    if (v.is_inf()) return std::nullopt;
    return -v.finite();
  };
  if (grid_sup(negated, x_grid, {.escape = true}).unbounded)
    throw UnboundedBelow("primal_value: escape test fired on the negated sum");

  ExtReal c0 = sum_conj(0.0);
  if (c0.is_inf()) throw UnboundedBelow("primal_value: (sum f)*(0) = +inf");
  res.conjugate_route = -c0.finite();
  return res;
}

DualResult dual_value(std::span<const ConjugateFn> conjs, const Grid1D& a_grid) {
  InfConvResult ic = inf_convolution(conjs, QuadLinear{0.0}, a_grid);
  DualResult res;
  if (ic.value.is_inf()) {
    res.all_pruned = true;
    return res;
  }
  res.value = -ic.value.finite();
  res.witness = std::move(ic.witness);
  return res;
}

namespace {

// Worst component slack of a candidate decomposition; nullopt when some
// membership fails outright (slack above tol or +inf).
std::optional<double> decomposition_slack(std::span<const ExtFunction> fs,
                                          std::span<const ConjugateFn> conjs, double x,
                                          double eps_each, std::span<const QuadLinear> ls,
                                          double tol) {
  double worst = -HUGE_VAL;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    ExtReal s = subdiff_slack(fs[i], x, eps_each, ls[i].a, conjs[i]);
    if (s.is_inf() || s.finite() > tol) return std::nullopt;
    worst = std::max(worst, s.finite());
  }
  return worst;
}

std::optional<LadderCertificate> search_at_point(std::span<const ExtFunction> fs,
                                                 std::span<const ConjugateFn> conjs, double x,
                                                 double eps, const Grid1D& a_grid, double tol,
                                                 std::span<const QuadLinear> seed) {
  const std::size_t m = fs.size();
  const double eps_each = eps / static_cast<double>(m);
  auto make_cert = [&](std::span<const QuadLinear> ls, double slack) {
    LadderCertificate cert;
    cert.eps = eps;
    cert.certified = true;
    cert.x_witness = x;
    cert.decomposition.assign(ls.begin(), ls.end());
    cert.slack = slack;
    return cert;
  };

  // The infimal-convolution minimizer is the natural first candidate.
  if (seed.size() == m) {
    if (auto s = decomposition_slack(fs, conjs, x, eps_each, seed, tol)) return make_cert(seed, *s);
  }

  std::vector<SubdiffSet> sets(m);
  for (std::size_t i = 0; i + 1 < m; ++i)
    sets[i] = subdiff_enumerate(fs[i], x, eps_each, a_grid, conjs[i], tol);
  std::array<QuadLinear, 3> ls{};
  if (m == 2) {
    for (double a1 : sets[0].members) {
      ls = {QuadLinear{a1}, QuadLinear{-a1}};
      if (auto s = decomposition_slack(fs, conjs, x, eps_each, {ls.data(), 2}, tol))
        return make_cert({ls.data(), 2}, *s);
    }
  } else {
    for (double a1 : sets[0].members)
      for (double a2 : sets[1].members) {
        ls = {QuadLinear{a1}, QuadLinear{a2}, QuadLinear{-a1 - a2}};
        if (auto s = decomposition_slack(fs, conjs, x, eps_each, {ls.data(), 3}, tol))
          return make_cert({ls.data(), 3}, *s);
      }
  }
  return std::nullopt;
}

void fill_values(GapReport& report, std::span<const ExtFunction> fs,
                 std::span<const ConjugateFn> conjs, const ConjugateFn& sum_conj,
                 const Grid1D& x_grid, const Grid1D& a_grid) {
  try {
    PrimalResult p = primal_value(fs, sum_conj, x_grid);
    report.v_primal = p.value;
    report.primal_argmin = p.argmin;
  } catch (const UnboundedBelow&) {
    report.primal_unbounded = true;
  }
  DualResult d = dual_value(conjs, a_grid);
  report.dual_all_pruned = d.all_pruned;
  if (!d.all_pruned) {
    report.v_dual = d.value;
    report.dual_witness = d.witness;
  }
  if (!report.primal_unbounded && !report.dual_all_pruned)
    report.gap = report.v_primal - report.v_dual;

  ExtReal lhs = sum_conj(0.0);
  report.condition_ii_lhs = lhs.as_double();
  InfConvResult ic = inf_convolution(conjs, QuadLinear{0.0}, a_grid);
  report.condition_ii_rhs = ic.value.as_double();
}

void update_depth(GapReport& report) {
  report.certified_depth = 0;
  for (const auto& cert : report.eps_ladder_certificates) {
    if (!cert.certified) break;
    ++report.certified_depth;
  }
}

}  // namespace

GapReport certify_gap_T35(std::span<const ExtFunction> fs, std::span<const ConjugateFn> conjs,
                          const ConjugateFn& sum_conj, std::span<const double> eps_ladder,
                          const Grid1D& x_grid, const Grid1D& a_grid, double tol) {
  GapReport report;
  fill_values(report, fs, conjs, sum_conj, x_grid, a_grid);

  for (double eps : eps_ladder) {
    std::optional<LadderCertificate> cert;
    // Candidate order: the primal argmin, then the full grid sweep.
    if (!report.primal_unbounded)
      cert = search_at_point(fs, conjs, report.primal_argmin, eps, a_grid, tol,
                             report.dual_witness);
    if (!cert) {
      for (double x : x_grid.points()) {
        cert = search_at_point(fs, conjs, x, eps, a_grid, tol, report.dual_witness);
        if (cert) break;
      }
    }
    if (cert) {
      report.eps_ladder_certificates.push_back(std::move(*cert));
    } else {
      LadderCertificate missing;
      missing.eps = eps;
      report.eps_ladder_certificates.push_back(missing);
    }
  }
  update_depth(report);
  return report;
}

GapReport certify_gap_T36(std::span<const ExtFunction> fs, std::span<const ConjugateFn> conjs,
                          const ConjugateFn& sum_conj, double x, std::span<const double> eps_ladder,
                          const Grid1D& x_grid, const Grid1D& a_grid, double tol) {
  GapReport report;
  fill_values(report, fs, conjs, sum_conj, x_grid, a_grid);
  report.theorem36_point = x;

  for (double eps : eps_ladder) {
    auto cert = search_at_point(fs, conjs, x, eps, a_grid, tol, report.dual_witness);
    if (cert) {
      report.eps_ladder_certificates.push_back(std::move(*cert));
    } else {
      LadderCertificate missing;
      missing.eps = eps;
      missing.x_witness = x;
      report.eps_ladder_certificates.push_back(missing);
    }
  }
  update_depth(report);

  if (report.certified_depth == static_cast<int>(eps_ladder.size()) && !report.primal_unbounded) {
    const ExtFunction fsum = sum(fs);
    ExtReal at_x = fsum(x);
    report.point_is_solution = at_x.is_finite() &&
                               std::abs(at_x.finite() - report.v_primal) <= tol &&
                               std::abs(report.condition_ii_lhs - report.condition_ii_rhs) <= tol;
  }
  return report;
}

}  // namespace abconvex
