#include "abconvex/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "abconvex/errors.hpp"

namespace abconvex {

ExtReal subdiff_slack(const ExtFunction& f, double x, double eps, double a,
                      const ConjugateFn& conj) {
  ExtReal fx = f(x);
  if (fx.is_inf()) return ExtReal::inf();
  ExtReal fstar = conj(a);
  if (fstar.is_inf()) return ExtReal::inf();
  return ExtReal(fstar.finite() + fx.finite() - a * x * x - eps);
}

bool subdiff_contains(const ExtFunction& f, double x, double eps, QuadLinear l,
                      const ConjugateFn& conj, double tol) {
  ExtReal s = subdiff_slack(f, x, eps, l.a, conj);
  return s.is_finite() && s.finite() <= tol;
}

SubdiffSet subdiff_enumerate(const ExtFunction& f, double x, double eps, const Grid1D& a_grid,
                             const ConjugateFn& conj, double tol) {
  SubdiffSet out;
  if (f(x).is_inf()) {
    out.emptiness_certified = true;   // empty by definition outside dom f
    return out;
  }
  double min_slack = HUGE_VAL;
  for (double a : a_grid.points()) {
    ExtReal s = subdiff_slack(f, x, eps, a, conj);
    if (s.is_inf()) continue;
    min_slack = std::min(min_slack, s.finite());
    if (s.finite() <= tol) out.members.push_back(a);
  }
  if (out.members.empty() && min_slack > tol) out.emptiness_certified = true;
  return out;
}

std::vector<double> domain_map(const ExtFunction& f, double eps, const Grid1D& x_grid,
                               const Grid1D& a_grid, const ConjugateFn& conj, double tol) {
  std::vector<double> out;
  for (double x : x_grid.points()) {
    if (f(x).is_inf()) continue;
    for (double a : a_grid.points()) {
      if (subdiff_contains(f, x, eps, {a}, conj, tol)) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

namespace {

std::vector<double> dedup_at_resolution(std::set<long long>& keys, double res) {
  std::vector<double> out;
  out.reserve(keys.size());
  for (long long k : keys) out.push_back(static_cast<double>(k) * res);
  return out;
}

}  // namespace

std::vector<double> minkowski_sum_subdiffs(std::span<const SubdiffSet> sets, double a_resolution) {
  if (sets.empty()) return {};
  for (const auto& s : sets)
    if (s.empty()) return {};
  std::set<long long> acc;
  for (double a : sets[0].members) acc.insert(std::llround(a / a_resolution));
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::set<long long> next;
    for (long long k : acc)
      for (double a : sets[i].members) next.insert(k + std::llround(a / a_resolution));
    acc.swap(next);
  }
  return dedup_at_resolution(acc, a_resolution);
}

namespace {

// Inclusion of lhs in rhs as subsets of the coefficient axis, dilated by
// dist: every lhs element must be within dist of some rhs element.
void check_one_sided(std::span<const double> lhs, std::span<const double> rhs, double dist,
                     std::vector<double>& violations) {
  for (double a : lhs) {
    bool found = false;
    for (double b : rhs) {
      if (std::abs(a - b) <= dist) {
        found = true;
        break;
      }
    }
    if (!found) violations.push_back(a);
  }
}

}  // namespace

InclusionReport check_inclusion_T33(std::span<const ExtFunction> fs,
                                    std::span<const ConjugateFn> conjs,
                                    const ConjugateFn& sum_conj, double x, double eps, double K,
                                    const Grid1D& a_grid, double tol) {
  if (!(K > 1)) throw ConfigError("check_inclusion_T33: K must exceed 1");
  const ExtFunction fsum = sum(fs);
  InclusionReport report;
  SubdiffSet lhs = subdiff_enumerate(fsum, x, eps, a_grid, sum_conj, tol);
  report.lhs = lhs.members;
  report.lhs_empty = lhs.empty();
  if (lhs.empty()) return report;   // holds vacuously

  std::vector<SubdiffSet> parts;
  parts.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    parts.push_back(subdiff_enumerate(fs[i], x, K * eps, a_grid, conjs[i], tol));
  report.rhs = minkowski_sum_subdiffs(parts, a_grid.step());
  check_one_sided(report.lhs, report.rhs, a_grid.step() * (1 + 1e-9), report.violations);
  report.holds = report.violations.empty();
  return report;
}

SumRuleReport check_sum_rule_F2(std::span<const ExtFunction> fs,
                                std::span<const ConjugateFn> conjs, const ConjugateFn& sum_conj,
                                double x, double eps, std::span<const double> eta_ladder,
                                const Grid1D& a_grid, double tol, int simplex_subdivisions) {
  for (const auto& f : fs)
    if (f(x).is_inf()) throw EmptyIntersection("check_sum_rule_F2: x outside some domain");
  const ExtFunction fsum = sum(fs);
  const std::size_t m = fs.size();
  const double dilation = a_grid.step() * (1 + 1e-9);

  SumRuleReport report;
  const SubdiffSet lhs = subdiff_enumerate(fsum, x, eps, a_grid, sum_conj, tol);
  for (double eta : eta_ladder) {
    SumRuleReport::PerEta entry{eta};
    // The simplex union at level eps + eta sits between the two
    // subdifferentials of the sum: it contains the eps one and is contained
    // in the (eps + eta) one. Both sides are tested against their own bound.
    SubdiffSet lhs_relaxed = subdiff_enumerate(fsum, x, eps + eta, a_grid, sum_conj, tol);

    // Union over the simplex of eps splits.
    std::set<long long> rhs_keys;
    const int n = simplex_subdivisions;
    const double total = eps + eta;
    auto add_split = [&](std::span<const double> eps_parts) {
      std::vector<SubdiffSet> parts(m);
      for (std::size_t i = 0; i < m; ++i)
        parts[i] = subdiff_enumerate(fs[i], x, eps_parts[i], a_grid, conjs[i], tol);
      for (double a : minkowski_sum_subdiffs(parts, a_grid.step()))
        rhs_keys.insert(std::llround(a / a_grid.step()));
    };
    if (m == 2) {
      for (int i = 0; i <= n; ++i) {
        const double parts[2] = {total * i / n, total * (n - i) / n};
        add_split(parts);
      }
    } else {
      for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
          const double parts[3] = {total * i / n, total * j / n, total * (n - i - j) / n};
          add_split(parts);
        }
    }
    std::vector<double> rhs;
    rhs.reserve(rhs_keys.size());
    for (long long k : rhs_keys) rhs.push_back(static_cast<double>(k) * a_grid.step());

    check_one_sided(lhs.members, rhs, dilation, entry.lhs_violations);
    check_one_sided(rhs, lhs_relaxed.members, dilation, entry.rhs_violations);
    entry.lhs_in_rhs = entry.lhs_violations.empty();
    entry.rhs_in_lhs = entry.rhs_violations.empty();
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace abconvex
