#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "abconvex/config.hpp"
#include "abconvex/duality.hpp"
#include "abconvex/errors.hpp"
#include "abconvex/example.hpp"
#include "abconvex/io.hpp"
#include "abconvex/json_writer.hpp"
#include "abconvex/report.hpp"

namespace {

using namespace abconvex;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output_path.empty())
    std::cout << content;
  else
    io::atomic_write(cfg.output_path, content);
}

std::optional<example::Which> builtin(const std::string& name) {
  if (name == "f1") return example::Which::f1;
  if (name == "f2") return example::Which::f2;
  if (name == "f3") return example::Which::f3;
  return std::nullopt;
}

// A named function plus its conjugate: closed form for the built-ins, an
// oracle over the sample lattice for CSV inputs.
struct Problem {
  ExtFunction f;
  ConjugateFn conj;
};

Problem resolve_function(const std::string& name, const Grid1D& xg) {
  if (auto w = builtin(name)) {
    ExtFunction f = example::make(*w);
    auto which = *w;
    return {f, ConjugateFn::closed_form(name + "*", [which](double a) {
              return example::closed_conjugate(which, a);
            })};
  }
  ExtFunction f = io::load_sampled_csv(name, std::filesystem::path(name).stem().string());
  ConjugateFn conj = ConjugateFn::oracle(f, *f.sample_grid());
  return {f, conj};
}

int cmd_conjugate(const std::string& fn_name, const RangeSpec& a_range, const RunConfig& cfg) {
  const Grid1D xg = cfg.x_grid.grid();
  Problem p = resolve_function(fn_name, xg);
  const auto w = builtin(fn_name);
  const ConjugateFn oracle =
      w ? ConjugateFn::oracle(p.f, xg) : p.conj;   // built-ins: closed form vs oracle

  const auto as = a_range.points();
  if (cfg.output_format == "csv") {
    std::string out = "a,oracle_value,closed_form_value,abs_error\n";
    for (double a : as) {
      ExtReal o = oracle(a), c = p.conj(a);
      const bool both = o.is_finite() && c.is_finite();
      out += fmt(a) + ',' + (o.is_inf() ? "inf" : fmt(o.finite())) + ',' +
             (c.is_inf() ? "inf" : fmt(c.finite())) + ',' +
             (both ? fmt(std::abs(o.finite() - c.finite())) : "inf") + '\n';
    }
    emit(cfg, out);
    return kExitOk;
  }
  json::Writer jw;
  jw.begin_object();
  jw.field("function", std::string_view(fn_name));
  jw.key("rows").begin_array();
  for (double a : as) {
    ExtReal o = oracle(a), c = p.conj(a);
    jw.begin_object();
    jw.field("a", a);
    jw.key("abs_error");
    if (o.is_finite() && c.is_finite())
      jw.value(std::abs(o.finite() - c.finite()));
    else
      jw.value(HUGE_VAL);
    jw.field("closed_form_value", c).field("oracle_value", o);
    jw.end_object();
  }
  jw.end_array().end_object();
  emit(cfg, jw.take());
  return kExitOk;
}

int cmd_subdiff(const std::string& fn_name, double x, double eps, const RunConfig& cfg) {
  const Grid1D xg = cfg.x_grid.grid();
  const Grid1D ag = cfg.a_grid.grid();
  Problem p = resolve_function(fn_name, xg);
  SubdiffSet set = subdiff_enumerate(p.f, x, eps, ag, p.conj, 1e-9);
  json::Writer jw;
  jw.begin_object();
  jw.field("emptiness_certified", set.emptiness_certified);
  jw.field("eps", eps).field("function", std::string_view(fn_name));
  jw.key("members").begin_array();
  for (double a : set.members) jw.value(a);
  jw.end_array();
  jw.field("x", x);
  jw.end_object();
  emit(cfg, jw.take());
  return kExitOk;   // an empty set is a result, not an error
}

int cmd_gap_check(const std::string& problem, std::optional<double> at, const RunConfig& cfg) {
  const Grid1D xg = cfg.x_grid.grid();
  const Grid1D ag = cfg.a_grid.grid();

  std::vector<ExtFunction> fs;
  std::vector<ConjugateFn> conjs;
  if (problem == "example") {
    example::Catalog cat = example::Catalog::make(xg);
    fs = cat.fs;
    conjs = cat.closed_conjs;
  } else if (problem == "f2f3") {
    for (const char* n : {"f2", "f3"}) {
      Problem p = resolve_function(n, xg);
      fs.push_back(p.f);
      conjs.push_back(p.conj);
    }
  } else {
    // comma-separated CSV files
    std::size_t begin = 0;
    while (begin <= problem.size()) {
      const std::size_t end = problem.find(',', begin);
      const std::string part =
          problem.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
      if (!part.empty()) {
        Problem p = resolve_function(part, xg);
        fs.push_back(p.f);
        conjs.push_back(p.conj);
      }
      if (end == std::string::npos) break;
      begin = end + 1;
    }
    if (fs.size() < 2 || fs.size() > 3)
      throw ConfigError("gap-check: need 2 or 3 functions, got " + std::to_string(fs.size()));
  }

  const ConjugateFn sum_conj = ConjugateFn::oracle(sum(fs), fs[0].is_sampled()
                                                                ? *fs[0].sample_grid()
                                                                : xg);
  GapReport gap = at ? certify_gap_T36(fs, conjs, sum_conj, *at, cfg.eps_ladder, xg, ag, cfg.tol)
                     : certify_gap_T35(fs, conjs, sum_conj, cfg.eps_ladder, xg, ag, cfg.tol);
  emit(cfg, report::gap_to_json(gap, cfg));

  const bool certified = gap.certified_depth == static_cast<int>(cfg.eps_ladder.size()) &&
                         (!at || gap.point_is_solution);
  const bool ok = !gap.primal_unbounded && !gap.dual_all_pruned &&
                  std::abs(gap.gap) <= cfg.tol && certified;
  return ok ? kExitOk : kExitCheckFailure;
}

int cmd_verify_example(const RunConfig& cfg, const std::string& plot_dir) {
  report::VerificationReport rep = report::verify_example(cfg);
  emit(cfg, report::to_json(rep));
  if (!plot_dir.empty()) report::write_plot_data(plot_dir, cfg);
  return rep.all_pass() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for conjugates, subdifferentials, and duality-gap "
               "certification over the quadratic minorant family a*x^2 + b"};
  app.require_subcommand(1);
  app.fallthrough();   // shared options may appear after the subcommand

  RunConfig cfg;
  std::string x_spec = "-3:3:0.001", a_spec = "-10:10:0.01";
  app.add_option("--x-grid", x_spec, "x lattice as lo:hi:step");
  app.add_option("--a-grid", a_spec, "coefficient lattice as lo:hi:step");
  app.add_option("--eps-ladder", cfg.eps_ladder, "strictly decreasing eps values");
  app.add_option("--tol", cfg.tol, "comparison tolerance");
  app.add_option("--output", cfg.output_path, "output file (default stdout)");
  app.add_option("--format", cfg.output_format, "json or csv");

  auto* conj = app.add_subcommand("conjugate", "Tabulate a conjugate against its closed form");
  std::string fn_name;
  std::string a_range_spec = "-10:10:0.01";
  conj->add_option("--function", fn_name, "f1, f2, f3, or a sampled CSV file")->required();
  conj->add_option("--a", a_range_spec, "coefficient range lo:hi:step");

  auto* sub = app.add_subcommand("subdiff", "Enumerate an eps-subdifferential");
  double x = 0.0, eps = 0.0;
  sub->add_option("--function", fn_name, "f1, f2, f3, or a sampled CSV file")->required();
  sub->add_option("--x", x, "evaluation point")->required();
  sub->add_option("--eps", eps, "eps >= 0");

  auto* gapc = app.add_subcommand("gap-check", "Certify the duality gap of a problem");
  std::string problem = "example";
  std::optional<double> at;
  gapc->add_option("--problem", problem, "example, f2f3, or comma-separated CSV files");
  gapc->add_option("--at", at, "certify every rung at this point");

  auto* verify = app.add_subcommand("verify-example", "Run the full verification suite");
  std::string plot_dir;
  verify->add_option("--plot-dir", plot_dir, "also emit plot-data CSVs into this directory");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.x_grid = parse_range(x_spec);
    cfg.a_grid = parse_range(a_spec);
    RangeSpec a_range = parse_range(a_range_spec);
    if (!(cfg.x_grid.lo < cfg.x_grid.hi) || !(cfg.a_grid.lo < cfg.a_grid.hi))
      throw ConfigError("--x-grid and --a-grid need lo < hi");
    {
      // Everything except the degenerate-range allowance of --a.
      RunConfig probe = cfg;
      probe.validate();
    }
    if (conj->parsed()) return cmd_conjugate(fn_name, a_range, cfg);
    if (sub->parsed()) {
      if (eps < 0) throw ConfigError("--eps must be nonnegative");
      return cmd_subdiff(fn_name, x, eps, cfg);
    }
    if (gapc->parsed()) return cmd_gap_check(problem, at, cfg);
    if (verify->parsed()) return cmd_verify_example(cfg, plot_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const EmptyDomain& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
  return kExitConfigError;
}
