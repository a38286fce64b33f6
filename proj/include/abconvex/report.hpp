#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "abconvex/config.hpp"
#include "abconvex/duality.hpp"
#include "abconvex/example.hpp"

namespace abconvex::report {

enum class Status { Pass, Fail, Indeterminate };

// One verification record. The anchor names the mathematical fact being
// checked (or "plumbing" for artifact-internal checks).
struct CheckRecord {
  std::string id;
  std::string anchor;
  Status status = Status::Fail;
  double max_error = 0.0;
  std::string witness;
};

struct VerificationReport {
  RunConfig config;
  std::vector<CheckRecord> records;
  GapReport gap;

  int count(Status s) const;
  // Exit-code predicate: no failing record (indeterminate records are
  // reported but do not fail the run).
  bool all_pass() const { return count(Status::Fail) == 0; }
};

// Runs the whole verification suite for the worked problem on the grids in
// the config: conjugate closed forms, biconjugates, support sets,
// subdifferentials, sum rules, and the duality-gap certification.
VerificationReport verify_example(const RunConfig& cfg);

// Deterministic JSON: keys emitted sorted, floats at 9 significant digits.
std::string to_json(const VerificationReport& rep);
std::string gap_to_json(const GapReport& gap, const RunConfig& cfg);

// Plot data: objective.csv (the summed objective over the x grid) and
// support_boundary_f{1,2,3}.csv (upper boundaries b_max(a) = -f*(a)).
void write_plot_data(const std::filesystem::path& dir, const RunConfig& cfg);

}  // namespace abconvex::report
