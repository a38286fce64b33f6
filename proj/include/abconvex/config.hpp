#pragma once

#include <string>
#include <vector>

#include "abconvex/grid.hpp"

namespace abconvex {

// lo:hi:step range. Unlike Grid1D, lo == hi is allowed (a single point),
// which the CLI uses for spot queries.
struct RangeSpec {
  double lo = 0.0, hi = 0.0, step = 1.0;
  std::vector<double> points() const;
  Grid1D grid() const;   // requires lo < hi
};

RangeSpec parse_range(const std::string& text);

struct RunConfig {
  RangeSpec x_grid{-3.0, 3.0, 1e-3};
  RangeSpec a_grid{-10.0, 10.0, 0.01};
  std::vector<double> eps_ladder{1.0, 0.3, 0.1, 0.03, 0.01};
  double tol = 5e-3;
  std::string output_path;          // empty: stdout
  std::string output_format = "json";

  void validate() const;            // throws ConfigError
};

}  // namespace abconvex
