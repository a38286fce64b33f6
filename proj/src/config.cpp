#include "abconvex/config.hpp"

#include <charconv>
#include <cmath>

#include "abconvex/errors.hpp"

namespace abconvex {

std::vector<double> RangeSpec::points() const {
  if (!(step > 0)) throw ConfigError("range: step must be positive");
  if (lo > hi) throw ConfigError("range: lo exceeds hi");
  if (lo == hi) return {lo};
  return Grid1D(lo, hi, step).points();
}

Grid1D RangeSpec::grid() const { return Grid1D(lo, hi, step); }

RangeSpec parse_range(const std::string& text) {
  RangeSpec spec;
  std::array<double*, 3> slots{&spec.lo, &spec.hi, &spec.step};
  std::size_t begin = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = (i < 2) ? text.find(':', begin) : text.size();
    if (end == std::string::npos) throw ConfigError("range: expected lo:hi:step, got '" + text + "'");
    try {
      std::size_t used = 0;
      const std::string part = text.substr(begin, end - begin);
      *slots[static_cast<std::size_t>(i)] = std::stod(part, &used);
      if (used != part.size()) throw ConfigError("range: trailing characters in '" + part + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError("range: not a number in '" + text + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError("range: number out of range in '" + text + "'");
    }
    begin = end + 1;
  }
  if (!(spec.step > 0) || spec.lo > spec.hi) throw ConfigError("range: need lo <= hi and step > 0");
  return spec;
}

void RunConfig::validate() const {
  if (!(tol > 0)) throw ConfigError("config: tol must be positive");
  if (!(x_grid.step > 0) || !(a_grid.step > 0)) throw ConfigError("config: steps must be positive");
  if (!(x_grid.lo < x_grid.hi) || !(a_grid.lo < a_grid.hi))
    throw ConfigError("config: grids need lo < hi");
  if (eps_ladder.empty()) throw ConfigError("config: eps ladder is empty");
  double prev = HUGE_VAL;
  for (double e : eps_ladder) {
    if (!(e > 0) || !(e < prev)) throw ConfigError("config: eps ladder must be strictly decreasing and positive");
    prev = e;
  }
  if (output_format != "json" && output_format != "csv")
    throw ConfigError("config: output format must be json or csv");
}

}  // namespace abconvex
