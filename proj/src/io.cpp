#include "abconvex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "abconvex/errors.hpp"
#include "abconvex/json_writer.hpp"

namespace abconvex::io {

namespace {

std::string trim(std::string s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, const std::filesystem::path& path, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DataError(path.string() + ":" + std::to_string(line) + ": bad number '" + text + "'");
  }
}

}  // namespace

ExtFunction load_sampled_csv(const std::filesystem::path& path, std::string name) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || trim(line) != "x,value")
    throw DataError(path.string() + ": expected header 'x,value'");

  std::vector<double> xs;
  std::vector<ExtReal> vals;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected 'x,value'");
    xs.push_back(parse_number(trim(line.substr(0, comma)), path, lineno));
    const std::string vtext = trim(line.substr(comma + 1));
    if (vtext == "inf")
      vals.push_back(ExtReal::inf());
    else
      vals.push_back(parse_number(vtext, path, lineno));
  }
  if (xs.size() < 2) throw DataError(path.string() + ": need at least two samples");

  const double step = xs[1] - xs[0];
  if (!(step > 0)) throw DataError(path.string() + ": x column must be strictly increasing");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d = xs[i] - xs[i - 1];
    if (std::abs(d - step) > 1e-9 * std::max(1.0, std::abs(step)))
      throw DataError(path.string() + ": x column is not a uniform lattice near x=" +
                      std::to_string(xs[i]));
  }

  Grid1D grid(xs.front(), xs.back(), step);
  if (grid.size() != xs.size()) {
    // The lattice crossed zero off-grid and an exact 0 was inserted;
    // duplicate the nearest value for it.
    std::vector<ExtReal> adjusted;
    adjusted.reserve(grid.size());
    for (double x : grid.points()) {
      const std::size_t i = static_cast<std::size_t>(std::llround((x - xs.front()) / step));
      adjusted.push_back(vals[std::min(i, vals.size() - 1)]);
    }
    vals = std::move(adjusted);
  }
  return ExtFunction::sampled(std::move(name), std::move(grid), std::move(vals));
}

void save_sampled_csv(const std::filesystem::path& path, const Grid1D& grid,
                      std::span<const ExtReal> values) {
  if (grid.size() != values.size()) throw DataError("save_sampled_csv: size mismatch");
  std::ostringstream out;
  out << "x,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", grid[i]);
    out << buf << ',';
    if (values[i].is_inf())
      out << "inf";
    else {
      std::snprintf(buf, sizeof buf, "%.9g", values[i].finite());
      out << buf;
    }
    out << '\n';
  }
  atomic_write(path, out.str());
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace abconvex::io
