#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "abconvex/io.hpp"
#include "abconvex/json_writer.hpp"

using namespace abconvex;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("abconvex_io_" + name);
  fs::remove(p);
  return p;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("csv ingest: samples, inf entries, and round trip") {
  const fs::path p = scratch("ok.csv");
  write_file(p, "x,value\n-1,2\n-0.5,inf\n0,0\n0.5,-1.5\n1,3\n");
  ExtFunction f = io::load_sampled_csv(p, "probe");
  CHECK(f.is_sampled());
  CHECK(f(0.0).finite() == 0.0);
  CHECK(f(-0.5).is_inf());
  CHECK(f(0.49).finite() == -1.5);   // nearest-lattice lookup

  const fs::path q = scratch("roundtrip.csv");
  const Grid1D& g = *f.sample_grid();
  std::vector<ExtReal> vals;
  for (double x : g.points()) vals.push_back(f(x));
  io::save_sampled_csv(q, g, vals);
  ExtFunction f2 = io::load_sampled_csv(q, "probe2");
  for (double x : g.points()) CHECK(f(x) == f2(x));
  CHECK_FALSE(fs::exists(q.string() + ".tmp"));
}

TEST_CASE("csv ingest: malformed inputs throw DataError") {
  const fs::path bad_header = scratch("h.csv");
  write_file(bad_header, "a,b\n0,1\n");
  CHECK_THROWS_AS((void)io::load_sampled_csv(bad_header, "x"), DataError);

  const fs::path nonuniform = scratch("nu.csv");
  write_file(nonuniform, "x,value\n0,1\n0.1,1\n0.3,1\n");
  CHECK_THROWS_AS((void)io::load_sampled_csv(nonuniform, "x"), DataError);

  const fs::path bad_number = scratch("bn.csv");
  write_file(bad_number, "x,value\n0,one\n0.1,2\n");
  CHECK_THROWS_AS((void)io::load_sampled_csv(bad_number, "x"), DataError);

  CHECK_THROWS_AS((void)io::load_sampled_csv(scratch("missing.csv"), "x"), DataError);
}

TEST_CASE("json writer: deterministic layout with inf handling") {
  json::Writer w;
  w.begin_object();
  w.field("alpha", 0.1);
  w.key("beta").begin_array().value(ExtReal::inf()).value(1).value(false).end_array();
  w.field("gamma", std::string_view("a \"quoted\" name"));
  w.end_object();
  const std::string got = w.take();
  const std::string want =
      "{\n"
      "  \"alpha\": 0.1,\n"
      "  \"beta\": [\n"
      "    \"inf\",\n"
      "    1,\n"
      "    false\n"
      "  ],\n"
      "  \"gamma\": \"a \\\"quoted\\\" name\"\n"
      "}\n";
  CHECK(got == want);
  CHECK(json::fmt_double(1.0 / 3.0) == "0.333333333");
}
