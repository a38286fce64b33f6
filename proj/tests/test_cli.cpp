#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("abconvex_cli_" + name);
  fs::remove(p);
  return p;
}

int run(const std::string& args, const fs::path& out) {
  const std::string cmd =
      std::string(ABCONVEX_CLI_PATH) + " " + args + " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kCoarse = "--x-grid=-3:3:0.01 --tol 0.02";

}  // namespace

TEST_CASE("cli: configuration and data errors map to distinct exit codes") {
  const fs::path out = scratch("err.txt");
  CHECK(run("conjugate --function f1 --a=bad", out) == 2);
  CHECK(run("conjugate --function f1 --a=0:1:-0.5", out) == 2);
  CHECK(run("conjugate --function /nonexistent_function.csv --a=-2:-2:1", out) == 3);
  CHECK(run("subdiff --function f1 --x 0 --eps -1 " + kCoarse, out) == 2);
}

TEST_CASE("cli: conjugate table golden row") {
  const fs::path out = scratch("conj.csv");
  REQUIRE(run("conjugate --function f3 --a=-2:-2:1 --format csv", out) == 0);
  CHECK(slurp(out) ==
        "a,oracle_value,closed_form_value,abs_error\n"
        "-2,-0.5,-0.5,0\n");
}

TEST_CASE("cli: empty subdifferential is a successful result") {
  const fs::path out = scratch("subdiff.json");
  REQUIRE(run("subdiff --function f2 --x 0 --eps 0 " + kCoarse, out) == 0);
  const std::string got = slurp(out);
  CHECK(got.find("\"emptiness_certified\": true") != std::string::npos);
  CHECK(got.find("\"x\": 0") != std::string::npos);
}

TEST_CASE("cli: gap-check certifies the optimum and rejects elsewhere") {
  const fs::path out = scratch("gap.json");
  CHECK(run("gap-check --problem example --at 1 " + kCoarse, out) == 0);
  CHECK(slurp(out).find("\"point_is_solution\": true") != std::string::npos);

  CHECK(run("gap-check --problem example --at 0 " + kCoarse, out) == 1);
  CHECK(slurp(out).find("\"point_is_solution\": false") != std::string::npos);
}

TEST_CASE("cli: unbounded problem reports the reason and fails") {
  const fs::path out = scratch("unbounded.json");
  CHECK(run("gap-check --problem f2f3 " + kCoarse, out) == 1);
  const std::string got = slurp(out);
  CHECK(got.find("\"reason\": \"unbounded\"") != std::string::npos);
  CHECK(got.find("\"primal_unbounded\": true") != std::string::npos);
}

TEST_CASE("cli: identical invocations produce identical bytes") {
  const fs::path a = scratch("det_a.json"), b = scratch("det_b.json");
  const std::string args = "subdiff --function f1 --x 1 --eps 0.1 " + kCoarse;
  REQUIRE(run(args, a) == 0);
  REQUIRE(run(args, b) == 0);
  const std::string ga = slurp(a);
  CHECK_FALSE(ga.empty());
  CHECK(ga == slurp(b));
}
