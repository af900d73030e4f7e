#include "erlanga/experiment.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace erlanga;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / ("erlanga_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args)
{
  const std::string cmd = std::string(ERLANGA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentSpec small_spec()
{
  ExperimentSpec spec = builtin_table1()[4];
  spec.t_max = 3.0;
  spec.dt = 0.5;
  spec.replications = 150;
  spec.master_seed = 5;
  return spec;
}

const std::string families[] = {"queue_mean", "queue_std",    "wait_mean",
                                "wait_std",   "overlap_mean", "overlap_std"};

}  // namespace

TEST_CASE("built-in table rows")
{
  const auto rows = builtin_table1();
  REQUIRE(rows.size() == 8);
  const double lambdas[] = {10, 10, 10, 10, 40, 40, 40, 40};
  const double thetas[] = {0.5, 0.5, 2, 2, 0.5, 0.5, 2, 2};
  const int q0s[] = {10, 50, 10, 50, 10, 50, 10, 50};
  const char* names[] = {"fig_a", "fig_b", "fig_c", "fig_d", "fig_e", "fig_f", "fig_g", "fig_h"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].name == names[i]);
    CHECK(rows[i].params.lambda == lambdas[i]);
    CHECK(rows[i].params.mu == 1.0);
    CHECK(rows[i].params.theta == thetas[i]);
    CHECK(rows[i].params.servers == 30);
    CHECK(rows[i].q0 == q0s[i]);
    CHECK(rows[i].v0 == 0.0);
    CHECK(rows[i].t_max == 20.0);
    CHECK(rows[i].dt == 0.1);
    CHECK(rows[i].replications == 2000);
  }
}

TEST_CASE("spec validation")
{
  ExperimentSpec spec = small_spec();
  CHECK_NOTHROW(validate(spec));
  spec.name.clear();
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  spec = small_spec();
  spec.replications = 0;
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  spec = small_spec();
  spec.q0 = -2;
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  spec = small_spec();
  spec.params.theta = 0.0;
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  spec = small_spec();
  spec.dt = -0.1;
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);
}

TEST_CASE("curve files are self-describing")
{
  const auto result = evaluate(small_spec());
  REQUIRE(result.curves.size() == 6);
  for (const auto& table : result.curves) {
    const std::string text = format_curve(result.report.spec, table);
    std::istringstream in(text);
    std::string meta;
    std::string header;
    std::getline(in, meta);
    std::getline(in, header);
    CHECK(meta.rfind("# name=fig_e lambda=40", 0) == 0);
    CHECK(meta.find("seed=5") != std::string::npos);
    CHECK(meta.find("replications=150") != std::string::npos);
    CHECK(meta.find("mode=direct_sampling") != std::string::npos);
    CHECK(header.rfind("t,sim_value,sim_stderr,analytical_1", 0) == 0);
    CHECK(table.data.rows() == 7);
    CHECK(table.data.cols() == static_cast<Eigen::Index>(table.columns.size()));
  }
  CHECK(result.curves[2].columns.back() == "analytical_2");
  CHECK(result.curves[5].columns.back() == "analytical_2");

  RunOptions opts;
  opts.chain_rule_variants = true;
  const auto with_variants = evaluate(small_spec(), opts);
  CHECK(with_variants.curves[5].columns.back() == "analytical_2_chain_rule");
  CHECK(with_variants.report.metrics.count("overlap_std.analytical_2_chain_rule.max_abs_error") == 1);

  for (const auto& [name, value] : result.report.metrics) {
    if (name.find("error") != std::string::npos) {
      CAPTURE(name);
      CHECK(value >= 0.0);
    }
  }
}

TEST_CASE("runs write identical bytes for equal seeds")
{
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  RunOptions two;
  two.workers = 2;
  run(small_spec(), a);
  run(small_spec(), b, two);
  for (const auto& f : families) {
    CHECK(fs::exists(a / (f + ".csv")));
    CHECK(slurp(a / (f + ".csv")) == slurp(b / (f + ".csv")));
  }
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "report.json").find("\"replications\"") != std::string::npos);

  ExperimentSpec other = small_spec();
  other.master_seed = 6;
  const fs::path c = scratch("det_c");
  run(other, c);
  CHECK(slurp(a / "queue_mean.csv") != slurp(c / "queue_mean.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST_CASE("run_all rejects duplicate names and reports I/O errors with the path")
{
  const auto spec = small_spec();
  CHECK_THROWS_AS(run_all({spec, spec}, scratch("dup")), std::invalid_argument);

  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  try {
    run(spec, blocker / "sub");
    FAIL("expected an I/O error");
  } catch (const IoError& e) {
    CHECK(e.path().string().find("erlanga_test_blocker") != std::string::npos);
  }
  fs::remove(blocker);
}

TEST_CASE("gate checks")
{
  const std::string report = R"({"metrics": {"a.x": 0.01, "a.y": 2.0, "a.z": null}})";
  CHECK(check(report, R"({"gates": {"a.x": 0.05, "a.y": 2.0}})").passed());

  const auto tight = check(report, R"({"gates": {"a.x": 0.0, "a.y": 5.0}})");
  CHECK_FALSE(tight.passed());
  REQUIRE(tight.failed.size() == 1);
  CHECK(tight.failed[0] == "a.x");

  CHECK_FALSE(check(report, R"({"gates": {"a.z": 1e300}})").passed());
  CHECK_THROWS_AS(check(report, R"({"gates": {"a.missing": 1.0}})"), std::invalid_argument);
  CHECK_THROWS_AS(check(report, R"({"gates": {"a.x": "big"}})"), std::invalid_argument);
  CHECK_THROWS_AS(check("{not json", R"({"gates": {}})"), std::invalid_argument);
  CHECK_THROWS_AS(check(report, R"({"limits": {}})"), std::invalid_argument);
}

TEST_CASE("command-line exit codes")
{
  const fs::path dir = scratch("cli");
  CHECK(run_cli("simulate --lambda 40 --theta 0.5 --q0 10 --t-max 2 --dt 0.5 --reps 50 --out " + dir.string()) ==
        0);
  CHECK(fs::exists(dir / "overlap_std.csv"));
  CHECK(run_cli("analytic --lambda 40 --theta 0.5 --q0 10 --t-max 2 --dt 0.5 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "analytic.csv"));

  const fs::path gates = dir / "gates.json";
  std::ofstream(gates) << R"({"gates": {"queue_mean.analytical_1.max_abs_error": 1e9}})";
  CHECK(run_cli("check --report " + (dir / "report.json").string() + " --gates " + gates.string()) == 0);
  std::ofstream(gates) << R"({"gates": {"queue_mean.analytical_1.max_abs_error": 0}})";
  CHECK(run_cli("check --report " + (dir / "report.json").string() + " --gates " + gates.string()) == 1);
  std::ofstream(gates) << R"({"gates": {"no.such.metric": 1}})";
  CHECK(run_cli("check --report " + (dir / "report.json").string() + " --gates " + gates.string()) == 2);
  CHECK(run_cli("check --report " + (dir / "nope.json").string() + " --gates " + gates.string()) == 3);

  CHECK(run_cli("simulate --theta 0 --out " + dir.string()) == 2);
  CHECK(run_cli("simulate --reps 0 --out " + dir.string()) == 2);
  CHECK(run_cli("simulate --mode sideways --out " + dir.string()) == 2);
  CHECK(run_cli("simulate --lambda abc") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("simulate --t-max 1 --dt 0.5 --reps 10 --out " + (gates / "x").string()) == 3);
  fs::remove_all(dir);
}
