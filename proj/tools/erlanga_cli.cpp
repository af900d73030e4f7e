// erlanga: fluid/diffusion approximations and Monte Carlo checks for the
// Erlang-A (M/M/c+M) queue.
//
// Exit codes: 0 success, 1 gate failure, 2 invalid input, 3 I/O error.

#include "erlanga/diffusion.hpp"
#include "erlanga/experiment.hpp"
#include "erlanga/fluid.hpp"
#include "erlanga/stationary.hpp"
#include "erlanga/wait_overlap.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace erlanga;

constexpr int exit_ok = 0;
constexpr int exit_gate_failure = 1;
constexpr int exit_invalid = 2;
constexpr int exit_io = 3;

constexpr const char* output_dir_env = "ERLANGA_OUTPUT_DIR";

struct ModelFlags {
  double lambda = 10.0;
  double mu = 1.0;
  double theta = 0.5;
  int servers = 30;
  int q0 = 10;
  double v0 = 0.0;
  double t_max = 20.0;
  double dt = 0.1;
};

struct SimFlags {
  std::uint64_t reps = 2000;
  std::uint64_t seed = ExperimentSpec{}.master_seed;
  std::string mode = "direct_sampling";
  unsigned workers = 1;
  bool chain_rule = false;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m)
{
  cmd->add_option("--lambda", m.lambda, "arrival rate")->capture_default_str();
  cmd->add_option("--mu", m.mu, "per-server service rate")->capture_default_str();
  cmd->add_option("--theta", m.theta, "abandonment rate")->capture_default_str();
  cmd->add_option("--servers", m.servers, "number of servers c")->capture_default_str();
  cmd->add_option("--q0", m.q0, "initial queue length")->capture_default_str();
  cmd->add_option("--v0", m.v0, "initial diffusion variance")->capture_default_str();
  cmd->add_option("--t-max", m.t_max, "grid horizon")->capture_default_str();
  cmd->add_option("--dt", m.dt, "grid step")->capture_default_str();
}

void add_sim_flags(CLI::App* cmd, SimFlags& s)
{
  cmd->add_option("--reps", s.reps, "replications")->capture_default_str();
  cmd->add_option("--seed", s.seed, "master seed")->capture_default_str();
  cmd->add_option("--mode", s.mode, "direct_sampling | conditional_moments")->capture_default_str();
  cmd->add_option("--workers", s.workers, "worker threads (output does not depend on it)")
      ->capture_default_str();
  cmd->add_flag("--chain-rule-variants", s.chain_rule,
                "also emit the chain-rule covariance variant of the overlap std approximation");
}

std::string output_dir(const std::string& flag, const char* fallback)
{
  if (!flag.empty()) {
    return flag;
  }
  if (const char* env = std::getenv(output_dir_env); env != nullptr && *env != '\0') {
    return env;
  }
  return fallback;
}

RunOptions options_from(const SimFlags& s) { return {s.workers, s.chain_rule}; }

void print_summary(const ComparisonReport& r)
{
  const auto& m = r.metrics;
  std::printf("%-6s queue_mean rel err (t>=1) %.4f  queue_std rel err (t>=1) %.4f  "
              "overlap_mean rel err (t>=1) %.4f  steady Q z=%.2f  O z=%.2f\n",
              r.spec.name.c_str(), m.at("queue_mean.analytical_1.max_rel_error_t_ge_1"),
              m.at("queue_std.analytical_1.max_rel_error_t_ge_1"),
              m.at("overlap_mean.analytical_1.max_rel_error_t_ge_1"), m.at("steady.queue_mean.sim_z"),
              m.at("steady.overlap_mean.sim_z"));
}

std::string analytic_csv(const ErlangAParams& p, double q0, double v0, const TimeGrid& grid)
{
  std::ostringstream os;
  char buf[512];
  os << "# " << describe(p) << " q0=" << q0 << " v0=" << v0 << '\n';
  os << "t,q,v,fluid_wait,digamma_wait,wait_var,overlap_mean,overlap_var_diffusion,overlap_var\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const double q = fluid_queue(p, q0, t);
    const double v = diffusion_variance(p, q0, v0, t);
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", t, q, v,
                  fluid_wait(p, q), wait_mean_approx(p, q), wait_var_approx(p, q, v),
                  overlap_mean_fluid(p, q), overlap_var_diffusion(p, q, v), overlap_var_approx(p, q, v));
    os << buf;
  }
  return os.str();
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path, "cannot open for reading");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Erlang-A queue: fluid/diffusion approximations, overlaps, and simulation checks"};
  app.require_subcommand(1);

  ModelFlags model;
  SimFlags sim;
  std::string out;

  auto* table1 = app.add_subcommand("table1", "run the eight built-in Table 1 configurations");
  add_sim_flags(table1, sim);
  table1->add_option("--t-max", model.t_max, "grid horizon")->capture_default_str();
  table1->add_option("--dt", model.dt, "grid step")->capture_default_str();
  table1->add_option("--out", out, "output directory");

  auto* simulate = app.add_subcommand("simulate", "simulate one configuration and compare");
  add_model_flags(simulate, model);
  add_sim_flags(simulate, sim);
  std::string name = "custom";
  simulate->add_option("--name", name, "experiment name")->capture_default_str();
  simulate->add_option("--out", out, "output directory");

  auto* analytic = app.add_subcommand("analytic", "print analytical curves only");
  add_model_flags(analytic, model);
  analytic->add_option("--out", out, "output directory (default: stdout)");

  auto* check_cmd = app.add_subcommand("check", "compare a report against a gate file");
  std::string report_path;
  std::string gates_path;
  check_cmd->add_option("--report", report_path, "report.json")->required();
  check_cmd->add_option("--gates", gates_path, "gate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid;
  }

  try {
    if (*table1) {
      auto specs = builtin_table1();
      const OverlapMode mode = parse_overlap_mode(sim.mode);
      for (auto& spec : specs) {
        spec.replications = sim.reps;
        spec.master_seed = sim.seed;
        spec.overlap_mode = mode;
        spec.t_max = model.t_max;
        spec.dt = model.dt;
      }
      const std::string dir = output_dir(out, "table1_out");
      for (const auto& report : run_all(specs, dir, options_from(sim))) {
        print_summary(report);
      }
      std::printf("wrote %s\n", dir.c_str());
      return exit_ok;
    }

    if (*simulate) {
      ExperimentSpec spec;
      spec.name = name;
      spec.params = {model.lambda, model.mu, model.theta, model.servers};
      spec.q0 = model.q0;
      spec.v0 = model.v0;
      spec.t_max = model.t_max;
      spec.dt = model.dt;
      spec.replications = sim.reps;
      spec.master_seed = sim.seed;
      spec.overlap_mode = parse_overlap_mode(sim.mode);
      const std::string dir = output_dir(out, name.c_str());
      print_summary(run(spec, dir, options_from(sim)));
      std::printf("wrote %s\n", dir.c_str());
      return exit_ok;
    }

    if (*analytic) {
      const ErlangAParams p{model.lambda, model.mu, model.theta, model.servers};
      validate(p);
      if (model.q0 < 0 || !(model.v0 >= 0.0)) {
        throw std::invalid_argument("q0 and v0 must be >= 0");
      }
      const TimeGrid grid = TimeGrid::uniform(model.t_max, model.dt);
      const std::string text = analytic_csv(p, model.q0, model.v0, grid);
      if (out.empty() && std::getenv(output_dir_env) == nullptr) {
        std::cout << text;
      } else {
        const std::filesystem::path dir = output_dir(out, ".");
        std::filesystem::create_directories(dir);
        std::ofstream file(dir / "analytic.csv", std::ios::binary);
        if (!(file << text)) {
          throw IoError(dir / "analytic.csv", "write failed");
        }
      }
      std::fprintf(stderr,
                   "steady state: q=%.10g v=%.10g overlap_mean=%.10g overlap_var=%.10g "
                   "exact_queue_mean=%.10g exact_overlap_mean=%.10g\n",
                   fluid_steady_state(p), diffusion_steady_state(p), overlap_mean_steady(p),
                   overlap_var_steady(p), exact_steady_moments(p).mean, exact_steady_overlap_mean(p));
      return exit_ok;
    }

    if (*check_cmd) {
      const GateOutcome outcome = check(read_file(report_path), read_file(gates_path));
      for (const auto& gate : outcome.failed) {
        std::printf("FAIL %s\n", gate.c_str());
      }
      if (!outcome.passed()) {
        return exit_gate_failure;
      }
      std::printf("all gates passed\n");
      return exit_ok;
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return exit_io;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return exit_io;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return exit_invalid;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return exit_invalid;
  }
  return exit_invalid;
}
