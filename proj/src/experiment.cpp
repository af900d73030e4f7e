#include "erlanga/experiment.hpp"

#include "erlanga/diffusion.hpp"
#include "erlanga/fluid.hpp"
#include "erlanga/stationary.hpp"
#include "erlanga/wait_overlap.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace erlanga {

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path)
{
}

void validate(const ExperimentSpec& spec)
{
  if (spec.name.empty()) {
    throw std::invalid_argument("experiment name must not be empty");
  }
  validate(spec.params);
  if (spec.q0 < 0) {
    throw std::invalid_argument("q0 must be >= 0");
  }
  if (!std::isfinite(spec.v0) || spec.v0 < 0.0) {
    throw std::invalid_argument("v0 must be finite and >= 0");
  }
  if (spec.replications == 0) {
    throw std::invalid_argument("replications must be >= 1");
  }
  (void)spec.grid();
}

std::vector<ExperimentSpec> builtin_table1()
{
  struct Row {
    const char* name;
    double lambda;
    double theta;
    int q0;
  };
  constexpr Row rows[] = {
      {"fig_a", 10.0, 0.5, 10}, {"fig_b", 10.0, 0.5, 50}, {"fig_c", 10.0, 2.0, 10},
      {"fig_d", 10.0, 2.0, 50}, {"fig_e", 40.0, 0.5, 10}, {"fig_f", 40.0, 0.5, 50},
      {"fig_g", 40.0, 2.0, 10}, {"fig_h", 40.0, 2.0, 50},
  };
  std::vector<ExperimentSpec> specs;
  for (const Row& row : rows) {
    ExperimentSpec spec;
    spec.name = row.name;
    spec.params = {row.lambda, 1.0, row.theta, 30};
    spec.q0 = row.q0;
    specs.push_back(spec);
  }
  return specs;
}

namespace {

constexpr double transient_cutoff = 1.0;

struct ErrorSummary {
  double max_abs = 0.0;
  double max_rel = 0.0;
  double max_abs_late = 0.0;
  double max_rel_late = 0.0;
};

// Relative errors skip grid points where the simulated value is exactly 0.
ErrorSummary compare(const Eigen::VectorXd& times, const Eigen::VectorXd& sim,
                     const Eigen::VectorXd& approx)
{
  ErrorSummary out;
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    const double abs_err = std::fabs(approx[i] - sim[i]);
    const double rel_err = sim[i] != 0.0 ? abs_err / std::fabs(sim[i]) : 0.0;
    out.max_abs = std::max(out.max_abs, abs_err);
    out.max_rel = std::max(out.max_rel, rel_err);
    if (times[i] >= transient_cutoff) {
      out.max_abs_late = std::max(out.max_abs_late, abs_err);
      out.max_rel_late = std::max(out.max_rel_late, rel_err);
    }
  }
  return out;
}

double z_score(double estimate, double truth, double stderr_)
{
  const double diff = std::fabs(estimate - truth);
  if (diff == 0.0) {
    return 0.0;
  }
  return stderr_ > 0.0 ? diff / stderr_ : std::numeric_limits<double>::infinity();
}

CurveTable make_table(std::string family, const Eigen::VectorXd& times, const Eigen::VectorXd& sim,
                      const Eigen::VectorXd& stderr_, std::vector<std::pair<std::string, Eigen::VectorXd>> approx)
{
  CurveTable table;
  table.family = std::move(family);
  table.columns = {"t", "sim_value", "sim_stderr"};
  table.data.resize(times.size(), 3 + static_cast<Eigen::Index>(approx.size()));
  table.data.col(0) = times;
  table.data.col(1) = sim;
  table.data.col(2) = stderr_;
  for (std::size_t k = 0; k < approx.size(); ++k) {
    table.columns.push_back(approx[k].first);
    table.data.col(3 + static_cast<Eigen::Index>(k)) = approx[k].second;
  }
  return table;
}

Eigen::VectorXd collect(const PathStatistics& stats, Observable what,
                        const std::function<double(const ObservableStatistics&)>& field)
{
  Eigen::VectorXd out(stats.grid_points());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] = field(stats.at(what, i));
  }
  return out;
}

std::string format_number(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(path, "cannot open for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw IoError(path, "write failed");
  }
}

void ensure_directory(const std::filesystem::path& dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError(dir, "cannot create output directory" + (ec ? ": " + ec.message() : std::string()));
  }
}

nlohmann::json metrics_json(const std::map<std::string, double>& metrics, const std::string& prefix = "")
{
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, value] : metrics) {
    out[prefix + name] = value;  // non-finite values serialise as null
  }
  return out;
}

nlohmann::json spec_json(const ExperimentSpec& spec)
{
  return {
      {"name", spec.name},
      {"lambda", spec.params.lambda},
      {"mu", spec.params.mu},
      {"theta", spec.params.theta},
      {"servers", spec.params.servers},
      {"q0", spec.q0},
      {"v0", spec.v0},
      {"t_max", spec.t_max},
      {"dt", spec.dt},
      {"replications", spec.replications},
      {"seed", spec.master_seed},
      {"mode", std::string(to_string(spec.overlap_mode))},
  };
}

}  // namespace

ExperimentResult evaluate(const ExperimentSpec& spec, const RunOptions& options)
{
  validate(spec);
  const ErlangAParams& p = spec.params;
  const TimeGrid grid = spec.grid();
  const Eigen::VectorXd& times = grid.points();
  const auto q0 = static_cast<double>(spec.q0);

  const Eigen::VectorXd q = fluid_queue(p, q0, grid);
  const Eigen::VectorXd v = diffusion_variance(p, q0, spec.v0, grid);
  const Eigen::Index n = times.size();
  auto pointwise = [&](auto&& f) {
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out[i] = f(q[i], v[i]);
    }
    return out;
  };

  SimulationConfig config{p, spec.q0, grid, spec.replications, spec.master_seed, spec.overlap_mode};
  const PathStatistics stats = run_experiment(config, options.workers);

  auto mean_of = [&](Observable o) { return collect(stats, o, &ObservableStatistics::mean); };
  auto mean_se = [&](Observable o) { return collect(stats, o, &ObservableStatistics::mean_stderr); };
  auto std_of = [&](Observable o) { return collect(stats, o, &ObservableStatistics::stddev); };
  auto std_se = [&](Observable o) { return collect(stats, o, &ObservableStatistics::stddev_stderr); };

  ExperimentResult result;
  result.report.spec = spec;
  auto& curves = result.curves;

  curves.push_back(make_table("queue_mean", times, mean_of(Observable::queue), mean_se(Observable::queue),
                              {{"analytical_1", q}}));
  curves.push_back(make_table("queue_std", times, std_of(Observable::queue), std_se(Observable::queue),
                              {{"analytical_1", v.cwiseMax(0.0).cwiseSqrt()}}));
  curves.push_back(make_table(
      "wait_mean", times, mean_of(Observable::wait), mean_se(Observable::wait),
      {{"analytical_1", pointwise([&](double qt, double) { return fluid_wait(p, qt); })},
       {"analytical_2", pointwise([&](double qt, double) { return wait_mean_approx(p, qt); })}}));
  curves.push_back(make_table(
      "wait_std", times, std_of(Observable::wait), std_se(Observable::wait),
      {{"analytical_1", pointwise([&](double qt, double vt) { return std::sqrt(wait_var_approx(p, qt, vt)); })}}));
  curves.push_back(make_table(
      "overlap_mean", times, mean_of(Observable::overlap), mean_se(Observable::overlap),
      {{"analytical_1", pointwise([&](double qt, double) { return overlap_mean_fluid(p, qt); })}}));

  std::vector<std::pair<std::string, Eigen::VectorXd>> overlap_std_columns = {
      {"analytical_1",
       pointwise([&](double qt, double vt) { return std::sqrt(overlap_var_diffusion(p, qt, vt)); })},
      {"analytical_2", pointwise([&](double qt, double vt) { return std::sqrt(overlap_var_approx(p, qt, vt)); })}};
  if (options.chain_rule_variants) {
    overlap_std_columns.emplace_back("analytical_2_chain_rule", pointwise([&](double qt, double vt) {
                                       return std::sqrt(overlap_var_approx(p, qt, vt, TaylorForm::chain_rule));
                                     }));
  }
  curves.push_back(make_table("overlap_std", times, std_of(Observable::overlap), std_se(Observable::overlap),
                              std::move(overlap_std_columns)));

  auto& metrics = result.report.metrics;
  for (const CurveTable& table : curves) {
    for (std::size_t k = 3; k < table.columns.size(); ++k) {
      const ErrorSummary e =
          compare(times, table.data.col(1), table.data.col(static_cast<Eigen::Index>(k)));
      const std::string key = table.family + "." + table.columns[k];
      metrics[key + ".max_abs_error"] = e.max_abs;
      metrics[key + ".max_rel_error"] = e.max_rel;
      metrics[key + ".max_abs_error_t_ge_1"] = e.max_abs_late;
      metrics[key + ".max_rel_error_t_ge_1"] = e.max_rel_late;
    }
  }

  // Steady state: last grid point against the exact stationary chain.
  const Eigen::Index last = n - 1;
  const MomentPair exact_q = exact_steady_moments(p);
  const MomentPair exact_w = exact_steady_wait_moments(p);
  const MomentPair exact_o = exact_steady_overlap_moments(p);
  const ObservableStatistics& sim_q = stats.at(Observable::queue, last);
  const ObservableStatistics& sim_o = stats.at(Observable::overlap, last);

  metrics["steady.queue_mean.sim_z"] = z_score(sim_q.mean(), exact_q.mean, sim_q.mean_stderr());
  metrics["steady.queue_var.sim_z"] = z_score(sim_q.variance(), exact_q.variance, sim_q.variance_stderr());
  metrics["steady.overlap_mean.sim_z"] = z_score(sim_o.mean(), exact_o.mean, sim_o.mean_stderr());
  metrics["steady.overlap_var.sim_z"] = z_score(sim_o.variance(), exact_o.variance, sim_o.variance_stderr());
  metrics["steady.overlap_var.sim_z_vs_formula"] =
      z_score(sim_o.variance(), overlap_var_steady(p), sim_o.variance_stderr());

  const double q_inf = fluid_steady_state(p);
  const double v_inf = diffusion_steady_state(p);
  metrics["steady.queue_mean.fluid_rel_error"] = std::fabs(q_inf - exact_q.mean) / exact_q.mean;
  metrics["steady.queue_var.diffusion_rel_error"] = std::fabs(v_inf - exact_q.variance) / exact_q.variance;
  const double fluid_wait_err = std::fabs(fluid_wait(p, q_inf) - exact_w.mean);
  const double digamma_wait_err = std::fabs(wait_mean_approx(p, q_inf) - exact_w.mean);
  metrics["steady.wait_mean.fluid_abs_error"] = fluid_wait_err;
  metrics["steady.wait_mean.digamma_abs_error"] = digamma_wait_err;
  metrics["steady.wait_mean.digamma_to_fluid_error_ratio"] =
      fluid_wait_err > 0.0 ? digamma_wait_err / fluid_wait_err
                           : (digamma_wait_err > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  metrics["steady.overlap_mean.fluid_rel_error"] =
      std::fabs(overlap_mean_steady(p) - exact_o.mean) / exact_o.mean;
  metrics["steady.overlap_var.approx_rel_error"] =
      std::fabs(overlap_var_steady(p) - exact_o.variance) / exact_o.variance;
  return result;
}

std::string metadata_line(const ExperimentSpec& spec)
{
  std::ostringstream os;
  os << "# name=" << spec.name << ' ' << describe(spec.params) << " q0=" << spec.q0
     << " v0=" << format_number(spec.v0) << " t_max=" << format_number(spec.t_max)
     << " dt=" << format_number(spec.dt) << " replications=" << spec.replications
     << " seed=" << spec.master_seed << " mode=" << to_string(spec.overlap_mode);
  return os.str();
}

std::string format_curve(const ExperimentSpec& spec, const CurveTable& table)
{
  std::string text = metadata_line(spec) + '\n';
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    text += (k ? "," : "") + table.columns[k];
  }
  text += '\n';
  for (Eigen::Index i = 0; i < table.data.rows(); ++i) {
    for (Eigen::Index k = 0; k < table.data.cols(); ++k) {
      if (k) {
        text += ',';
      }
      text += format_number(table.data(i, k));
    }
    text += '\n';
  }
  return text;
}

std::string format_report(const ComparisonReport& report)
{
  nlohmann::json doc = spec_json(report.spec);
  doc["metrics"] = metrics_json(report.metrics);
  return doc.dump(2) + '\n';
}

std::string format_combined_report(const std::vector<ComparisonReport>& reports)
{
  nlohmann::json runs = nlohmann::json::array();
  std::map<std::string, double> all;
  for (const auto& r : reports) {
    runs.push_back(spec_json(r.spec));
    for (const auto& [name, value] : r.metrics) {
      all[r.spec.name + "." + name] = value;
    }
  }
  nlohmann::json doc;
  doc["runs"] = std::move(runs);
  doc["metrics"] = metrics_json(all);
  return doc.dump(2) + '\n';
}

ComparisonReport run(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                     const RunOptions& options)
{
  validate(spec);
  ensure_directory(out_dir);
  ExperimentResult result = evaluate(spec, options);
  for (const CurveTable& table : result.curves) {
    write_file(out_dir / (table.family + ".csv"), format_curve(spec, table));
  }
  write_file(out_dir / "report.json", format_report(result.report));
  return std::move(result.report);
}

std::vector<ComparisonReport> run_all(const std::vector<ExperimentSpec>& specs,
                                      const std::filesystem::path& out_dir, const RunOptions& options)
{
  std::set<std::string> names;
  for (const auto& spec : specs) {
    validate(spec);
    if (!names.insert(spec.name).second) {
      throw std::invalid_argument("duplicate experiment name '" + spec.name + "'");
    }
  }
  ensure_directory(out_dir);
  std::vector<ComparisonReport> reports;
  for (const auto& spec : specs) {
    reports.push_back(run(spec, out_dir / spec.name, options));
  }
  write_file(out_dir / "report.json", format_combined_report(reports));
  return reports;
}

}  // namespace erlanga
