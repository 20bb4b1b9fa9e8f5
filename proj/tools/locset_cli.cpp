// Command-line harness for the locset toolkit: certification of a single
// scenario, anchor-subset ranking, the Monte Carlo policy comparison, the
// collinearity sweep, and figure-geometry dumps.
//
// Exit codes: 0 success, 2 infeasible scenario, 3 invalid input,
// 4 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "locset.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitSolverFailure = 4;

void write_file(const fs::path& dir, const std::string& name,
                const std::string& content) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << content;
}

void emit(const std::string& out_dir, const std::string& name,
          const std::string& content) {
  if (out_dir.empty())
    std::cout << content;
  else
    write_file(out_dir, name, content);
}

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir;
  std::string format = "csv";
  std::uint64_t seed = 0;
  double tol = 1e-6;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_scenario) {
  auto* sc = cmd->add_option("--scenario", opts.scenario_path,
                             "Scenario file path");
  if (needs_scenario) sc->required();
  cmd->add_option("--out", opts.out_dir,
                  "Output directory (default: print to stdout)")
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Master 64-bit seed")
      ->capture_default_str();
  cmd->add_option("--tol", opts.tol,
                  "Certificate validation slack (exact <= bound + tol)")
      ->capture_default_str();
}

int run_certify(const CommonOpts& opts) {
  const locset::Scenario sc = locset::load_scenario(opts.scenario_path);
  const locset::CertificateReport rep = locset::certify(sc, {}, opts.tol);
  const nlohmann::json j = rep.to_json();
  if (opts.format == "json" || opts.format == "csv") {
    // The report is hierarchical; CSV output flattens to key,value rows.
    if (opts.format == "json") {
      emit(opts.out_dir, "report.json", j.dump(2) + "\n");
    } else {
      std::ostringstream flat;
      flat << "key,value\n";
      const std::function<void(const std::string&, const nlohmann::json&)> walk =
          [&](const std::string& prefix, const nlohmann::json& node) {
            if (node.is_object()) {
              for (auto it = node.begin(); it != node.end(); ++it)
                walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
            } else if (node.is_array()) {
              for (std::size_t i = 0; i < node.size(); ++i)
                walk(prefix + "[" + std::to_string(i) + "]", node[i]);
            } else {
              flat << prefix << ',' << node.dump() << "\n";
            }
          };
      walk("", j);
      emit(opts.out_dir, "report.csv", flat.str());
    }
  }
  return rep.x_feasible ? kExitOk : kExitInfeasible;
}

int run_select_cmd(const CommonOpts& opts, int k, const std::string& policy) {
  const locset::Scenario sc = locset::load_scenario(opts.scenario_path);
  const locset::ScorePolicy pol =
      policy == "E" ? locset::ScorePolicy::E : locset::ScorePolicy::D;
  const std::vector<locset::SelectRow> rows = locset::run_select(sc, k, pol);
  const bool online = sc.has_measurements();
  if (opts.format == "csv")
    emit(opts.out_dir, "select.csv", locset::select_csv(rows, online));
  else
    emit(opts.out_dir, "select.json", locset::select_json(rows, online).dump(2) + "\n");
  return kExitOk;
}

int run_montecarlo_cmd(const CommonOpts& opts, locset::MonteCarloParams params) {
  params.seed = opts.seed;
  const locset::MonteCarloOutput out = locset::run_montecarlo(params);
  const std::string summary = locset::montecarlo_summary_json(out.summary).dump(2) + "\n";
  if (opts.out_dir.empty()) {
    std::cout << locset::montecarlo_summary_text(out.summary) << summary;
  } else {
    write_file(opts.out_dir, "summary.json", summary);
    write_file(opts.out_dir, "scatter.csv", locset::scatter_csv(out.scatter));
    write_file(opts.out_dir, "cdf.csv", locset::cdf_csv(out.cdf));
    std::cout << locset::montecarlo_summary_text(out.summary);
  }
  return kExitOk;
}

int run_sweep_cmd(const CommonOpts& opts, const locset::SweepParams& params) {
  const std::vector<locset::SweepRow> rows = locset::run_sweep(params);
  if (opts.format == "csv")
    emit(opts.out_dir, "sweep.csv", locset::sweep_csv(rows));
  else
    emit(opts.out_dir, "sweep.json", locset::sweep_json(rows).dump(2) + "\n");
  return kExitOk;
}

int run_figure_cmd(const CommonOpts& opts, int grid, int samples) {
  const locset::Scenario sc = locset::load_scenario(opts.scenario_path);
  const locset::FigureData fig = locset::figure_data(sc, grid, samples);
  emit(opts.out_dir, "figure.json", locset::figure_json(fig).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locset: guaranteed multilateration certificates and anchor selection"};
  app.require_subcommand(1);

  CommonOpts certify_opts, select_opts, mc_opts, sweep_opts, fig_opts;

  auto* certify = app.add_subcommand(
      "certify", "Offline scores and online certificates for one scenario");
  add_common(certify, certify_opts, true);
  certify_opts.format = "json";
  certify->get_option("--format")->default_str("json");

  auto* select = app.add_subcommand(
      "select", "Rank anchor subsets of a candidate pool by geometry score");
  add_common(select, select_opts, true);
  int select_k = 4;
  std::string select_policy = "D";
  select->add_option("--k", select_k, "Subset cardinality")->capture_default_str();
  select->add_option("--policy", select_policy, "Score to rank by")
      ->check(CLI::IsMember({"E", "D"}))
      ->capture_default_str();

  auto* mc = app.add_subcommand(
      "montecarlo", "Monte Carlo subset-selection policy comparison");
  add_common(mc, mc_opts, false);
  locset::MonteCarloParams mc_params;
  mc->add_option("--trials", mc_params.trials)->capture_default_str();
  mc->add_option("--pool", mc_params.pool_size, "Candidate pool size")
      ->capture_default_str();
  mc->add_option("--k", mc_params.subset_size, "Subset cardinality")
      ->capture_default_str();
  mc->add_option("--delta", mc_params.delta, "Squared-range half-width")
      ->capture_default_str();
  mc->add_option("--annulus-inner", mc_params.annulus_inner)->capture_default_str();
  mc->add_option("--annulus-outer", mc_params.annulus_outer)->capture_default_str();
  mc->add_option("--threads", mc_params.threads, "0 = hardware concurrency")
      ->capture_default_str();

  auto* sweep = app.add_subcommand(
      "sweep", "Collinearity sweep of the three-anchor scenario");
  add_common(sweep, sweep_opts, false);
  locset::SweepParams sweep_params;
  sweep->add_option("--heights", sweep_params.heights,
                    "Explicit heights (default: 12 log-spaced in [0.08, 1.2])");
  sweep->add_option("--delta", sweep_params.delta)->capture_default_str();

  auto* fig = app.add_subcommand(
      "figure-data", "Geometry dump of the localization construction (2-D)");
  add_common(fig, fig_opts, true);
  int fig_grid = 64, fig_samples = 128;
  fig->add_option("--grid", fig_grid, "Membership grid resolution per axis")
      ->capture_default_str();
  fig->add_option("--boundary-samples", fig_samples,
                  "Support directions for the boundary polylines")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (certify->parsed()) return run_certify(certify_opts);
    if (select->parsed()) return run_select_cmd(select_opts, select_k, select_policy);
    if (mc->parsed()) return run_montecarlo_cmd(mc_opts, mc_params);
    if (sweep->parsed()) return run_sweep_cmd(sweep_opts, sweep_params);
    if (fig->parsed()) return run_figure_cmd(fig_opts, fig_grid, fig_samples);
  } catch (const locset::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const locset::ReportValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}
