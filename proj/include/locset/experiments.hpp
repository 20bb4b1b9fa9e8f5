#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "locset/ball_certificates.hpp"
#include "locset/format.hpp"
#include "locset/report.hpp"
#include "locset/rng.hpp"
#include "locset/scenario.hpp"
#include "locset/selection.hpp"
#include "locset/support.hpp"

namespace locset {

/// Area-uniform point in the annulus r_inner <= ||p - center|| <= r_outer:
/// radius sqrt(r_in^2 + u (r_out^2 - r_in^2)), angle uniform.
inline Eigen::Vector2d sample_annulus(rng::Xoshiro256& gen,
                                      const Eigen::Vector2d& center,
                                      double r_inner, double r_outer) {
  const double r2 = r_inner * r_inner +
                    gen.uniform01() * (r_outer * r_outer - r_inner * r_inner);
  const double theta = gen.uniform(0.0, 2.0 * M_PI);
  return center + std::sqrt(r2) * Eigen::Vector2d(std::cos(theta), std::sin(theta));
}

// --------------------------------------------------------------------------
// certify

namespace detail {

inline double finite_or_inf(const SupportHResult& r) {
  return r.ok() ? r.value : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Full offline + online certificate bundle for one scenario. Default
/// directions are the coordinate axes followed by the scatter
/// eigenvectors; extra directions may be appended.
inline CertificateReport certify(
    const Scenario& scenario,
    const std::vector<Eigen::VectorXd>& extra_directions = {},
    double validation_slack = 1e-6) {
  const AnchorSet anchors = scenario.anchor_set();
  const IntervalBounds bounds = scenario.bounds();
  const Eigen::VectorXd widths = bounds.widths();
  const Eigen::Index n = anchors.dim();

  CertificateReport rep;
  const ScatterInfo s = scatter_matrix(anchors);
  rep.scatter_singular = s.singular();
  rep.lambda_min = rep.scatter_singular ? 0.0 : s.lambda_min();
  rep.det_s = rep.scatter_singular ? 0.0 : s.eigenvalues.prod();
  const WeightedScores ws = weighted_scores(anchors, widths);
  rep.j_e = ws.e;
  rep.j_d = ws.d;
  rep.diam_bound_xd = diam_bound_xd(anchors, widths);
  rep.det_vol_bound = det_vol_bound(anchors, widths);

  const BallCertificate star = rho_star(anchors, bounds);
  rep.h_empty = star.empty;
  rep.rho_star_squared = star.rho_squared;
  rep.p_star = star.weight.values();
  if (!star.empty) {
    rep.two_rho_star = 2.0 * star.radius;
    rep.h_degenerate_interior =
        star.rho_squared <= 1e-10 * detail::xi_scale(bounds, anchors);
  }

  const HybridBox hbox = hybrid_box(anchors, bounds);
  rep.hybrid_box_sides = hbox.sides;
  rep.hybrid_box_axes = hbox.axes;
  rep.hybrid_diam_bound = hbox.diam_bound;
  rep.hybrid_vol_bound = hbox.vol_bound;
  rep.coord_box_bound = hybrid_coord_box_bound(anchors, bounds);

  const ConvexSpec x_spec = anchors.count() >= 2
                                ? ConvexSpec::localization_set(anchors, bounds)
                                : ConvexSpec::upper_balls(anchors, bounds);
  rep.x_feasible = feasible(x_spec);
  const BoxResult box = coord_box(x_spec);
  rep.exact_box_status = box.status;
  rep.exact_box_lo = box.lo;
  rep.exact_box_hi = box.hi;
  if (box.status == SupportStatus::optimal ||
      box.status == SupportStatus::degenerate_tolerance)
    rep.exact_box_volume = box.volume();

  std::vector<std::pair<std::string, Eigen::VectorXd>> dirs;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(j) = 1.0;
    dirs.emplace_back("e" + std::to_string(j + 1), e);
  }
  for (Eigen::Index j = 0; j < n; ++j)
    dirs.emplace_back("u" + std::to_string(j + 1), s.eigenvectors.col(j));
  for (std::size_t i = 0; i < extra_directions.size(); ++i)
    dirs.emplace_back("dir" + std::to_string(i + 1), extra_directions[i]);

  for (const auto& [label, v] : dirs) {
    DirectionReport d;
    d.label = label;
    d.direction = v;
    const WidthResult w = width(x_spec, v);
    d.exact_status = w.status;
    d.exact_width = w.value;
    d.xd_width_bound = width_bound_xd(anchors, widths, v);
    const SupportHResult psi = psi_H(v, anchors, bounds);
    d.psi_status = psi.status;
    d.psi = psi.value;
    const WidthResult beta = beta_H(v, anchors, bounds);
    if (beta.status == SupportStatus::optimal) d.beta = beta.value;
    d.hybrid = std::min(d.xd_width_bound, detail::finite_or_inf(psi));
    rep.directions.push_back(std::move(d));
  }

  rep.validate(validation_slack);
  return rep;
}

// --------------------------------------------------------------------------
// sweep

struct SweepParams {
  std::vector<double> heights;  // empty = default grid
  double delta = 0.05;
};

/// Default sweep grid: 12 log-spaced heights from 1.2 down to 0.08 with
/// both endpoints exact.
inline std::vector<double> default_sweep_heights() {
  constexpr int kCount = 12;
  std::vector<double> h(kCount);
  const double lo = std::log(0.08), hi = std::log(1.2);
  for (int i = 0; i < kCount; ++i)
    h[static_cast<std::size_t>(i)] =
        std::exp(hi + (lo - hi) * static_cast<double>(i) / (kCount - 1));
  h.front() = 1.2;
  h.back() = 0.08;
  return h;
}

struct SweepRow {
  double h;
  double exact_width;
  double xd_width_bound;
  double psi;
  double hybrid;
  double diam_xd;
  double two_rho_star;
};

/// Collinearity sweep: anchors (-1,0), (1,0), (0,h) with target
/// (0.15, 0.35); vertical-width certificates per height.
inline std::vector<SweepRow> run_sweep(const SweepParams& params = {}) {
  const std::vector<double> heights =
      params.heights.empty() ? default_sweep_heights() : params.heights;
  const Eigen::Vector2d target(0.15, 0.35);
  const Eigen::Vector2d e2(0.0, 1.0);

  std::vector<SweepRow> rows;
  rows.reserve(heights.size());
  for (double h : heights) {
    if (!(h > 0)) throw std::invalid_argument("run_sweep: heights must be positive");
    Eigen::MatrixXd a(2, 3);
    a << -1, 1, 0, 0, 0, h;
    const AnchorSet anchors(a);
    const IntervalBounds bounds = make_intervals(target, anchors, params.delta);

    SweepRow row;
    row.h = h;
    row.exact_width =
        width(ConvexSpec::localization_set(anchors, bounds), e2).value;
    row.xd_width_bound = width_bound_xd(anchors, bounds.widths(), e2);
    const SupportHResult psi = psi_H(e2, anchors, bounds);
    row.psi = psi.value;
    row.hybrid = std::min(row.xd_width_bound, detail::finite_or_inf(psi));
    row.diam_xd = diam_bound_xd(anchors, bounds.widths());
    row.two_rho_star = 2.0 * rho_star(anchors, bounds).radius;
    rows.push_back(row);
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "h,exact_width,xd_width_bound,psi_H,hybrid,diam_xd,two_rho_star\n";
  for (const SweepRow& r : rows)
    out << format_float(r.h) << ',' << format_float(r.exact_width) << ','
        << format_float(r.xd_width_bound) << ',' << format_float(r.psi) << ','
        << format_float(r.hybrid) << ',' << format_float(r.diam_xd) << ','
        << format_float(r.two_rho_star) << "\n";
  return out.str();
}

inline nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows)
    arr.push_back({{"h", json_number(r.h)},
                   {"exact_width", json_number(r.exact_width)},
                   {"xd_width_bound", json_number(r.xd_width_bound)},
                   {"psi_H", json_number(r.psi)},
                   {"hybrid", json_number(r.hybrid)},
                   {"diam_xd", json_number(r.diam_xd)},
                   {"two_rho_star", json_number(r.two_rho_star)}});
  return arr;
}

// --------------------------------------------------------------------------
// Monte Carlo subset-selection experiment

struct MonteCarloParams {
  int trials = 60;
  int pool_size = 8;
  int subset_size = 4;
  double delta = 0.05;
  double annulus_inner = 1.0;
  double annulus_outer = 2.0;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct ScatterRowMc {
  int trial;
  int subset_lex_id;
  std::vector<int> indices;
  double e_score;
  double d_score;
  double box_area;
  double b_hyb;
};

struct TrialRatios {
  int trial;
  double ratio_d;
  double ratio_e;
};

struct MonteCarloSummary {
  int trials = 0;
  int subsets_per_trial = 0;
  std::uint64_t seed = 0;
  double mean_area_oracle = 0;
  double mean_area_d = 0;
  double mean_area_e = 0;
  double mean_area_avg = 0;
  double ratio_d = 0;    // of mean areas, relative to the oracle
  double ratio_e = 0;
  double ratio_avg = 0;
  int oracle_hits_d = 0;  // trials where the D-winner is the oracle subset
  int oracle_hits_e = 0;
  double scatter_correlation_log10 = 0;  // Pearson, log10 bound vs log10 area
  double mean_bhyb_ratio = 0;
  double median_bhyb_ratio = 0;
  int excluded_subsets = 0;
};

struct MonteCarloOutput {
  MonteCarloSummary summary;
  std::vector<ScatterRowMc> scatter;
  std::vector<TrialRatios> cdf;
};

namespace detail {

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Monte Carlo policy comparison. Each trial draws `pool_size` candidate
/// anchors area-uniformly in the annulus around the origin target,
/// enumerates every subset of size `subset_size` and compares the oracle
/// (minimum exact box area of X), D-score, E-score and average-subset
/// policies. Trial substreams come from rng::substream_seed, so results
/// are independent of how trials are scheduled across threads.
inline MonteCarloOutput run_montecarlo(const MonteCarloParams& params) {
  if (params.trials < 1 || params.pool_size < 2 ||
      params.subset_size < 2 || params.subset_size > params.pool_size)
    throw std::invalid_argument("run_montecarlo: invalid parameters");
  if (!(params.delta >= 0) || !(params.annulus_inner >= 0) ||
      !(params.annulus_outer > params.annulus_inner))
    throw std::invalid_argument("run_montecarlo: invalid parameters");

  const Eigen::Vector2d target(0.0, 0.0);
  std::vector<PolicyEvaluation> evals(static_cast<std::size_t>(params.trials));

  const auto run_trial = [&](int t) {
    rng::Xoshiro256 gen(rng::substream_seed(params.seed, static_cast<std::uint64_t>(t)));
    Eigen::MatrixXd pool(2, params.pool_size);
    for (int i = 0; i < params.pool_size; ++i)
      pool.col(i) = sample_annulus(gen, target, params.annulus_inner,
                                   params.annulus_outer);
    evals[static_cast<std::size_t>(t)] =
        evaluate_policies(AnchorSet(pool), params.subset_size, target,
                          params.delta,
                          rng::substream_seed(params.seed, static_cast<std::uint64_t>(t)));
  };

  int threads = params.threads > 0
                    ? params.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, params.trials);
  if (threads == 1) {
    for (int t = 0; t < params.trials; ++t) run_trial(t);
  } else {
    std::vector<std::future<void>> jobs;
    jobs.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (int t = w; t < params.trials; t += threads) run_trial(t);
      }));
    for (auto& j : jobs) j.get();
  }

  MonteCarloOutput out;
  out.summary.trials = params.trials;
  out.summary.seed = params.seed;
  out.summary.subsets_per_trial =
      static_cast<int>(evals.front().records.size());

  double sum_oracle = 0, sum_d = 0, sum_e = 0, sum_avg = 0;
  std::vector<double> log_bound, log_area, bhyb_ratio;
  for (int t = 0; t < params.trials; ++t) {
    const PolicyEvaluation& ev = evals[static_cast<std::size_t>(t)];
    if (ev.oracle < 0)
      throw std::runtime_error("run_montecarlo: trial without any bounded subset");
    const double oracle_area = ev.records[static_cast<std::size_t>(ev.oracle)].box_area;
    const double d_area = ev.records[static_cast<std::size_t>(ev.d_winner)].box_area;
    const double e_area = ev.records[static_cast<std::size_t>(ev.e_winner)].box_area;
    sum_oracle += oracle_area;
    sum_d += d_area;
    sum_e += e_area;
    sum_avg += ev.mean_box_area;
    out.summary.excluded_subsets += ev.excluded_count;
    if (ev.d_winner == ev.oracle) ++out.summary.oracle_hits_d;
    if (ev.e_winner == ev.oracle) ++out.summary.oracle_hits_e;
    out.cdf.push_back({t, d_area / oracle_area, e_area / oracle_area});

    for (std::size_t i = 0; i < ev.records.size(); ++i) {
      const SubsetRecord& rec = ev.records[i];
      out.scatter.push_back({t, static_cast<int>(i), rec.indices, rec.e_score,
                             rec.d_score, rec.box_area, rec.hybrid_bound});
      if (std::isfinite(rec.box_area) && std::isfinite(rec.hybrid_bound) &&
          rec.box_area > 0 && rec.hybrid_bound > 0) {
        log_area.push_back(std::log10(rec.box_area));
        log_bound.push_back(std::log10(rec.hybrid_bound));
        bhyb_ratio.push_back(rec.hybrid_bound / rec.box_area);
      }
    }
  }

  out.summary.mean_area_oracle = sum_oracle / params.trials;
  out.summary.mean_area_d = sum_d / params.trials;
  out.summary.mean_area_e = sum_e / params.trials;
  out.summary.mean_area_avg = sum_avg / params.trials;
  out.summary.ratio_d = out.summary.mean_area_d / out.summary.mean_area_oracle;
  out.summary.ratio_e = out.summary.mean_area_e / out.summary.mean_area_oracle;
  out.summary.ratio_avg = out.summary.mean_area_avg / out.summary.mean_area_oracle;
  out.summary.scatter_correlation_log10 = detail::pearson(log_bound, log_area);
  out.summary.mean_bhyb_ratio =
      bhyb_ratio.empty()
          ? std::numeric_limits<double>::quiet_NaN()
          : std::accumulate(bhyb_ratio.begin(), bhyb_ratio.end(), 0.0) /
                static_cast<double>(bhyb_ratio.size());
  out.summary.median_bhyb_ratio = detail::median_of(bhyb_ratio);
  return out;
}

inline std::string indices_token(const std::vector<int>& indices) {
  std::ostringstream out;
  for (std::size_t i = 0; i < indices.size(); ++i)
    out << (i ? "-" : "") << indices[i];
  return out.str();
}

inline std::string scatter_csv(const std::vector<ScatterRowMc>& rows) {
  std::ostringstream out;
  out << "trial,subset_lex_id,indices,e_score,d_score,box_area,B_hyb\n";
  for (const ScatterRowMc& r : rows)
    out << r.trial << ',' << r.subset_lex_id << ',' << indices_token(r.indices)
        << ',' << format_float(r.e_score) << ',' << format_float(r.d_score)
        << ',' << format_float(r.box_area) << ',' << format_float(r.b_hyb)
        << "\n";
  return out.str();
}

inline std::string cdf_csv(const std::vector<TrialRatios>& rows) {
  std::ostringstream out;
  out << "trial,ratio_d,ratio_e\n";
  for (const TrialRatios& r : rows)
    out << r.trial << ',' << format_float(r.ratio_d) << ','
        << format_float(r.ratio_e) << "\n";
  return out.str();
}

inline nlohmann::json montecarlo_summary_json(const MonteCarloSummary& s) {
  nlohmann::json j;
  j["trials"] = s.trials;
  j["subsets_per_trial"] = s.subsets_per_trial;
  j["seed"] = s.seed;
  j["oracle_metric"] = PolicyEvaluation::kOracleMetric;
  j["mean_area"] = {{"oracle", json_number(s.mean_area_oracle)},
                    {"d_score", json_number(s.mean_area_d)},
                    {"e_score", json_number(s.mean_area_e)},
                    {"average_subset", json_number(s.mean_area_avg)}};
  j["ratio_to_oracle"] = {{"d_score", json_number(s.ratio_d)},
                          {"e_score", json_number(s.ratio_e)},
                          {"average_subset", json_number(s.ratio_avg)}};
  j["oracle_recovery"] = {{"d_score", s.oracle_hits_d},
                          {"e_score", s.oracle_hits_e}};
  j["scatter"] = {{"correlation_log10", json_number(s.scatter_correlation_log10)},
                  {"mean_bhyb_over_area", json_number(s.mean_bhyb_ratio)},
                  {"median_bhyb_over_area", json_number(s.median_bhyb_ratio)}};
  j["excluded_subsets"] = s.excluded_subsets;
  return j;
}

/// Table-1-style text summary (3 significant digits).
inline std::string montecarlo_summary_text(const MonteCarloSummary& s) {
  char buf[256];
  std::ostringstream out;
  out << "Subset selection over " << s.trials << " trials ("
      << s.subsets_per_trial << " subsets each)\n";
  const auto row = [&](const char* name, double area, double ratio) {
    std::snprintf(buf, sizeof(buf), "%-16s %10.3g %8.3g\n", name, area, ratio);
    out << buf;
  };
  out << "Method           mean area  rel. to oracle\n";
  row("Oracle subset", s.mean_area_oracle, 1.0);
  row("D-score", s.mean_area_d, s.ratio_d);
  row("E-score", s.mean_area_e, s.ratio_e);
  row("Average subset", s.mean_area_avg, s.ratio_avg);
  std::snprintf(buf, sizeof(buf),
                "oracle recovered: D %d/%d, E %d/%d\n"
                "scatter: corr(log10) %.3g, mean ratio %.3g, median %.3g\n",
                s.oracle_hits_d, s.trials, s.oracle_hits_e, s.trials,
                s.scatter_correlation_log10, s.mean_bhyb_ratio,
                s.median_bhyb_ratio);
  out << buf;
  return out.str();
}

// --------------------------------------------------------------------------
// select command

struct SelectRow {
  int rank;
  std::vector<int> indices;
  double e_score;
  double d_score;
  double box_area = std::numeric_limits<double>::quiet_NaN();
  double hybrid_bound = std::numeric_limits<double>::quiet_NaN();
};

/// Ranked table of all k-subsets of the scenario pool by the requested
/// score (ties lexicographic). With measurements available, each row also
/// carries the exact box area and hybrid bound of its localization set.
inline std::vector<SelectRow> run_select(const Scenario& scenario, int k,
                                         ScorePolicy policy) {
  const AnchorSet pool = scenario.anchor_set();
  if (k < 2 || k > pool.count())
    throw std::invalid_argument("run_select: need 2 <= k <= pool size");

  std::vector<SelectRow> rows;
  const bool online = scenario.has_measurements();
  if (online) {
    IntervalBounds bounds = scenario.bounds();
    int idx = 0;
    for_each_subset(static_cast<int>(pool.count()), k,
                    [&](const std::vector<int>& subset) {
      SelectRow row;
      row.rank = idx++;
      row.indices = subset;
      const detail::ScorePair sc = detail::subset_scores(pool, subset);
      row.e_score = sc.e;
      row.d_score = sc.d;
      const AnchorSet sub = pool.subset(subset);
      const IntervalBounds sub_bounds = bounds.subset(subset);
      const BoxResult box = coord_box(ConvexSpec::localization_set(sub, sub_bounds));
      row.box_area = (box.status == SupportStatus::optimal ||
                      box.status == SupportStatus::degenerate_tolerance)
                         ? box.volume()
                         : std::numeric_limits<double>::infinity();
      row.hybrid_bound = hybrid_coord_box_bound(sub, sub_bounds);
      rows.push_back(std::move(row));
    });
  } else {
    int idx = 0;
    for_each_subset(static_cast<int>(pool.count()), k,
                    [&](const std::vector<int>& subset) {
      SelectRow row;
      row.rank = idx++;
      row.indices = subset;
      const detail::ScorePair sc = detail::subset_scores(pool, subset);
      row.e_score = sc.e;
      row.d_score = sc.d;
      rows.push_back(std::move(row));
    });
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [&](const SelectRow& a, const SelectRow& b) {
                     const double sa = policy == ScorePolicy::E ? a.e_score : a.d_score;
                     const double sb = policy == ScorePolicy::E ? b.e_score : b.d_score;
                     if (sa != sb) return sa > sb;
                     return a.indices < b.indices;
                   });
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].rank = static_cast<int>(i);
  return rows;
}

inline std::string select_csv(const std::vector<SelectRow>& rows, bool online) {
  std::ostringstream out;
  out << "rank,indices,e_score,d_score";
  if (online) out << ",box_area,B_hyb";
  out << "\n";
  for (const SelectRow& r : rows) {
    out << r.rank << ',' << indices_token(r.indices) << ','
        << format_float(r.e_score) << ',' << format_float(r.d_score);
    if (online)
      out << ',' << format_float(r.box_area) << ',' << format_float(r.hybrid_bound);
    out << "\n";
  }
  return out.str();
}

inline nlohmann::json select_json(const std::vector<SelectRow>& rows, bool online) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SelectRow& r : rows) {
    nlohmann::json e = {{"rank", r.rank},
                        {"indices", r.indices},
                        {"e_score", json_number(r.e_score)},
                        {"d_score", json_number(r.d_score)}};
    if (online) {
      e["box_area"] = json_number(r.box_area);
      e["B_hyb"] = json_number(r.hybrid_bound);
    }
    arr.push_back(e);
  }
  return arr;
}

// --------------------------------------------------------------------------
// figure data

struct FigureAnnulus {
  Eigen::Vector2d center;
  double r_lower;
  double r_upper;
};

struct FigureData {
  std::vector<FigureAnnulus> annuli;
  HalfspacePolytope xd;
  std::vector<Eigen::Vector2d> x_boundary;   // support points of X
  std::vector<Eigen::Vector2d> xd_boundary;  // support points of X_d
  int grid_resolution = 0;
  Eigen::Vector2d grid_lo;
  Eigen::Vector2d grid_hi;
  std::vector<std::uint8_t> true_membership;  // row-major, x fastest
};

/// Geometry dump for external plotting of the localization construction:
/// annuli radii, the difference polytope, sampled boundaries of X and
/// X_d, and a membership grid of the true feasible set. 2-D scenarios
/// only; no rendering here.
inline FigureData figure_data(const Scenario& scenario, int grid_resolution = 64,
                              int boundary_samples = 128) {
  if (scenario.dim != 2)
    throw std::invalid_argument("figure_data: only 2-D scenarios are supported");
  if (grid_resolution < 2 || boundary_samples < 3)
    throw std::invalid_argument("figure_data: resolution too small");
  const AnchorSet anchors = scenario.anchor_set();
  const IntervalBounds bounds = scenario.bounds();

  FigureData fig;
  for (Eigen::Index i = 0; i < anchors.count(); ++i)
    fig.annuli.push_back({anchors.anchor(i),
                          std::sqrt(std::max(bounds.lower(i), 0.0)),
                          std::sqrt(std::max(bounds.upper(i), 0.0))});
  fig.xd = build_xd(anchors, bounds);

  const ConvexSpec x_spec = ConvexSpec::localization_set(anchors, bounds);
  const ConvexSpec xd_spec = ConvexSpec::polytope_only(anchors, bounds);
  for (int k = 0; k < boundary_samples; ++k) {
    const double th = 2.0 * M_PI * k / boundary_samples;
    const Eigen::Vector2d v(std::cos(th), std::sin(th));
    const SupportResult rx = support(x_spec, v);
    if (rx.ok()) fig.x_boundary.emplace_back(rx.maximizer);
    const SupportResult rd = support(xd_spec, v);
    if (rd.status == SupportStatus::optimal) fig.xd_boundary.emplace_back(rd.maximizer);
  }

  fig.grid_resolution = grid_resolution;
  fig.grid_lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  fig.grid_hi = Eigen::Vector2d::Constant(-std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < anchors.count(); ++i) {
    const double r = std::sqrt(std::max(bounds.upper(i), 0.0));
    fig.grid_lo = fig.grid_lo.cwiseMin((anchors.anchor(i).array() - r).matrix()).eval();
    fig.grid_hi = fig.grid_hi.cwiseMax((anchors.anchor(i).array() + r).matrix()).eval();
  }

  fig.true_membership.resize(static_cast<std::size_t>(grid_resolution) *
                             static_cast<std::size_t>(grid_resolution));
  for (int gy = 0; gy < grid_resolution; ++gy) {
    for (int gx = 0; gx < grid_resolution; ++gx) {
      Eigen::Vector2d p(
          fig.grid_lo(0) + (fig.grid_hi(0) - fig.grid_lo(0)) * gx / (grid_resolution - 1),
          fig.grid_lo(1) + (fig.grid_hi(1) - fig.grid_lo(1)) * gy / (grid_resolution - 1));
      fig.true_membership[static_cast<std::size_t>(gy) * grid_resolution + gx] =
          membership_true(p, anchors, bounds) ? 1 : 0;
    }
  }
  return fig;
}

inline nlohmann::json figure_json(const FigureData& fig) {
  nlohmann::json j;
  nlohmann::json annuli = nlohmann::json::array();
  for (const FigureAnnulus& a : fig.annuli)
    annuli.push_back({{"center", {a.center(0), a.center(1)}},
                      {"r_lower", json_number(a.r_lower)},
                      {"r_upper", json_number(a.r_upper)}});
  j["annuli"] = annuli;

  nlohmann::json halfspaces = nlohmann::json::array();
  for (Eigen::Index k = 0; k < fig.xd.rows(); ++k)
    halfspaces.push_back({{"normal", {fig.xd.normals(k, 0), fig.xd.normals(k, 1)}},
                          {"offset", json_number(fig.xd.offsets(k))},
                          {"pair", {fig.xd.pairs[static_cast<std::size_t>(k)].first,
                                    fig.xd.pairs[static_cast<std::size_t>(k)].second}}});
  j["xd_halfspaces"] = halfspaces;

  const auto points = [](const std::vector<Eigen::Vector2d>& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Eigen::Vector2d& p : pts) arr.push_back({p(0), p(1)});
    return arr;
  };
  j["x_boundary"] = points(fig.x_boundary);
  j["xd_boundary"] = points(fig.xd_boundary);
  j["grid"] = {{"resolution", fig.grid_resolution},
               {"lo", {fig.grid_lo(0), fig.grid_lo(1)}},
               {"hi", {fig.grid_hi(0), fig.grid_hi(1)}},
               {"true_membership", fig.true_membership}};
  return j;
}

}  // namespace locset
