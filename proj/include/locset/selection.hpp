#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locset/anchor_geometry.hpp"
#include "locset/ball_certificates.hpp"
#include "locset/measurement.hpp"
#include "locset/support.hpp"

namespace locset {

enum class ScorePolicy { E, D };

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order;
/// each subset is sorted ascending.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 1 || k > n) throw std::invalid_argument("for_each_subset: need 1 <= k <= n");
  std::vector<int> subset(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(const_cast<const std::vector<int>&>(subset));
    int i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// All C(n, k) subsets, lexicographic.
inline std::vector<std::vector<int>> enumerate_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for_each_subset(n, k, [&](const std::vector<int>& s) { out.push_back(s); });
  return out;
}

struct SubsetEvaluation {
  std::vector<int> indices;
  double e_score = 0.0;
  double d_score = 0.0;
  std::optional<double> box_area;
  std::optional<double> hybrid_bound;
};

namespace detail {

struct ScorePair {
  double e = 0.0;
  double d = 0.0;
  double of(ScorePolicy p) const { return p == ScorePolicy::E ? e : d; }
};

inline ScorePair subset_scores(const AnchorSet& pool,
                               const std::vector<int>& subset) {
  const ScatterInfo s = scatter_matrix(pool.subset(subset));
  if (s.singular()) return {0.0, 0.0};
  return {s.lambda_min(), s.eigenvalues.prod()};
}

}  // namespace detail

/// Exhaustive maximization of the chosen geometry score over all
/// k-subsets of the pool. Ties resolve to the lexicographically smallest
/// index list; degenerate (zero-score) subsets can only win when every
/// subset is degenerate.
inline SubsetEvaluation select_offline(const AnchorSet& pool, int k,
                                       ScorePolicy policy) {
  SubsetEvaluation best;
  double best_score = -1.0;
  for_each_subset(static_cast<int>(pool.count()), k,
                  [&](const std::vector<int>& subset) {
                    const detail::ScorePair sc = detail::subset_scores(pool, subset);
                    if (sc.of(policy) > best_score) {
                      best_score = sc.of(policy);
                      best.indices = subset;
                      best.e_score = sc.e;
                      best.d_score = sc.d;
                    }
                  });
  return best;
}

/// Greedy scaling path: exhaustive seed over the (n+1)-subsets, then one
/// candidate added per round by best score (first index wins ties). For
/// k <= n+1 this is the exhaustive search itself.
inline SubsetEvaluation select_greedy(const AnchorSet& pool, int k,
                                      ScorePolicy policy) {
  const int n = static_cast<int>(pool.dim());
  const int pool_n = static_cast<int>(pool.count());
  if (k < 1 || k > pool_n)
    throw std::invalid_argument("select_greedy: need 1 <= k <= pool size");
  if (k <= n + 1) return select_offline(pool, k, policy);

  std::vector<int> current = select_offline(pool, n + 1, policy).indices;
  std::vector<bool> used(static_cast<std::size_t>(pool_n), false);
  for (int i : current) used[static_cast<std::size_t>(i)] = true;

  while (static_cast<int>(current.size()) < k) {
    int best_candidate = -1;
    double best_score = -1.0;
    for (int c = 0; c < pool_n; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      std::vector<int> trial = current;
      trial.push_back(c);
      std::sort(trial.begin(), trial.end());
      const double score = detail::subset_scores(pool, trial).of(policy);
      if (score > best_score) {
        best_score = score;
        best_candidate = c;
      }
    }
    current.push_back(best_candidate);
    std::sort(current.begin(), current.end());
    used[static_cast<std::size_t>(best_candidate)] = true;
  }

  SubsetEvaluation out;
  out.indices = current;
  const detail::ScorePair sc = detail::subset_scores(pool, current);
  out.e_score = sc.e;
  out.d_score = sc.d;
  return out;
}

/// Per-subset record of one policy-comparison trial. Box areas use the
/// +infinity sentinel when X is infeasible, unbounded, or the solve
/// failed; such subsets are excluded from the oracle argmin and from the
/// average-subset statistic, and counted.
struct SubsetRecord {
  std::vector<int> indices;
  double e_score = 0.0;
  double d_score = 0.0;
  double box_area = std::numeric_limits<double>::infinity();
  double hybrid_bound = std::numeric_limits<double>::infinity();
  SupportStatus box_status = SupportStatus::solver_failure;
};

struct PolicyEvaluation {
  std::vector<SubsetRecord> records;  // lexicographic subset order
  int oracle = -1;    // argmin exact box area (-1 when no subset is finite)
  int d_winner = -1;  // argmax det score
  int e_winner = -1;  // argmax lambda_min score
  double mean_box_area = std::numeric_limits<double>::quiet_NaN();
  int excluded_count = 0;
  std::uint64_t seed = 0;  // provenance metadata only
  // The oracle metric is the exact coordinate-aligned box area of X
  // (not a diameter); recorded here to keep outputs unambiguous.
  static constexpr const char* kOracleMetric = "exact_coordinate_box_area";
};

/// One full offline-vs-online comparison trial: every k-subset of the
/// pool is scored offline (E/D) and measured online (exact coordinate box
/// of X and the hybrid coordinate-box bound).
inline PolicyEvaluation evaluate_policies(const AnchorSet& pool, int k,
                                          const Eigen::VectorXd& target,
                                          double delta,
                                          std::uint64_t seed = 0) {
  if (k < 2 || k > pool.count())
    throw std::invalid_argument("evaluate_policies: need 2 <= k <= pool size");
  const IntervalBounds pool_bounds = make_intervals(target, pool, delta);

  PolicyEvaluation out;
  out.seed = seed;
  double area_sum = 0.0;
  int area_count = 0;
  double best_area = std::numeric_limits<double>::infinity();
  double best_e = -1.0, best_d = -1.0;

  int index = 0;
  for_each_subset(static_cast<int>(pool.count()), k,
                  [&](const std::vector<int>& subset) {
    SubsetRecord rec;
    rec.indices = subset;
    const AnchorSet sub_anchors = pool.subset(subset);
    const IntervalBounds sub_bounds = pool_bounds.subset(subset);
    const detail::ScorePair sc = detail::subset_scores(pool, subset);
    rec.e_score = sc.e;
    rec.d_score = sc.d;

    const BoxResult box =
        coord_box(ConvexSpec::localization_set(sub_anchors, sub_bounds));
    rec.box_status = box.status;
    if (box.status == SupportStatus::optimal ||
        box.status == SupportStatus::degenerate_tolerance) {
      rec.box_area = box.volume();
      area_sum += rec.box_area;
      ++area_count;
      if (rec.box_area < best_area) {
        best_area = rec.box_area;
        out.oracle = index;
      }
    } else {
      ++out.excluded_count;
    }
    rec.hybrid_bound = hybrid_coord_box_bound(sub_anchors, sub_bounds);

    if (rec.d_score > best_d) {
      best_d = rec.d_score;
      out.d_winner = index;
    }
    if (rec.e_score > best_e) {
      best_e = rec.e_score;
      out.e_winner = index;
    }
    out.records.push_back(std::move(rec));
    ++index;
  });

  if (area_count > 0) out.mean_box_area = area_sum / area_count;
  return out;
}

}  // namespace locset
