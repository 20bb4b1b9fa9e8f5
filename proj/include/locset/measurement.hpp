#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "locset/anchor_geometry.hpp"
#include "locset/rng.hpp"

namespace locset {

/// Per-anchor squared-range interval [xi_lo_i, xi_hi_i]. Lower bounds may
/// be negative (the corresponding annulus constraint is then vacuous);
/// they are kept as-is so interval widths stay exact.
class IntervalBounds {
 public:
  IntervalBounds(Eigen::VectorXd lower, Eigen::VectorXd upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size())
      throw std::invalid_argument("IntervalBounds: lower/upper length mismatch");
    if (lower_.size() < 1)
      throw std::invalid_argument("IntervalBounds: need at least one interval");
    if (!lower_.allFinite() || !upper_.allFinite())
      throw std::invalid_argument("IntervalBounds: bounds must be finite");
    if ((lower_.array() > upper_.array()).any())
      throw std::invalid_argument("IntervalBounds: lower bound exceeds upper bound");
  }

  Eigen::Index count() const { return lower_.size(); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  double lower(Eigen::Index i) const { return lower_(i); }
  double upper(Eigen::Index i) const { return upper_(i); }

  Eigen::VectorXd widths() const { return upper_ - lower_; }

  IntervalBounds subset(const std::vector<int>& indices) const {
    Eigen::VectorXd lo(static_cast<Eigen::Index>(indices.size()));
    Eigen::VectorXd hi(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (indices[j] < 0 || indices[j] >= count())
        throw std::invalid_argument("IntervalBounds::subset: index out of range");
      lo(static_cast<Eigen::Index>(j)) = lower_(indices[j]);
      hi(static_cast<Eigen::Index>(j)) = upper_(indices[j]);
    }
    return IntervalBounds(std::move(lo), std::move(hi));
  }

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

/// Squared-range interval measurements of `target` from every anchor:
/// xi_i in [d_i^2 - delta, d_i^2 + delta]. Every width equals 2*delta.
inline IntervalBounds make_intervals(const Eigen::VectorXd& target,
                                     const AnchorSet& anchors, double delta) {
  if (target.size() != anchors.dim())
    throw std::invalid_argument("make_intervals: target dimension mismatch");
  if (!target.allFinite())
    throw std::invalid_argument("make_intervals: target must be finite");
  if (!(delta >= 0))
    throw std::invalid_argument("make_intervals: delta must be nonnegative");
  const Eigen::Index m = anchors.count();
  Eigen::VectorXd lo(m), hi(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double d2 = (target - anchors.anchor(i)).squaredNorm();
    lo(i) = d2 - delta;
    hi(i) = d2 + delta;
  }
  return IntervalBounds(std::move(lo), std::move(hi));
}

/// Membership in the true (nonconvex) feasible set: the intersection of
/// the m spherical annuli xi_lo_i <= ||x - a_i||^2 <= xi_hi_i. Closed set,
/// boundary points included.
inline bool membership_true(const Eigen::VectorXd& x, const AnchorSet& anchors,
                            const IntervalBounds& bounds) {
  if (x.size() != anchors.dim())
    throw std::invalid_argument("membership_true: point dimension mismatch");
  if (bounds.count() != anchors.count())
    throw std::invalid_argument("membership_true: bounds/anchors count mismatch");
  for (Eigen::Index i = 0; i < anchors.count(); ++i) {
    const double d2 = (x - anchors.anchor(i)).squaredNorm();
    if (d2 < bounds.lower(i) || d2 > bounds.upper(i)) return false;
  }
  return true;
}

/// Total proposal budget of the rejection sampler, per call.
inline constexpr int kSampleProposalBudget = 1'000'000;

/// Rejection sampling of the true feasible set from the bounding box of
/// the upper balls. Deterministic given the seed. May return fewer than
/// `count` points (empty result = no hit within the proposal budget).
inline std::vector<Eigen::VectorXd> sample_true_set(const AnchorSet& anchors,
                                                    const IntervalBounds& bounds,
                                                    int count,
                                                    std::uint64_t seed) {
  if (bounds.count() != anchors.count())
    throw std::invalid_argument("sample_true_set: bounds/anchors count mismatch");
  std::vector<Eigen::VectorXd> hits;
  if (count <= 0) return hits;
  // An upper bound below zero makes its annulus (and the whole set) empty.
  if ((bounds.upper().array() < 0).any()) return hits;

  const Eigen::Index n = anchors.dim();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < anchors.count(); ++i) {
    const double r = std::sqrt(std::max(bounds.upper(i), 0.0));
    lo = lo.cwiseMin((anchors.anchor(i).array() - r).matrix());
    hi = hi.cwiseMax((anchors.anchor(i).array() + r).matrix());
  }

  rng::Xoshiro256 gen(seed);
  Eigen::VectorXd x(n);
  hits.reserve(static_cast<std::size_t>(count));
  for (int attempt = 0; attempt < kSampleProposalBudget; ++attempt) {
    for (Eigen::Index j = 0; j < n; ++j) x(j) = gen.uniform(lo(j), hi(j));
    if (membership_true(x, anchors, bounds)) {
      hits.push_back(x);
      if (static_cast<int>(hits.size()) == count) break;
    }
  }
  return hits;
}

}  // namespace locset
