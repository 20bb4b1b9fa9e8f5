#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace locset {

/// Relative threshold below which the scatter matrix is treated as
/// singular: lambda_min <= tol * max(1, lambda_max).
inline constexpr double kScatterSingularTol = 1e-12;

/// Ordered set of reference positions ("anchors"), one per column of an
/// n x m coordinate matrix. Column order is significant and stable.
class AnchorSet {
 public:
  explicit AnchorSet(Eigen::MatrixXd coords) : coords_(std::move(coords)) {
    if (coords_.rows() < 1 || coords_.cols() < 1)
      throw std::invalid_argument("AnchorSet: need at least one anchor in R^n, n >= 1");
    if (!coords_.allFinite())
      throw std::invalid_argument("AnchorSet: coordinates must be finite");
  }

  Eigen::Index dim() const { return coords_.rows(); }
  Eigen::Index count() const { return coords_.cols(); }
  const Eigen::MatrixXd& coords() const { return coords_; }
  Eigen::VectorXd anchor(Eigen::Index i) const { return coords_.col(i); }

  Eigen::VectorXd centroid() const { return coords_.rowwise().mean(); }

  /// Per-anchor squared norms ||a_i||^2.
  Eigen::VectorXd squared_norms() const {
    return coords_.colwise().squaredNorm().transpose();
  }

  /// Sub-selection by column indices (order preserved as given).
  AnchorSet subset(const std::vector<int>& indices) const {
    Eigen::MatrixXd sub(dim(), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (indices[j] < 0 || indices[j] >= count())
        throw std::invalid_argument("AnchorSet::subset: index out of range");
      sub.col(static_cast<Eigen::Index>(j)) = coords_.col(indices[j]);
    }
    return AnchorSet(std::move(sub));
  }

 private:
  Eigen::MatrixXd coords_;
};

/// Centered scatter matrix of an anchor set together with its spectral
/// data. Eigenvalues are sorted ascending; eigenvector columns match.
struct ScatterInfo {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd centroid;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  double lambda_min() const { return eigenvalues(0); }
  double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }

  bool singular() const {
    return lambda_min() <= kScatterSingularTol * std::max(1.0, lambda_max());
  }
};

/// Centering projector I_m - (1/m) 11^T. Idempotent, symmetric,
/// annihilates the all-ones vector. Formed explicitly only for tests and
/// small utilities; production paths use the centered summation instead.
inline Eigen::MatrixXd centering_projector(Eigen::Index m) {
  if (m < 1) throw std::invalid_argument("centering_projector: m must be >= 1");
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(m, m);
  q.array() -= 1.0 / static_cast<double>(m);
  return q;
}

/// S(A) = sum_i (a_i - abar)(a_i - abar)^T, with eigendecomposition.
inline ScatterInfo scatter_matrix(const AnchorSet& anchors) {
  const Eigen::VectorXd abar = anchors.centroid();
  const Eigen::MatrixXd centered = anchors.coords().colwise() - abar;
  ScatterInfo info;
  info.matrix = centered * centered.transpose();
  info.centroid = abar;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info.matrix);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("scatter_matrix: eigendecomposition failed");
  info.eigenvalues = eig.eigenvalues();
  info.eigenvectors = eig.eigenvectors();
  return info;
}

/// Smallest eigenvalue of S(A). Exactly 0 for anchors confined to a
/// proper affine subspace (degenerate geometry is a valid value here).
inline double e_score(const AnchorSet& anchors) {
  const ScatterInfo s = scatter_matrix(anchors);
  return s.singular() ? 0.0 : s.lambda_min();
}

/// det S(A), computed as the eigenvalue product; 0 for degenerate sets.
inline double d_score(const AnchorSet& anchors) {
  const ScatterInfo s = scatter_matrix(anchors);
  if (s.singular()) return 0.0;
  return s.eigenvalues.prod();
}

struct WeightedScores {
  double e;  // ||w||^2 / lambda_min(S)
  double d;  // ||w||^(2n) / det S
};

/// Width-weighted design scores. Degenerate S yields an infinite pair.
inline WeightedScores weighted_scores(const AnchorSet& anchors,
                                      const Eigen::VectorXd& widths) {
  if (widths.size() != anchors.count())
    throw std::invalid_argument("weighted_scores: widths length must match anchor count");
  if ((widths.array() < 0).any())
    throw std::invalid_argument("weighted_scores: widths must be nonnegative");
  const ScatterInfo s = scatter_matrix(anchors);
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (s.singular()) return {inf, inf};
  const double w2 = widths.squaredNorm();
  const double det = s.eigenvalues.prod();
  return {w2 / s.lambda_min(),
          std::pow(w2, static_cast<double>(anchors.dim())) / det};
}

}  // namespace locset
