#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "locset/anchor_geometry.hpp"
#include "locset/measurement.hpp"

namespace locset {

/// Polyhedron in halfspace form: normals.row(k) * x <= offsets(k).
/// For the difference polytope, row k is generated by an ordered anchor
/// pair (i, j), i != j, recorded in `pairs`.
struct HalfspacePolytope {
  Eigen::MatrixXd normals;               // K x n
  Eigen::VectorXd offsets;               // K
  std::vector<std::pair<int, int>> pairs;

  Eigen::Index rows() const { return normals.rows(); }
  Eigen::Index dim() const { return normals.cols(); }

  bool contains(const Eigen::VectorXd& x, double slack = 0.0) const {
    if (rows() == 0) return true;
    return ((normals * x - offsets).array() <= slack).all();
  }
};

namespace detail {

/// Rows q_i of Q_m A^T are the centered anchors (a_i - abar)^T.
inline Eigen::MatrixXd centered_rows(const AnchorSet& anchors) {
  const Eigen::VectorXd abar = anchors.centroid();
  return (anchors.coords().colwise() - abar).transpose();
}

/// (Q_m omega)_i = omega_i - mean(omega).
inline Eigen::VectorXd centered_squared_norms(const AnchorSet& anchors) {
  Eigen::VectorXd omega = anchors.squared_norms();
  omega.array() -= omega.mean();
  return omega;
}

}  // namespace detail

/// Difference polytope of an interval measurement set: one constraint
/// 2 (q_i - q_j)^T x <= xi_hi_j - xi_lo_i - (Q omega)_j + (Q omega)_i per
/// ordered pair i != j. All m(m-1) rows are kept; no redundancy pruning.
inline HalfspacePolytope build_xd(const AnchorSet& anchors,
                                  const IntervalBounds& bounds) {
  const Eigen::Index m = anchors.count();
  if (m < 2) throw std::invalid_argument("build_xd: need at least two anchors");
  if (bounds.count() != m)
    throw std::invalid_argument("build_xd: bounds/anchors count mismatch");

  const Eigen::MatrixXd q = detail::centered_rows(anchors);
  const Eigen::VectorXd qo = detail::centered_squared_norms(anchors);

  HalfspacePolytope poly;
  poly.normals.resize(m * (m - 1), anchors.dim());
  poly.offsets.resize(m * (m - 1));
  poly.pairs.reserve(static_cast<std::size_t>(m * (m - 1)));
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j) continue;
      poly.normals.row(row) = 2.0 * (q.row(i) - q.row(j));
      poly.offsets(row) = bounds.upper(j) - bounds.lower(i) - qo(j) + qo(i);
      poly.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      ++row;
    }
  }
  return poly;
}

/// Membership in the difference polytope by interval overlap: with
/// l_i(x) = xi_lo_i - (Q omega)_i + 2 q_i^T x and u_i(x) the same with the
/// upper bound, x is a member iff max_i l_i(x) <= min_j u_j(x). Agrees
/// with halfspace evaluation of build_xd on every point.
inline bool membership_xd_intervals(const Eigen::VectorXd& x,
                                    const AnchorSet& anchors,
                                    const IntervalBounds& bounds) {
  if (x.size() != anchors.dim())
    throw std::invalid_argument("membership_xd_intervals: point dimension mismatch");
  if (bounds.count() != anchors.count())
    throw std::invalid_argument("membership_xd_intervals: bounds/anchors count mismatch");
  const Eigen::MatrixXd q = detail::centered_rows(anchors);
  const Eigen::VectorXd qo = detail::centered_squared_norms(anchors);
  const Eigen::VectorXd shift = 2.0 * (q * x) - qo;
  const double max_lower = (bounds.lower() + shift).maxCoeff();
  const double min_upper = (bounds.upper() + shift).minCoeff();
  return max_lower <= min_upper;
}

/// Directional width bound of the difference polytope along unit v:
/// (1/2) w^T |Q_m A^T S(A)^{-1} v|. Input v is normalized; a zero vector
/// is rejected. Degenerate S yields the +infinity sentinel.
inline double width_bound_xd(const AnchorSet& anchors,
                             const Eigen::VectorXd& widths,
                             const Eigen::VectorXd& v) {
  if (widths.size() != anchors.count())
    throw std::invalid_argument("width_bound_xd: widths length mismatch");
  if ((widths.array() < 0).any())
    throw std::invalid_argument("width_bound_xd: widths must be nonnegative");
  if (v.size() != anchors.dim())
    throw std::invalid_argument("width_bound_xd: direction dimension mismatch");
  const double vnorm = v.norm();
  if (!(vnorm > 0)) throw std::invalid_argument("width_bound_xd: zero direction");

  const ScatterInfo s = scatter_matrix(anchors);
  if (s.singular()) return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd y = s.matrix.ldlt().solve(v / vnorm);
  const Eigen::MatrixXd q = detail::centered_rows(anchors);
  return 0.5 * widths.dot((q * y).cwiseAbs());
}

/// Diameter bound ||w||_2 / (2 sqrt(lambda_min(S))); +infinity when S is
/// degenerate. Dominates width_bound_xd for every unit direction.
inline double diam_bound_xd(const AnchorSet& anchors,
                            const Eigen::VectorXd& widths) {
  if (widths.size() != anchors.count())
    throw std::invalid_argument("diam_bound_xd: widths length mismatch");
  if ((widths.array() < 0).any())
    throw std::invalid_argument("diam_bound_xd: widths must be nonnegative");
  const ScatterInfo s = scatter_matrix(anchors);
  if (s.singular()) return std::numeric_limits<double>::infinity();
  return widths.norm() / (2.0 * std::sqrt(s.lambda_min()));
}

/// Principal-axis volume bound (||w||_2 / 2)^n / sqrt(det S); +infinity
/// when S is degenerate.
inline double det_vol_bound(const AnchorSet& anchors,
                            const Eigen::VectorXd& widths) {
  if (widths.size() != anchors.count())
    throw std::invalid_argument("det_vol_bound: widths length mismatch");
  if ((widths.array() < 0).any())
    throw std::invalid_argument("det_vol_bound: widths must be nonnegative");
  const ScatterInfo s = scatter_matrix(anchors);
  if (s.singular()) return std::numeric_limits<double>::infinity();
  const double det = s.eigenvalues.prod();
  return std::pow(0.5 * widths.norm(), static_cast<double>(anchors.dim())) /
         std::sqrt(det);
}

}  // namespace locset
