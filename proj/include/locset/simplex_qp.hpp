#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace locset {

struct SimplexQpResult {
  Eigen::VectorXd p;  // global minimizer on the probability simplex
  double value = std::numeric_limits<double>::quiet_NaN();
};

/// Global minimum of f(p) = q^T p + p^T M p over the probability simplex
/// {p >= 0, sum p = 1}, with M positive semidefinite.
///
/// Exact active-set enumeration: every nonempty support set F is visited
/// (ascending bitmask order), the equality-constrained stationarity system
/// on the affine hull of the face is solved, and feasible stationary
/// points are compared. The first optimum found in enumeration order wins
/// ties, which makes the returned minimizer deterministic. Intended for
/// small m; the face count is 2^m - 1.
inline SimplexQpResult minimize_simplex_quadratic(const Eigen::MatrixXd& M,
                                                  const Eigen::VectorXd& q) {
  const Eigen::Index m = q.size();
  if (M.rows() != m || M.cols() != m)
    throw std::invalid_argument("minimize_simplex_quadratic: M/q size mismatch");
  if (m < 1)
    throw std::invalid_argument("minimize_simplex_quadratic: empty problem");
  if (m > 24)
    throw std::invalid_argument("minimize_simplex_quadratic: exact enumeration limited to m <= 24");

  const auto objective = [&](const Eigen::VectorXd& p) {
    return q.dot(p) + p.dot(M * p);
  };

  SimplexQpResult best;
  best.value = std::numeric_limits<double>::infinity();

  std::vector<int> support;
  support.reserve(static_cast<std::size_t>(m));
  const std::uint32_t n_faces = (1u << m);
  for (std::uint32_t mask = 1; mask < n_faces; ++mask) {
    support.clear();
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) support.push_back(i);
    const Eigen::Index k = static_cast<Eigen::Index>(support.size());

    Eigen::VectorXd p_face(k);
    if (k == 1) {
      p_face(0) = 1.0;
    } else {
      // Stationarity with multiplier nu for the sum constraint:
      //   2 M_FF p_F - nu 1 = -q_F,  1^T p_F = 1.
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
      Eigen::VectorXd rhs(k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b)
          kkt(a, b) = 2.0 * M(support[a], support[b]);
        kkt(a, k) = -1.0;
        kkt(k, a) = 1.0;
        rhs(a) = -q(support[a]);
      }
      rhs(k) = 1.0;

      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(kkt);
      const Eigen::VectorXd sol = cod.solve(rhs);
      // An inconsistent system means no stationary point on this face's
      // affine hull; the face minimum then lies on a subface.
      const double resid = (kkt * sol - rhs).norm();
      if (resid > 1e-9 * (1.0 + rhs.norm())) continue;
      p_face = sol.head(k);
      if ((p_face.array() < -1e-12).any()) continue;
    }

    Eigen::VectorXd p = Eigen::VectorXd::Zero(m);
    for (Eigen::Index a = 0; a < k; ++a)
      p(support[a]) = std::max(p_face(a), 0.0);
    p /= p.sum();

    const double value = objective(p);
    if (value < best.value) {
      best.value = value;
      best.p = p;
    }
  }
  return best;
}

}  // namespace locset
