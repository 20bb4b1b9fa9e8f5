#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "locset/anchor_geometry.hpp"
#include "locset/difference_polytope.hpp"
#include "locset/measurement.hpp"
#include "locset/simplex_qp.hpp"
#include "locset/support.hpp"

namespace locset {

/// Probability-simplex weight: entries >= -1e-12 (clamped to zero), sum
/// within 1e-10 of one.
class SimplexWeight {
 public:
  SimplexWeight() = default;

  explicit SimplexWeight(Eigen::VectorXd p) : p_(std::move(p)) {
    if (p_.size() < 1)
      throw std::invalid_argument("SimplexWeight: empty weight");
    if ((p_.array() < -1e-12).any())
      throw std::invalid_argument("SimplexWeight: negative entry");
    p_ = p_.cwiseMax(0.0);
    if (std::abs(p_.sum() - 1.0) > 1e-10)
      throw std::invalid_argument("SimplexWeight: entries must sum to one");
  }

  static SimplexWeight uniform(Eigen::Index m) {
    return SimplexWeight(Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)));
  }

  static SimplexWeight pair(Eigen::Index i, Eigen::Index j, Eigen::Index m) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(m);
    p(i) = 0.5;
    p(j) = 0.5;
    return SimplexWeight(std::move(p));
  }

  const Eigen::VectorXd& values() const { return p_; }
  Eigen::Index size() const { return p_.size(); }

 private:
  Eigen::VectorXd p_;
};

/// Weighted enclosing-ball certificate for H. When the weighted
/// relaxation proves H empty, `empty` is set and the (negative) squared
/// radius is kept for diagnostics; it is never square-rooted.
struct BallCertificate {
  Eigen::VectorXd center;
  double radius = std::numeric_limits<double>::quiet_NaN();
  SimplexWeight weight;
  double rho_squared = std::numeric_limits<double>::quiet_NaN();
  bool empty = false;
};

struct SupportHResult {
  SupportStatus status = SupportStatus::solver_failure;
  double value = std::numeric_limits<double>::quiet_NaN();
  bool degenerate_interior = false;  // rho_star ~ 0: H has (near-)empty interior

  bool ok() const {
    return status == SupportStatus::optimal ||
           status == SupportStatus::degenerate_tolerance;
  }
};

namespace detail {

inline void check_pair(const AnchorSet& anchors, const IntervalBounds& bounds) {
  if (bounds.count() != anchors.count())
    throw std::invalid_argument("ball certificates: bounds/anchors count mismatch");
}

inline double xi_scale(const IntervalBounds& bounds, const AnchorSet& anchors) {
  return 1.0 + bounds.upper().cwiseAbs().maxCoeff() +
         anchors.squared_norms().maxCoeff();
}

inline BallCertificate make_certificate(const AnchorSet& anchors,
                                        SimplexWeight weight, double rho2,
                                        double scale) {
  BallCertificate cert;
  cert.center = anchors.coords() * weight.values();
  cert.weight = std::move(weight);
  cert.rho_squared = rho2;
  cert.empty = rho2 < -1e-12 * scale;
  if (!cert.empty) cert.radius = std::sqrt(std::max(rho2, 0.0));
  return cert;
}

}  // namespace detail

/// Enclosing ball of H for a simplex weight p: center Ap and squared
/// radius p'(xi_hi - omega) + ||Ap||^2. The equivalent pairwise-distance
/// form is evaluated as an internal consistency check.
inline BallCertificate rho(const SimplexWeight& p, const AnchorSet& anchors,
                           const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  if (p.size() != anchors.count())
    throw std::invalid_argument("rho: weight length mismatch");

  const Eigen::VectorXd omega = anchors.squared_norms();
  const Eigen::VectorXd& pv = p.values();
  const double rho2 = pv.dot(bounds.upper() - omega) +
                      (anchors.coords() * pv).squaredNorm();

  double rho2_pairwise = pv.dot(bounds.upper());
  for (Eigen::Index i = 0; i < anchors.count(); ++i)
    for (Eigen::Index j = 0; j < anchors.count(); ++j)
      rho2_pairwise -= 0.5 * pv(i) * pv(j) *
                       (anchors.anchor(i) - anchors.anchor(j)).squaredNorm();
  const double scale = detail::xi_scale(bounds, anchors);
  if (std::abs(rho2 - rho2_pairwise) > 1e-9 * scale)
    throw std::runtime_error("rho: pairwise-distance identity violated");

  return detail::make_certificate(anchors, p, rho2, scale);
}

/// Uniform-weight ball, via the trace shortcut mean(xi_hi) - tr S / m.
inline BallCertificate rho_uniform(const AnchorSet& anchors,
                                   const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  const BallCertificate cert =
      rho(SimplexWeight::uniform(anchors.count()), anchors, bounds);
  const ScatterInfo s = scatter_matrix(anchors);
  const double shortcut =
      bounds.upper().mean() -
      s.matrix.trace() / static_cast<double>(anchors.count());
  if (std::abs(shortcut - cert.rho_squared) >
      1e-12 * detail::xi_scale(bounds, anchors))
    throw std::runtime_error("rho_uniform: trace identity violated");
  return cert;
}

/// Two-anchor lens ball: (xi_hi_i + xi_hi_j)/2 - ||a_i - a_j||^2 / 4.
/// Disjoint balls certify emptiness (negative squared radius).
inline BallCertificate rho_pair(Eigen::Index i, Eigen::Index j,
                                const AnchorSet& anchors,
                                const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  if (i == j) throw std::invalid_argument("rho_pair: indices must differ");
  if (i < 0 || j < 0 || i >= anchors.count() || j >= anchors.count())
    throw std::invalid_argument("rho_pair: index out of range");
  const BallCertificate cert =
      rho(SimplexWeight::pair(i, j, anchors.count()), anchors, bounds);
  const double shortcut =
      0.5 * (bounds.upper(i) + bounds.upper(j)) -
      0.25 * (anchors.anchor(i) - anchors.anchor(j)).squaredNorm();
  if (std::abs(shortcut - cert.rho_squared) >
      1e-12 * detail::xi_scale(bounds, anchors))
    throw std::runtime_error("rho_pair: lens identity violated");
  return cert;
}

/// Smallest aggregated enclosing ball over all simplex weights. Globally
/// optimal (exact face enumeration of the convex QP); 2 * radius bounds
/// the diameter of X whenever H is nonempty. Ties between optimal weights
/// resolve to the first face in enumeration order.
inline BallCertificate rho_star(const AnchorSet& anchors,
                                const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  const Eigen::MatrixXd gram =
      anchors.coords().transpose() * anchors.coords();
  const Eigen::VectorXd q = bounds.upper() - anchors.squared_norms();
  const SimplexQpResult opt = minimize_simplex_quadratic(gram, q);
  return detail::make_certificate(anchors, SimplexWeight(opt.p), opt.value,
                                  detail::xi_scale(bounds, anchors));
}

/// Support function of H along v, computed as the primal ball SOCP.
/// Slater's condition is checked through rho_star: an empty certificate
/// reports infeasibility, a zero-radius one flags a degenerate interior
/// (the primal value is still returned in that case).
inline SupportHResult support_H(const Eigen::VectorXd& v,
                                const AnchorSet& anchors,
                                const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  if (v.size() != anchors.dim())
    throw std::invalid_argument("support_H: direction dimension mismatch");
  if (!(v.norm() > 0)) throw std::invalid_argument("support_H: zero direction");

  SupportHResult res;
  if ((bounds.upper().array() < 0).any()) {
    res.status = SupportStatus::infeasible;
    return res;
  }
  const BallCertificate star = rho_star(anchors, bounds);
  if (star.empty) {
    res.status = SupportStatus::infeasible;
    return res;
  }
  res.degenerate_interior =
      star.rho_squared <= 1e-10 * detail::xi_scale(bounds, anchors);

  const SupportResult primal =
      support(ConvexSpec::upper_balls(anchors, bounds), v);
  res.status = primal.status;
  res.value = primal.value;
  return res;
}

/// Directional width of H: h_H(v) + h_H(-v).
inline SupportHResult psi_H(const Eigen::VectorXd& v, const AnchorSet& anchors,
                            const IntervalBounds& bounds) {
  const SupportHResult plus = support_H(v, anchors, bounds);
  if (!plus.ok()) return plus;
  const SupportHResult minus = support_H(-v, anchors, bounds);
  if (!minus.ok()) return minus;
  SupportHResult res;
  res.status = (plus.status == SupportStatus::degenerate_tolerance ||
                minus.status == SupportStatus::degenerate_tolerance)
                   ? SupportStatus::degenerate_tolerance
                   : SupportStatus::optimal;
  res.value = plus.value + minus.value;
  res.degenerate_interior = plus.degenerate_interior || minus.degenerate_interior;
  return res;
}

/// Simplex form of the support function of H:
///   h_H(v) = min_p { v'Ap + ||v|| rho(p) }
/// evaluated through its lifted version min_{t>0, p} v'Ap + ||v||^2/(4t)
/// + t rho(p)^2, with the inner problem solved exactly per t and a golden
/// section on log t. Independent of the SOCP path; serves as its oracle.
inline double support_H_simplex_form(const Eigen::VectorXd& v,
                                     const AnchorSet& anchors,
                                     const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  if (!(v.norm() > 0))
    throw std::invalid_argument("support_H_simplex_form: zero direction");
  const Eigen::MatrixXd gram =
      anchors.coords().transpose() * anchors.coords();
  const Eigen::VectorXd av = anchors.coords().transpose() * v;
  const Eigen::VectorXd q0 = bounds.upper() - anchors.squared_norms();
  const double vnorm2 = v.squaredNorm();

  const auto value_at = [&](double log_t) {
    const double t = std::exp(log_t);
    const SimplexQpResult inner =
        minimize_simplex_quadratic(t * gram, av + t * q0);
    return inner.value + vnorm2 / (4.0 * t);
  };

  double lo = -40.0, hi = 40.0;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  for (int it = 0; it < 140; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = value_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = value_at(x2);
    }
  }
  return std::min(f1, f2);
}

/// Closed-form surrogate width of H from per-ball supports:
/// min_i {v'a_i + sqrt(xi_hi_i)} - max_i {v'a_i - sqrt(xi_hi_i)}.
/// Always at least psi_H(v). Input is normalized to a unit vector.
inline WidthResult beta_H(const Eigen::VectorXd& v, const AnchorSet& anchors,
                          const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  if (v.size() != anchors.dim())
    throw std::invalid_argument("beta_H: direction dimension mismatch");
  const double vnorm = v.norm();
  if (!(vnorm > 0)) throw std::invalid_argument("beta_H: zero direction");
  if ((bounds.upper().array() < 0).any())
    return {SupportStatus::infeasible, std::numeric_limits<double>::quiet_NaN()};

  const Eigen::VectorXd vu = v / vnorm;
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < anchors.count(); ++i) {
    const double proj = vu.dot(anchors.anchor(i));
    const double r = std::sqrt(bounds.upper(i));
    upper = std::min(upper, proj + r);
    lower = std::max(lower, proj - r);
  }
  return {SupportStatus::optimal, upper - lower};
}

/// Hybrid directional width: the smaller of the polyhedral bound and the
/// ball-support width. Requires at least one branch to be finite.
inline double hybrid_width(const Eigen::VectorXd& v, const AnchorSet& anchors,
                           const IntervalBounds& bounds) {
  const double poly = width_bound_xd(anchors, bounds.widths(), v);
  const SupportHResult ball = psi_H(v, anchors, bounds);
  const double ball_width =
      ball.ok() ? ball.value : std::numeric_limits<double>::infinity();
  const double result = std::min(poly, ball_width);
  if (!std::isfinite(result))
    throw std::runtime_error(
        "hybrid_width: degenerate geometry and no ball certificate (both branches infinite)");
  return result;
}

/// Orthogonal box certificate aligned with the scatter eigenbasis.
struct HybridBox {
  Eigen::MatrixXd axes;   // columns u_j, ascending eigenvalue order
  Eigen::VectorXd sides;  // b_j
  double diam_bound = std::numeric_limits<double>::quiet_NaN();
  double vol_bound = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd center;
  bool centered_exact = false;
};

/// Box sides b_j = min(||w|| / (2 sqrt(lambda_j)), psi_H(u_j)); the
/// polyhedral branch is skipped for eigenvalues below the degeneracy
/// threshold. The box is anchored at the exact support midpoints of X
/// along each axis when those solves succeed, else at the rho_star
/// center (the bound itself constrains only the side lengths).
inline HybridBox hybrid_box(const AnchorSet& anchors,
                            const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  const ScatterInfo s = scatter_matrix(anchors);
  const double wnorm = bounds.widths().norm();
  const Eigen::Index n = anchors.dim();

  HybridBox box;
  box.axes = s.eigenvectors;
  box.sides.resize(n);

  const double eig_floor = kScatterSingularTol * std::max(1.0, s.lambda_max());
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lam = s.eigenvalues(j);
    const double poly = lam > eig_floor
                            ? wnorm / (2.0 * std::sqrt(lam))
                            : std::numeric_limits<double>::infinity();
    const SupportHResult ball = psi_H(box.axes.col(j), anchors, bounds);
    const double ball_width =
        ball.ok() ? ball.value : std::numeric_limits<double>::infinity();
    box.sides(j) = std::min(poly, ball_width);
  }
  box.diam_bound = std::sqrt(box.sides.squaredNorm());
  box.vol_bound = box.sides.prod();

  const ConvexSpec x_spec = ConvexSpec::localization_set(anchors, bounds);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
  bool exact = true;
  for (Eigen::Index j = 0; j < n && exact; ++j) {
    const SupportResult up = support(x_spec, box.axes.col(j));
    const SupportResult dn = support(x_spec, -box.axes.col(j));
    if (up.ok() && dn.ok())
      center += 0.5 * (up.value - dn.value) * box.axes.col(j);
    else
      exact = false;
  }
  if (exact) {
    box.center = center;
    box.centered_exact = true;
  } else {
    box.center = rho_star(anchors, bounds).center;
    box.centered_exact = false;
  }
  return box;
}

/// Coordinate-axis hybrid box bound: product over axes of the hybrid
/// width min(polyhedral, psi_H). Upper-bounds the exact coordinate-box
/// volume of X; +infinity when some axis has no finite branch.
inline double hybrid_coord_box_bound(const AnchorSet& anchors,
                                     const IntervalBounds& bounds) {
  detail::check_pair(anchors, bounds);
  const Eigen::VectorXd widths = bounds.widths();
  double product = 1.0;
  for (Eigen::Index j = 0; j < anchors.dim(); ++j) {
    Eigen::VectorXd axis = Eigen::VectorXd::Zero(anchors.dim());
    axis(j) = 1.0;
    const double poly = width_bound_xd(anchors, widths, axis);
    const SupportHResult ball = psi_H(axis, anchors, bounds);
    const double ball_width =
        ball.ok() ? ball.value : std::numeric_limits<double>::infinity();
    const double side = std::min(poly, ball_width);
    if (!std::isfinite(side)) return std::numeric_limits<double>::infinity();
    product *= side;
  }
  return product;
}

}  // namespace locset
