#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "locset/difference_polytope.hpp"
#include "locset/measurement.hpp"
#include "locset/socp.hpp"

namespace locset {

/// Euclidean ball. A negative radius marks a certified-empty ball (used
/// when a squared-range upper bound is negative); every query on a spec
/// containing one reports infeasibility.
struct Ball {
  Eigen::VectorXd center;
  double radius = 0.0;
};

/// Convex set given as an intersection of halfspaces and balls. Either
/// list may be empty, but not both.
struct ConvexSpec {
  Eigen::Index dim = 0;
  HalfspacePolytope halfspaces;  // zero rows allowed
  std::vector<Ball> balls;

  /// X = X_d intersected with the upper-range balls.
  static ConvexSpec localization_set(const AnchorSet& anchors,
                                     const IntervalBounds& bounds) {
    ConvexSpec spec = upper_balls(anchors, bounds);
    spec.halfspaces = build_xd(anchors, bounds);
    return spec;
  }

  /// The difference polytope X_d alone.
  static ConvexSpec polytope_only(const AnchorSet& anchors,
                                  const IntervalBounds& bounds) {
    ConvexSpec spec;
    spec.dim = anchors.dim();
    spec.halfspaces = build_xd(anchors, bounds);
    return spec;
  }

  /// H: intersection of the upper-range balls around each anchor.
  static ConvexSpec upper_balls(const AnchorSet& anchors,
                                const IntervalBounds& bounds) {
    if (bounds.count() != anchors.count())
      throw std::invalid_argument("upper_balls: bounds/anchors count mismatch");
    ConvexSpec spec;
    spec.dim = anchors.dim();
    spec.balls.reserve(static_cast<std::size_t>(anchors.count()));
    for (Eigen::Index i = 0; i < anchors.count(); ++i) {
      const double xi = bounds.upper(i);
      spec.balls.push_back(
          {anchors.anchor(i), xi >= 0 ? std::sqrt(xi) : -std::sqrt(-xi)});
    }
    return spec;
  }
};

enum class SupportStatus {
  optimal,
  infeasible,
  unbounded,
  degenerate_tolerance,  // empty-interior set; gap stalled in (1e-8, 1e-5]
  solver_failure,
};

struct SupportResult {
  SupportStatus status = SupportStatus::solver_failure;
  double value = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd maximizer;
  double constraint_violation = std::numeric_limits<double>::quiet_NaN();
  double kkt_residual = std::numeric_limits<double>::quiet_NaN();
  double duality_gap = std::numeric_limits<double>::quiet_NaN();

  bool ok() const {
    return status == SupportStatus::optimal ||
           status == SupportStatus::degenerate_tolerance;
  }
};

struct WidthResult {
  SupportStatus status = SupportStatus::solver_failure;
  double value = std::numeric_limits<double>::quiet_NaN();
};

struct BoxResult {
  SupportStatus status = SupportStatus::solver_failure;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  double volume() const {
    double v = 1.0;
    for (Eigen::Index j = 0; j < lo.size(); ++j) v *= hi(j) - lo(j);
    return v;
  }
};

namespace detail {

/// Radius of the auxiliary trust-region ball used to probe ball-free
/// specs for unboundedness: the polytope support problem is solved inside
/// a huge ball, and a maximizer landing on that ball flags the direction
/// as unbounded.
inline double probe_radius(const ConvexSpec& spec) {
  double scale = 1.0;
  for (Eigen::Index k = 0; k < spec.halfspaces.rows(); ++k) {
    const double nrm = spec.halfspaces.normals.row(k).norm();
    if (nrm > 0)
      scale = std::max(scale, std::abs(spec.halfspaces.offsets(k)) / nrm);
  }
  return 1e6 * scale;
}

struct ConicProblem {
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  socp::ConeSpec cone;
  bool probe_added = false;
  double probe_r = 0.0;
};

/// Conic constraint data for membership of x in the spec (plus the probe
/// ball when no real ball bounds the set).
inline ConicProblem assemble(const ConvexSpec& spec) {
  const Eigen::Index n = spec.dim;
  const Eigen::Index lin = spec.halfspaces.rows();
  ConicProblem out;
  out.probe_added = spec.balls.empty();
  out.probe_r = out.probe_added ? probe_radius(spec) : 0.0;
  const Eigen::Index n_balls =
      static_cast<Eigen::Index>(spec.balls.size()) + (out.probe_added ? 1 : 0);

  out.cone.lin = lin;
  out.cone.soc.assign(static_cast<std::size_t>(n_balls), n + 1);
  const Eigen::Index rows = lin + n_balls * (n + 1);
  out.G = Eigen::MatrixXd::Zero(rows, n);
  out.h = Eigen::VectorXd::Zero(rows);

  if (lin > 0) {
    out.G.topRows(lin) = spec.halfspaces.normals;
    out.h.head(lin) = spec.halfspaces.offsets;
  }
  Eigen::Index at = lin;
  const auto add_ball = [&](const Eigen::VectorXd& c, double r) {
    out.h(at) = r;
    out.h.segment(at + 1, n) = -c;
    out.G.block(at + 1, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
    at += n + 1;
  };
  for (const Ball& b : spec.balls) add_ball(b.center, b.radius);
  if (out.probe_added) add_ball(Eigen::VectorXd::Zero(n), out.probe_r);
  return out;
}

inline double max_violation(const ConvexSpec& spec, const Eigen::VectorXd& x) {
  double viol = -std::numeric_limits<double>::infinity();
  if (spec.halfspaces.rows() > 0)
    viol = (spec.halfspaces.normals * x - spec.halfspaces.offsets).maxCoeff();
  for (const Ball& b : spec.balls)
    viol = std::max(viol, (x - b.center).norm() - b.radius);
  return viol;
}

inline void validate_spec(const ConvexSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("ConvexSpec: dim must be >= 1");
  if (spec.halfspaces.rows() == 0 && spec.balls.empty())
    throw std::invalid_argument("ConvexSpec: need at least one halfspace or ball");
  if (spec.halfspaces.rows() > 0 && spec.halfspaces.dim() != spec.dim)
    throw std::invalid_argument("ConvexSpec: halfspace dimension mismatch");
  for (const Ball& b : spec.balls)
    if (b.center.size() != spec.dim)
      throw std::invalid_argument("ConvexSpec: ball dimension mismatch");
}

inline bool has_empty_ball(const ConvexSpec& spec) {
  for (const Ball& b : spec.balls)
    if (b.radius < 0) return true;
  return false;
}

}  // namespace detail

/// Support value max{v'x : x in spec}, solved as a small dense SOCP.
/// Statuses, never exceptions, report infeasible or unbounded sets.
/// Unboundedness can only arise for ball-free specs and is detected by
/// the trust-region probe described at detail::probe_radius.
inline SupportResult support(const ConvexSpec& spec, const Eigen::VectorXd& v) {
  detail::validate_spec(spec);
  if (v.size() != spec.dim)
    throw std::invalid_argument("support: direction dimension mismatch");
  if (!(v.norm() > 0)) throw std::invalid_argument("support: zero direction");

  SupportResult res;
  if (detail::has_empty_ball(spec)) {
    res.status = SupportStatus::infeasible;
    return res;
  }

  const detail::ConicProblem prob = detail::assemble(spec);
  const socp::Result sol = socp::solve(prob.G, prob.h, -v, prob.cone);

  switch (sol.status) {
    case socp::Status::optimal:
    case socp::Status::near_optimal: {
      res.maximizer = sol.x;
      if (prob.probe_added && sol.x.norm() >= 0.99 * prob.probe_r) {
        res.status = SupportStatus::unbounded;
        res.value = std::numeric_limits<double>::infinity();
        return res;
      }
      res.value = v.dot(sol.x);
      res.status = sol.status == socp::Status::optimal
                       ? SupportStatus::optimal
                       : SupportStatus::degenerate_tolerance;
      res.constraint_violation = detail::max_violation(spec, sol.x);
      res.kkt_residual = std::max(sol.primal_res, sol.dual_res);
      res.duality_gap = std::abs(sol.gap);
      return res;
    }
    case socp::Status::primal_infeasible:
      res.status = SupportStatus::infeasible;
      return res;
    case socp::Status::dual_infeasible:
      res.status = SupportStatus::unbounded;
      res.value = std::numeric_limits<double>::infinity();
      return res;
    default:
      res.status = SupportStatus::solver_failure;
      return res;
  }
}

/// Directional width: support along v plus support along -v.
inline WidthResult width(const ConvexSpec& spec, const Eigen::VectorXd& v) {
  const SupportResult plus = support(spec, v);
  if (plus.status == SupportStatus::infeasible)
    return {SupportStatus::infeasible, std::numeric_limits<double>::quiet_NaN()};
  const SupportResult minus = support(spec, -v);
  if (minus.status == SupportStatus::infeasible)
    return {SupportStatus::infeasible, std::numeric_limits<double>::quiet_NaN()};
  if (plus.status == SupportStatus::unbounded ||
      minus.status == SupportStatus::unbounded)
    return {SupportStatus::unbounded, std::numeric_limits<double>::infinity()};
  if (!plus.ok() || !minus.ok())
    return {SupportStatus::solver_failure, std::numeric_limits<double>::quiet_NaN()};
  const SupportStatus status =
      (plus.status == SupportStatus::degenerate_tolerance ||
       minus.status == SupportStatus::degenerate_tolerance)
          ? SupportStatus::degenerate_tolerance
          : SupportStatus::optimal;
  return {status, plus.value + minus.value};
}

/// Exact axis-aligned bounding box via 2n support problems.
inline BoxResult coord_box(const ConvexSpec& spec) {
  BoxResult box;
  box.lo.setConstant(spec.dim, std::numeric_limits<double>::quiet_NaN());
  box.hi.setConstant(spec.dim, std::numeric_limits<double>::quiet_NaN());
  box.status = SupportStatus::optimal;
  for (Eigen::Index j = 0; j < spec.dim; ++j) {
    Eigen::VectorXd axis = Eigen::VectorXd::Zero(spec.dim);
    axis(j) = 1.0;
    const SupportResult up = support(spec, axis);
    const SupportResult dn = support(spec, -axis);
    for (const SupportResult* r : {&up, &dn}) {
      if (r->status == SupportStatus::infeasible)
        return {SupportStatus::infeasible, box.lo, box.hi};
      if (r->status == SupportStatus::solver_failure)
        box.status = SupportStatus::solver_failure;
    }
    if (box.status == SupportStatus::solver_failure) continue;
    if (up.status == SupportStatus::unbounded) {
      box.hi(j) = std::numeric_limits<double>::infinity();
      box.status = SupportStatus::unbounded;
    } else {
      box.hi(j) = up.value;
    }
    if (dn.status == SupportStatus::unbounded) {
      box.lo(j) = -std::numeric_limits<double>::infinity();
      box.status = SupportStatus::unbounded;
    } else {
      box.lo(j) = -dn.value;
    }
    if (box.status == SupportStatus::optimal &&
        (up.status == SupportStatus::degenerate_tolerance ||
         dn.status == SupportStatus::degenerate_tolerance))
      box.status = SupportStatus::degenerate_tolerance;
  }
  return box;
}

/// Feasibility tolerance on constraint residuals.
inline constexpr double kFeasibilityTol = 1e-8;

/// Smallest achievable maximum constraint violation, floored at -1 (only
/// the sign matters). Solved as an SOCP in (x, t): minimize t subject to
/// g'x - t <= beta and ||x - c|| <= r + t.
inline double max_violation_min(const ConvexSpec& spec) {
  detail::validate_spec(spec);
  if (detail::has_empty_ball(spec))
    return std::numeric_limits<double>::infinity();

  const Eigen::Index n = spec.dim;
  const Eigen::Index lin = spec.halfspaces.rows();
  const bool probe = spec.balls.empty();
  const Eigen::Index n_socs =
      static_cast<Eigen::Index>(spec.balls.size()) + (probe ? 1 : 0);
  const Eigen::Index rows = lin + 1 + n_socs * (n + 1);

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(rows, n + 1);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(rows);
  socp::ConeSpec cone;
  cone.lin = lin + 1;
  cone.soc.assign(static_cast<std::size_t>(n_socs), n + 1);

  if (lin > 0) {
    g.block(0, 0, lin, n) = spec.halfspaces.normals;
    g.col(n).head(lin).setConstant(-1.0);
    h.head(lin) = spec.halfspaces.offsets;
  }
  // Floor t >= -1.
  g(lin, n) = -1.0;
  h(lin) = 1.0;

  Eigen::Index at = lin + 1;
  for (const Ball& b : spec.balls) {
    h(at) = b.radius;
    g(at, n) = -1.0;
    h.segment(at + 1, n) = -b.center;
    g.block(at + 1, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
    at += n + 1;
  }
  if (probe) {
    // Trust ball keeps the optimal set bounded in x; it does not involve t.
    h(at) = detail::probe_radius(spec);
    g.block(at + 1, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
  }

  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c(n) = 1.0;
  const socp::Result sol = socp::solve(g, h, c, cone);
  if (!sol.solved()) return std::numeric_limits<double>::infinity();
  return sol.x(n);
}

/// True iff the halfspace/ball intersection is nonempty within tolerance.
inline bool feasible(const ConvexSpec& spec) {
  return max_violation_min(spec) <= kFeasibilityTol;
}

}  // namespace locset
