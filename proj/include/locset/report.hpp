#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "locset/support.hpp"

namespace locset {

struct ReportValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// JSON scalar that keeps non-finite values representable ("inf", "-inf",
/// "nan" string tokens) instead of nlohmann's default null.
inline nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline nlohmann::json json_vector(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(json_number(v(i)));
  return arr;
}

inline const char* to_string(SupportStatus s) {
  switch (s) {
    case SupportStatus::optimal: return "optimal";
    case SupportStatus::infeasible: return "infeasible";
    case SupportStatus::unbounded: return "unbounded";
    case SupportStatus::degenerate_tolerance: return "degenerate-tolerance";
    case SupportStatus::solver_failure: return "solver-failure";
  }
  return "unknown";
}

/// One certified direction: the exact width of X next to every bound that
/// applies to it.
struct DirectionReport {
  std::string label;
  Eigen::VectorXd direction;
  double exact_width = std::numeric_limits<double>::quiet_NaN();
  SupportStatus exact_status = SupportStatus::solver_failure;
  double xd_width_bound = std::numeric_limits<double>::infinity();
  double psi = std::numeric_limits<double>::quiet_NaN();
  SupportStatus psi_status = SupportStatus::solver_failure;
  double beta = std::numeric_limits<double>::quiet_NaN();
  double hybrid = std::numeric_limits<double>::infinity();
};

struct CertificateReport {
  // offline scores
  double lambda_min = 0.0;
  double det_s = 0.0;
  double j_e = std::numeric_limits<double>::infinity();
  double j_d = std::numeric_limits<double>::infinity();
  bool scatter_singular = false;

  // polyhedral certificates
  double diam_bound_xd = std::numeric_limits<double>::infinity();
  double det_vol_bound = std::numeric_limits<double>::infinity();

  // ball certificates
  bool h_empty = false;
  bool h_degenerate_interior = false;
  double two_rho_star = std::numeric_limits<double>::quiet_NaN();
  double rho_star_squared = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd p_star;

  // hybrid box (scatter eigenbasis)
  Eigen::VectorXd hybrid_box_sides;
  Eigen::MatrixXd hybrid_box_axes;
  double hybrid_diam_bound = std::numeric_limits<double>::quiet_NaN();
  double hybrid_vol_bound = std::numeric_limits<double>::quiet_NaN();
  double coord_box_bound = std::numeric_limits<double>::infinity();

  // exact quantities for X
  bool x_feasible = false;
  SupportStatus exact_box_status = SupportStatus::solver_failure;
  Eigen::VectorXd exact_box_lo;
  Eigen::VectorXd exact_box_hi;
  double exact_box_volume = std::numeric_limits<double>::quiet_NaN();

  std::vector<DirectionReport> directions;

  /// Emit-time consistency gate: every exact width must sit below every
  /// applicable bound (up to `slack`), and the exact box volume below the
  /// coordinate-box bound. Violations abort report emission.
  void validate(double slack = 1e-6) const {
    for (const DirectionReport& d : directions) {
      if (d.exact_status != SupportStatus::optimal &&
          d.exact_status != SupportStatus::degenerate_tolerance)
        continue;
      const auto check = [&](double bound, const char* name) {
        if (std::isnan(bound)) return;
        if (d.exact_width > bound + slack)
          throw ReportValidationError(
              "certificate violated: exact width " + std::to_string(d.exact_width) +
              " above " + name + " bound " + std::to_string(bound) +
              " for direction " + d.label);
      };
      check(d.xd_width_bound, "difference-polytope");
      if (d.psi_status == SupportStatus::optimal ||
          d.psi_status == SupportStatus::degenerate_tolerance) {
        check(d.psi, "ball-support");
        if (!std::isnan(d.beta)) check(d.beta, "per-ball surrogate");
      }
      check(d.hybrid, "hybrid");
      check(diam_bound_xd, "polyhedral diameter");
      if (!h_empty && !std::isnan(two_rho_star)) check(two_rho_star, "ball diameter");
    }
    if ((exact_box_status == SupportStatus::optimal ||
         exact_box_status == SupportStatus::degenerate_tolerance) &&
        std::isfinite(exact_box_volume) && exact_box_volume > coord_box_bound + slack)
      throw ReportValidationError(
          "certificate violated: exact box volume above the hybrid coordinate bound");
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["scores"] = {{"lambda_min", json_number(lambda_min)},
                   {"det_s", json_number(det_s)},
                   {"j_e", json_number(j_e)},
                   {"j_d", json_number(j_d)},
                   {"scatter_singular", scatter_singular}};
    j["xd_bounds"] = {{"diam_bound", json_number(diam_bound_xd)},
                      {"det_vol_bound", json_number(det_vol_bound)}};
    nlohmann::json ball;
    ball["h_empty"] = h_empty;
    ball["h_degenerate_interior"] = h_degenerate_interior;
    ball["two_rho_star"] = json_number(two_rho_star);
    ball["rho_star_squared"] = json_number(rho_star_squared);
    ball["p_star"] = json_vector(p_star);
    j["ball_bounds"] = ball;

    nlohmann::json hybrid;
    hybrid["box_sides"] = json_vector(hybrid_box_sides);
    nlohmann::json axes = nlohmann::json::array();
    for (Eigen::Index c = 0; c < hybrid_box_axes.cols(); ++c)
      axes.push_back(json_vector(hybrid_box_axes.col(c)));
    hybrid["box_axes"] = axes;
    hybrid["diam_bound"] = json_number(hybrid_diam_bound);
    hybrid["vol_bound"] = json_number(hybrid_vol_bound);
    hybrid["coord_box_bound"] = json_number(coord_box_bound);
    j["hybrid"] = hybrid;

    nlohmann::json exact;
    exact["feasible"] = x_feasible;
    exact["box_status"] = to_string(exact_box_status);
    exact["box_lo"] = json_vector(exact_box_lo);
    exact["box_hi"] = json_vector(exact_box_hi);
    exact["box_volume"] = json_number(exact_box_volume);
    j["exact"] = exact;

    nlohmann::json dirs = nlohmann::json::array();
    for (const DirectionReport& d : directions) {
      nlohmann::json e;
      e["label"] = d.label;
      e["direction"] = json_vector(d.direction);
      e["exact_width"] = json_number(d.exact_width);
      e["exact_status"] = to_string(d.exact_status);
      e["xd_width_bound"] = json_number(d.xd_width_bound);
      e["psi"] = json_number(d.psi);
      e["psi_status"] = to_string(d.psi_status);
      e["beta"] = json_number(d.beta);
      e["hybrid"] = json_number(d.hybrid);
      dirs.push_back(e);
    }
    j["directions"] = dirs;
    return j;
  }
};

}  // namespace locset
