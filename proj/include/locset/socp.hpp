#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace locset::socp {

/// Cone layout of the slack vector: `lin` nonnegative entries first, then
/// one second-order cone block per entry of `soc` (block dim >= 2 each,
/// leading entry is the cone "radius" coordinate).
struct ConeSpec {
  Eigen::Index lin = 0;
  std::vector<Eigen::Index> soc;

  Eigen::Index total_dim() const {
    Eigen::Index d = lin;
    for (Eigen::Index s : soc) d += s;
    return d;
  }
  /// Barrier degree: one per linear row, one per second-order cone.
  Eigen::Index degree() const {
    return lin + static_cast<Eigen::Index>(soc.size());
  }
};

struct Settings {
  // HSD residual tolerance. The embedding residual overestimates the
  // feasibility error of the recovered point, which tracks the duality
  // gap; abstol/reltol are the binding accuracy controls.
  double feastol = 1e-7;
  double abstol = 1e-8;
  double reltol = 1e-8;
  // Relaxed thresholds applied when progress stalls before full accuracy.
  double feastol_relaxed = 1e-6;
  double abstol_relaxed = 1e-5;
  double reltol_relaxed = 1e-5;
  int max_iterations = 120;
  int refinement_steps = 3;
  double step_scale = 0.99;
  double max_step = 0.9995;
  double sigma_min = 1e-4;
  double sigma_max = 1.0;
  bool trace = false;  // per-iteration diagnostics on stderr
};

enum class Status {
  optimal,
  near_optimal,        // converged only to the relaxed tolerances
  primal_infeasible,
  dual_infeasible,
  max_iterations,
  numerical_limit,
};

struct Result {
  Status status = Status::numerical_limit;
  Eigen::VectorXd x;  // primal point (divided by tau on optimal exits)
  Eigen::VectorXd s;
  Eigen::VectorXd z;  // dual cone multipliers
  double tau = 0.0;
  double kappa = 0.0;
  double primal_obj = std::numeric_limits<double>::quiet_NaN();
  double dual_obj = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  double rel_gap = std::numeric_limits<double>::quiet_NaN();
  double primal_res = std::numeric_limits<double>::quiet_NaN();
  double dual_res = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;

  bool solved() const {
    return status == Status::optimal || status == Status::near_optimal;
  }
};

namespace detail {

/// Dense primal-dual interior-point solver for
///   min c'x  s.t.  Gx + s = h,  s in K,
/// on the homogeneous self-dual embedding, with Nesterov-Todd scaling and
/// Mehrotra predictor-corrector steps. The KKT system is reduced to an
/// n x n Schur complement, which is cheap at the problem sizes this
/// library targets (n <= 3, a few hundred cone rows).
class HsdSolver {
 public:
  HsdSolver(const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
            const Eigen::VectorXd& c, const ConeSpec& cone,
            const Settings& settings)
      : G_(G), h_(h), c_(c), cone_(cone), set_(settings) {
    if (G_.rows() != cone_.total_dim())
      throw std::invalid_argument("socp: G rows must match cone dimension");
    if (G_.rows() != h_.size())
      throw std::invalid_argument("socp: G/h size mismatch");
    if (G_.cols() != c_.size())
      throw std::invalid_argument("socp: G/c size mismatch");
    for (Eigen::Index d : cone_.soc)
      if (d < 2) throw std::invalid_argument("socp: SOC blocks need dim >= 2");
    if (cone_.total_dim() < 1)
      throw std::invalid_argument("socp: empty cone");
    n_ = G_.cols();
    k_ = G_.rows();
    soc_starts_.resize(cone_.soc.size());
    Eigen::Index at = cone_.lin;
    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      soc_starts_[t] = at;
      at += cone_.soc[t];
    }
    resx0_ = std::max(1.0, c_.norm());
    resz0_ = std::max(1.0, h_.norm());
  }

  Result run() {
    initialize();
    Result best;
    double best_merit = std::numeric_limits<double>::infinity();

    for (iter_ = 0; iter_ <= set_.max_iterations; ++iter_) {
      compute_residuals();

      if (set_.trace)
        std::fprintf(stderr,
                     "it %3d  pcost % .9e  gap %9.2e relgap %9.2e  pres %9.2e "
                     "dres %9.2e  tau %9.2e kap %9.2e mu %9.2e\n",
                     iter_, stat_pcost_, stat_gap_, stat_relgap_, stat_pres_,
                     stat_dres_, tau_, kappa_, mu_);

      if (!std::isfinite(stat_gap_) || !std::isfinite(stat_pres_) ||
          !std::isfinite(stat_dres_)) {
        return finish(best, best_merit, Status::numerical_limit);
      }

      Status code = check_exit(false);
      if (code != Status::max_iterations) return extract(code);

      const double merit = stat_pres_ + stat_dres_ +
                           std::abs(stat_gap_) / std::max(1.0, std::abs(stat_pcost_));
      if (merit < best_merit) {
        best_merit = merit;
        best = extract(Status::numerical_limit);
      }

      if (iter_ == set_.max_iterations)
        return finish(best, best_merit, Status::max_iterations);

      if (!update_scalings())
        return finish(best, best_merit, Status::numerical_limit);
      factor_schur();

      // Solve for the constant right-hand side (-c, h); reused in both the
      // predictor and corrector combinations below.
      Eigen::VectorXd x1(n_), z1(k_), zs1(k_);
      solve_kkt(-c_, h_, x1, z1, zs1);
      const double dtau_denom = kappa_ / tau_ - (c_.dot(x1) + h_.dot(z1));

      // Predictor (affine direction).
      Eigen::VectorXd x2(n_), z2(k_), zs2(k_);
      solve_kkt(rx_, s_ - rz_, x2, z2, zs2);
      const double dtau_aff =
          (rt_ - kappa_ + c_.dot(x2) + h_.dot(z2)) / dtau_denom;
      Eigen::VectorXd w_dz_aff = zs2 + dtau_aff * zs1;
      Eigen::VectorXd ds_by_w = -w_dz_aff - lambda_;
      const double dkap_aff = -kappa_ - (kappa_ / tau_) * dtau_aff;

      const double alpha_aff =
          line_search(ds_by_w, w_dz_aff, dtau_aff, dkap_aff);
      const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3),
                                      set_.sigma_min, set_.sigma_max);

      // Corrector (combined direction).
      Eigen::VectorXd ds_comb = jordan_product(lambda_, lambda_);
      ds_comb += jordan_product(ds_by_w, w_dz_aff);
      add_to_identity_slots(ds_comb, -sigma * mu_);
      const Eigen::VectorXd lambda_div = jordan_division(lambda_, ds_comb);
      const Eigen::VectorXd w_lambda_div = scale_apply(lambda_div);

      const double one_minus_sigma = 1.0 - sigma;
      solve_kkt(one_minus_sigma * rx_, -one_minus_sigma * rz_ + w_lambda_div,
                x2, z2, zs2);
      const double bkap = kappa_ * tau_ + dkap_aff * dtau_aff - sigma * mu_;
      const double dtau = (one_minus_sigma * rt_ - bkap / tau_ + c_.dot(x2) +
                           h_.dot(z2)) /
                          dtau_denom;
      const Eigen::VectorXd dx = x2 + dtau * x1;
      const Eigen::VectorXd dz = z2 + dtau * z1;
      const Eigen::VectorXd w_dz = zs2 + dtau * zs1;
      ds_by_w = -(lambda_div + w_dz);
      const double dkap = -(bkap + kappa_ * dtau) / tau_;

      double alpha = set_.step_scale * line_search(ds_by_w, w_dz, dtau, dkap);
      if (!(alpha > 1e-10))
        return finish(best, best_merit, Status::numerical_limit);

      x_ += alpha * dx;
      z_ += alpha * dz;
      s_ += alpha * scale_apply(ds_by_w);
      tau_ += alpha * dtau;
      kappa_ += alpha * dkap;
    }
    return finish(best, best_merit, Status::max_iterations);
  }

 private:
  // --- initialization -----------------------------------------------------

  void initialize() {
    x_.setZero(n_);
    s_.resize(k_);
    z_.resize(k_);
    identity_scaling_ = true;
    factor_schur();

    Eigen::VectorXd x1(n_), z1(k_), zs1(k_);
    solve_kkt(Eigen::VectorXd::Zero(n_), h_, x1, z1, zs1);
    x_ = x1;
    bring_to_cone(-z1, s_);

    Eigen::VectorXd x2(n_), z2(k_), zs2(k_);
    solve_kkt(-c_, Eigen::VectorXd::Zero(k_), x2, z2, zs2);
    bring_to_cone(z2, z_);

    tau_ = 1.0;
    kappa_ = 1.0;
  }

  void bring_to_cone(const Eigen::VectorXd& r, Eigen::VectorXd& out) const {
    double alpha = -0.99;
    for (Eigen::Index i = 0; i < cone_.lin; ++i)
      if (r(i) <= 0 && -r(i) > alpha) alpha = -r(i);
    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      const Eigen::Index at = soc_starts_[t], d = cone_.soc[t];
      const double cres = r(at) - r.segment(at + 1, d - 1).norm();
      if (cres <= 0 && -cres > alpha) alpha = -cres;
    }
    alpha += 1.0;
    out = r;
    out.head(cone_.lin).array() += alpha;
    for (std::size_t t = 0; t < cone_.soc.size(); ++t)
      out(soc_starts_[t]) += alpha;
  }

  // --- residuals and exit tests --------------------------------------------

  void compute_residuals() {
    rx_ = -G_.transpose() * z_;
    hresx_ = rx_.norm();
    rx_ -= tau_ * c_;

    rz_ = s_ + G_ * x_;
    hresz_ = rz_.norm();
    rz_ -= tau_ * h_;

    cx_ = c_.dot(x_);
    hz_ = h_.dot(z_);
    rt_ = kappa_ + cx_ + hz_;

    nx_ = x_.norm();
    nz_ = z_.norm();
    ns_ = s_.norm();

    stat_gap_ = s_.dot(z_);
    mu_ = (stat_gap_ + kappa_ * tau_) / static_cast<double>(cone_.degree() + 1);
    stat_pcost_ = cx_ / tau_;
    stat_dcost_ = -hz_ / tau_;
    // Duality gap of the recovered (tau-scaled) primal-dual pair.
    stat_gap_scaled_ = stat_gap_ / (tau_ * tau_);
    if (stat_pcost_ < 0)
      stat_relgap_ = stat_gap_scaled_ / (-stat_pcost_);
    else if (stat_dcost_ > 0)
      stat_relgap_ = stat_gap_scaled_ / stat_dcost_;
    else
      stat_relgap_ = std::numeric_limits<double>::infinity();

    stat_pres_ = rz_.norm() / std::max(resz0_ + nx_ + ns_, 1.0) / tau_;
    stat_dres_ = rx_.norm() / std::max(resx0_ + nz_, 1.0) / tau_;

    stat_pinfres_ = std::numeric_limits<double>::infinity();
    if (hz_ / std::max(nz_, 1.0) < -set_.reltol)
      stat_pinfres_ = hresx_ / std::max(nz_, 1.0);
    stat_dinfres_ = std::numeric_limits<double>::infinity();
    if (cx_ / std::max(nx_, 1.0) < -set_.reltol)
      stat_dinfres_ = hresz_ / std::max(nx_ + ns_, 1.0);
  }

  Status check_exit(bool relaxed) const {
    const double feastol = relaxed ? set_.feastol_relaxed : set_.feastol;
    const double abstol = relaxed ? set_.abstol_relaxed : set_.abstol;
    const double reltol = relaxed ? set_.reltol_relaxed : set_.reltol;

    if ((-cx_ > 0 || -hz_ >= -abstol) && stat_pres_ < feastol &&
        stat_dres_ < feastol &&
        (stat_gap_scaled_ < abstol || stat_relgap_ < reltol))
      return relaxed ? Status::near_optimal : Status::optimal;
    if (stat_dinfres_ < feastol && tau_ < kappa_) return Status::dual_infeasible;
    if ((stat_pinfres_ < feastol && tau_ < kappa_) ||
        (tau_ < feastol && kappa_ < feastol && stat_pinfres_ < feastol))
      return Status::primal_infeasible;
    return Status::max_iterations;  // sentinel: not converged yet
  }

  // --- Nesterov-Todd scaling ------------------------------------------------

  bool update_scalings() {
    lin_w_ = (s_.head(cone_.lin).array() / z_.head(cone_.lin).array()).sqrt();
    if (!lin_w_.allFinite()) return false;

    soc_eta_.resize(cone_.soc.size());
    soc_a_.resize(cone_.soc.size());
    soc_q_.resize(cone_.soc.size());
    soc_w_inv_.resize(cone_.soc.size());
    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      const Eigen::Index at = soc_starts_[t], d = cone_.soc[t];
      const auto sb = s_.segment(at, d);
      const auto zb = z_.segment(at, d);
      const double sres = sb(0) * sb(0) - sb.tail(d - 1).squaredNorm();
      const double zres = zb(0) * zb(0) - zb.tail(d - 1).squaredNorm();
      if (sres <= 0 || zres <= 0) return false;
      const double snorm = std::sqrt(sres), znorm = std::sqrt(zres);
      const Eigen::VectorXd sbar = sb / snorm;
      const Eigen::VectorXd zbar = zb / znorm;
      const double gamma = std::sqrt(0.5 * (1.0 + sbar.dot(zbar)));
      soc_eta_[t] = std::sqrt(snorm / znorm);
      soc_a_[t] = (0.5 / gamma) * (sbar(0) + zbar(0));
      soc_q_[t] = (0.5 / gamma) * (sbar.tail(d - 1) - zbar.tail(d - 1));

      // W^-1 = eta^-1 [a, -q'; -q, I + qq'/(1+a)], with a^2 - ||q||^2 = 1.
      const double a = soc_a_[t];
      const Eigen::VectorXd& q = soc_q_[t];
      Eigen::MatrixXd wi(d, d);
      wi(0, 0) = a;
      wi.row(0).tail(d - 1) = -q.transpose();
      wi.col(0).tail(d - 1) = -q;
      wi.bottomRightCorner(d - 1, d - 1) =
          Eigen::MatrixXd::Identity(d - 1, d - 1) +
          q * q.transpose() / (1.0 + a);
      soc_w_inv_[t] = wi / soc_eta_[t];
    }
    identity_scaling_ = false;
    lambda_ = scale_apply(z_);
    return lambda_.allFinite();
  }

  /// W u (scaling-matrix product); identity before the first update.
  Eigen::VectorXd scale_apply(const Eigen::VectorXd& u) const {
    if (identity_scaling_) return u;
    Eigen::VectorXd out(k_);
    out.head(cone_.lin) =
        lin_w_.array() * u.head(cone_.lin).array();
    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      const Eigen::Index at = soc_starts_[t], d = cone_.soc[t];
      const auto ub = u.segment(at, d);
      const double zeta = soc_q_[t].dot(ub.tail(d - 1));
      const double factor = ub(0) + zeta / (1.0 + soc_a_[t]);
      out(at) = soc_eta_[t] * (soc_a_[t] * ub(0) + zeta);
      out.segment(at + 1, d - 1) =
          soc_eta_[t] * (ub.tail(d - 1) + factor * soc_q_[t]);
    }
    return out;
  }

  /// W^-1 u.
  Eigen::VectorXd w_inv_apply(const Eigen::VectorXd& u) const {
    if (identity_scaling_) return u;
    Eigen::VectorXd out(k_);
    out.head(cone_.lin) =
        u.head(cone_.lin).array() / lin_w_.array();
    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      const Eigen::Index at = soc_starts_[t], d = cone_.soc[t];
      out.segment(at, d) = soc_w_inv_[t] * u.segment(at, d);
    }
    return out;
  }

  // --- Jordan algebra -------------------------------------------------------

  Eigen::VectorXd jordan_product(const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v) const {
    Eigen::VectorXd w(k_);
    w.head(cone_.lin) =
        u.head(cone_.lin).array() * v.head(cone_.lin).array();
    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      const Eigen::Index at = soc_starts_[t], d = cone_.soc[t];
      const auto ub = u.segment(at, d);
      const auto vb = v.segment(at, d);
      w(at) = ub.dot(vb);
      w.segment(at + 1, d - 1) =
          ub(0) * vb.tail(d - 1) + vb(0) * ub.tail(d - 1);
    }
    return w;
  }

  /// v solving u o v = w.
  Eigen::VectorXd jordan_division(const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& w) const {
    Eigen::VectorXd v(k_);
    v.head(cone_.lin) =
        w.head(cone_.lin).array() / u.head(cone_.lin).array();
    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      const Eigen::Index at = soc_starts_[t], d = cone_.soc[t];
      const auto ub = u.segment(at, d);
      const auto wb = w.segment(at, d);
      const double rho = ub(0) * ub(0) - ub.tail(d - 1).squaredNorm();
      const double zeta = ub.tail(d - 1).dot(wb.tail(d - 1));
      const double factor = (zeta / ub(0) - wb(0)) / rho;
      v(at) = (ub(0) * wb(0) - zeta) / rho;
      v.segment(at + 1, d - 1) =
          factor * ub.tail(d - 1) + wb.tail(d - 1) / ub(0);
    }
    return v;
  }

  void add_to_identity_slots(Eigen::VectorXd& u, double value) const {
    u.head(cone_.lin).array() += value;
    for (std::size_t t = 0; t < cone_.soc.size(); ++t)
      u(soc_starts_[t]) += value;
  }

  // --- KKT solves -----------------------------------------------------------

  void factor_schur() {
    if (identity_scaling_) {
      scaled_g_ = G_;
    } else {
      scaled_g_.resize(k_, n_);
      scaled_g_.topRows(cone_.lin) =
          lin_w_.cwiseInverse().asDiagonal() * G_.topRows(cone_.lin);
      for (std::size_t t = 0; t < cone_.soc.size(); ++t)
        scaled_g_.middleRows(soc_starts_[t], cone_.soc[t]) =
            soc_w_inv_[t] * G_.middleRows(soc_starts_[t], cone_.soc[t]);
    }
    Eigen::MatrixXd m = scaled_g_.transpose() * scaled_g_;
    m.diagonal().array() += 1e-13 * std::max(1.0, m.trace() / static_cast<double>(n_));
    schur_ = m.ldlt();
  }

  /// Solves [0 G'; G -W^2] (dx, dz) = (bx, bz) in the scaled variable
  /// W dz, where the cone block of the KKT matrix is exactly -I:
  ///   [0 B'; B -I] (dx, W dz) = (bx, W^-1 bz),   B = W^-1 G.
  /// The scaled form keeps the refinement residuals accurate when the
  /// scaling becomes extreme near convergence. Also returns W dz, which
  /// the predictor-corrector steps need anyway.
  void solve_kkt(const Eigen::VectorXd& bx, const Eigen::VectorXd& bz,
                 Eigen::VectorXd& dx, Eigen::VectorXd& dz,
                 Eigen::VectorXd& dz_scaled) const {
    const Eigen::VectorXd u = w_inv_apply(bz);
    dx = schur_.solve(bx + scaled_g_.transpose() * u);
    dz_scaled = scaled_g_ * dx - u;
    for (int pass = 0; pass < set_.refinement_steps; ++pass) {
      const Eigen::VectorXd ex = bx - scaled_g_.transpose() * dz_scaled;
      const Eigen::VectorXd eu = u - (scaled_g_ * dx - dz_scaled);
      const Eigen::VectorXd cx = schur_.solve(ex + scaled_g_.transpose() * eu);
      dx += cx;
      dz_scaled += scaled_g_ * cx - eu;
    }
    dz = w_inv_apply(dz_scaled);
  }

  // --- line search ----------------------------------------------------------

  /// Largest step keeping (lambda + alpha ds, lambda + alpha dz) in the
  /// scaled cone and (tau, kappa) positive; ds and dz live in the scaled
  /// space (W^-1 ds, W dz).
  double line_search(const Eigen::VectorXd& ds, const Eigen::VectorXd& dz,
                     double dtau, double dkap) const {
    double alpha = 1.0 / 1e-13;
    if (cone_.lin > 0) {
      const double rho_min =
          (ds.head(cone_.lin).array() / lambda_.head(cone_.lin).array()).minCoeff();
      const double sig_min =
          (dz.head(cone_.lin).array() / lambda_.head(cone_.lin).array()).minCoeff();
      const double worst = std::min(rho_min, sig_min);
      if (worst < 0) alpha = std::min(alpha, 1.0 / (-worst));
    }
    if (dtau < 0) alpha = std::min(alpha, -tau_ / dtau);
    if (dkap < 0) alpha = std::min(alpha, -kappa_ / dkap);

    for (std::size_t t = 0; t < cone_.soc.size(); ++t) {
      const Eigen::Index at = soc_starts_[t], d = cone_.soc[t];
      const auto lb = lambda_.segment(at, d);
      const double lknorm2 = lb(0) * lb(0) - lb.tail(d - 1).squaredNorm();
      if (lknorm2 <= 0) continue;
      const double lknorm = std::sqrt(lknorm2);
      const Eigen::VectorXd lkbar = lb / lknorm;

      const auto step_limit = [&](const Eigen::VectorXd& dir) {
        const auto db = dir.segment(at, d);
        const double lkbar_dot =
            lkbar(0) * db(0) - lkbar.tail(d - 1).dot(db.tail(d - 1));
        const double factor = (lkbar_dot + db(0)) / (lkbar(0) + 1.0);
        Eigen::VectorXd r(d);
        r(0) = lkbar_dot / lknorm;
        r.tail(d - 1) =
            (db.tail(d - 1) - factor * lkbar.tail(d - 1)) / lknorm;
        return r.tail(d - 1).norm() - r(0);
      };
      const double worst = std::max({0.0, step_limit(ds), step_limit(dz)});
      if (worst > 0) alpha = std::min(alpha, 1.0 / worst);
    }
    return std::clamp(alpha, 0.0, set_.max_step);
  }

  // --- result assembly -------------------------------------------------------

  Result extract(Status code) const {
    Result r;
    r.status = code;
    r.tau = tau_;
    r.kappa = kappa_;
    r.iterations = iter_;
    r.primal_obj = stat_pcost_;
    r.dual_obj = stat_dcost_;
    r.gap = stat_gap_;
    r.rel_gap = stat_relgap_;
    r.primal_res = stat_pres_;
    r.dual_res = stat_dres_;
    if (code == Status::optimal || code == Status::near_optimal) {
      r.x = x_ / tau_;
      r.s = s_ / tau_;
      r.z = z_ / tau_;
      r.primal_obj = c_.dot(r.x);
      r.dual_obj = -h_.dot(r.z);
      r.gap = r.s.dot(r.z);
    } else {
      r.x = x_;
      r.s = s_;
      r.z = z_;
    }
    return r;
  }

  /// Stalled: restore the best iterate seen and retest with the relaxed
  /// tolerances before giving up.
  Result finish(const Result& best, double best_merit, Status fallback) {
    if (std::isfinite(best_merit) && best.x.size() == n_) {
      x_ = best.x;
      s_ = best.s;
      z_ = best.z;
      tau_ = best.tau;
      kappa_ = best.kappa;
    }
    compute_residuals();
    const Status relaxed = check_exit(true);
    if (relaxed != Status::max_iterations) return extract(relaxed);
    return extract(fallback);
  }

  Eigen::MatrixXd G_;
  Eigen::VectorXd h_, c_;
  ConeSpec cone_;
  Settings set_;
  Eigen::Index n_ = 0, k_ = 0;
  std::vector<Eigen::Index> soc_starts_;
  double resx0_ = 1.0, resz0_ = 1.0;

  Eigen::VectorXd x_, s_, z_, lambda_;
  double tau_ = 1.0, kappa_ = 1.0;
  int iter_ = 0;

  bool identity_scaling_ = true;
  Eigen::VectorXd lin_w_;
  std::vector<double> soc_eta_, soc_a_;
  std::vector<Eigen::VectorXd> soc_q_;
  std::vector<Eigen::MatrixXd> soc_w_inv_;
  Eigen::MatrixXd scaled_g_;
  Eigen::LDLT<Eigen::MatrixXd> schur_;

  Eigen::VectorXd rx_, rz_;
  double hresx_ = 0, hresz_ = 0, rt_ = 0, cx_ = 0, hz_ = 0;
  double nx_ = 0, nz_ = 0, ns_ = 0;
  double stat_gap_ = 0, mu_ = 0, stat_pcost_ = 0, stat_dcost_ = 0;
  double stat_gap_scaled_ = 0, stat_relgap_ = 0, stat_pres_ = 0, stat_dres_ = 0;
  double stat_pinfres_ = 0, stat_dinfres_ = 0;
};

}  // namespace detail

/// Solve min c'x s.t. h - Gx in K. Deterministic for fixed inputs.
inline Result solve(const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                    const Eigen::VectorXd& c, const ConeSpec& cone,
                    const Settings& settings = {}) {
  detail::HsdSolver solver(G, h, c, cone, settings);
  return solver.run();
}

}  // namespace locset::socp
