#ifndef MHD2D_DIAGNOSTICS_HPP
#define MHD2D_DIAGNOSTICS_HPP

#include <optional>
#include <vector>

#include "mhd2d/mhd.hpp"

namespace mhd2d {

/// Regularity and decay parameters of the stability theorem.
struct ProofParams {
  double r = 2.0;
  double alpha = 0.5;
  double beta = 0.5;
  double n_sob = 15.0;   // working regularity N
  double gamma = 5.5;    // reporting regularity
  double a_weight = 1.0; // Lyapunov weight A
  std::vector<double> cross_exponents;  // S, subset of [0, r+alpha+2]

  double base_index() const { return r + alpha + 3.0; }        // r+alpha+3
  double cross_index() const { return r + alpha + 2.0; }       // r+alpha+2
  double min_n_sob() const {
    return (2.0 * beta + 3.0) * r + alpha + 2.0 * beta + 5.0;
  }
  /// Integer exponent set {0, 1, ..., floor(r+alpha+2)}.
  static std::vector<double> default_cross_exponents(double r, double alpha);
  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

/// One time slice of every monitored functional.
struct EnergySample {
  double t = 0.0;
  double l2_u = 0.0, l2_b = 0.0;
  double grad_b_l2 = 0.0;
  std::vector<double> h_gamma_u, h_gamma_b;  // one entry per requested gamma
  double h_n_u = 0.0, h_n_b = 0.0;
  double cross = 0.0;
  double energy = 0.0;       // E(t)
  double dissipation = 0.0;  // D(t)
  double residual_l2 = 0.0;
  std::optional<double> residual_hm;
  double de_dt_fd = 0.0;  // centered finite difference, filled in post-pass
};

/// <rhs_u, u> + <rhs_b, b> + |grad b|^2, normalized by
/// 1 + |u|_{L2}^2 + |b|_{H1}^2 (instantaneous L2 balance identity).
double l2_balance_residual(const FlowState& state, const BackgroundField& bg);

/// Normalized gap between the H^m rate identity and its commutator form,
/// with D^s = |k|^s for s = 0..m.
double hm_balance_residual(const FlowState& state, const BackgroundField& bg, int m);

/// sum_{s in S} sum_i <D^s b_i, D^s(n.grad u_i)>.
double cross_term(const FlowState& state, const BackgroundField& bg,
                  const std::vector<double>& exponents);

double lyapunov_E(const FlowState& state, const BackgroundField& bg,
                  const ProofParams& pp);
double dissipation_D(const FlowState& state, const BackgroundField& bg,
                     const ProofParams& pp);

/// A = 1 + (max(S)+1)|n|: makes E dominate the plain Sobolev norms.
double choose_A(const BackgroundField& bg, const ProofParams& pp);

/// Fill every field of an EnergySample except de_dt_fd.
EnergySample collect_sample(const FlowState& state, const BackgroundField& bg,
                            const ProofParams& pp,
                            const std::vector<double>& gamma_list,
                            std::optional<int> hm_order = {});

struct MonitorViolation {
  std::size_t sample_index;
  double de_dt;
  double bound;  // tol_rel*D + tol_abs
};

struct MonitorReport {
  std::vector<MonitorViolation> violations;
  /// d log E / d log(1+t) at interior samples (0 where E hits roundoff floor).
  std::vector<double> local_decay_exponent;
};

/// Centered-difference check of dE/dt + D/2 <= tol_rel*D + tol_abs on a
/// recorded time series; needs at least 3 samples. Also fills de_dt_fd.
MonitorReport lyapunov_monitor(std::vector<EnergySample>& samples,
                               double tol_rel = 0.1, double tol_abs = 1e-14);

}  // namespace mhd2d

#endif
