#include "mhd2d/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace mhd2d {

std::vector<double> ProofParams::default_cross_exponents(double r, double alpha) {
  std::vector<double> s;
  for (int i = 0; i <= static_cast<int>(std::floor(r + alpha + 2.0)); ++i)
    s.push_back(static_cast<double>(i));
  return s;
}

void ProofParams::validate() const {
  if (!(r > 1.0)) throw std::invalid_argument("ProofParams: requires r > 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("ProofParams: requires alpha > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("ProofParams: requires beta > 0");
  if (n_sob < min_n_sob() - 1e-12)
    throw std::invalid_argument(
        "ProofParams: requires N >= (2*beta+3)*r + alpha + 2*beta + 5 = " +
        std::to_string(min_n_sob()));
  if (gamma < base_index() - 1e-12 || gamma > n_sob + 1e-12)
    throw std::invalid_argument("ProofParams: requires r+alpha+3 <= gamma <= N");
  if (!(a_weight >= 1.0)) throw std::invalid_argument("ProofParams: requires A >= 1");
  for (double s : cross_exponents)
    if (s < 0.0 || s > cross_index() + 1e-12)
      throw std::invalid_argument(
          "ProofParams: cross exponents must lie in [0, r+alpha+2]");
}

double l2_balance_residual(const FlowState& state, const BackgroundField& bg) {
  const auto [du, db] = rhs(state, bg);
  const double grad_b = homogeneous_norm(state.b, 1.0);
  const double value = l2_inner_product(du, state.u) + l2_inner_product(db, state.b) +
                       grad_b * grad_b;
  const double l2u = sobolev_norm(state.u, 0.0);
  const double h1b = sobolev_norm(state.b, 1.0);
  return value / (1.0 + l2u * l2u + h1b * h1b);
}

double hm_balance_residual(const FlowState& state, const BackgroundField& bg, int m) {
  const auto [du, db] = rhs(state, bg);
  const SpectralVector2& u = state.u;
  const SpectralVector2& b = state.b;

  double lhs = 0.0, scale = 1.0;
  for (int s = 0; s <= m; ++s) {
    const double tu = weighted_inner_product(du, u, s);
    const double tb = weighted_inner_product(db, b, s);
    const double diss = weighted_inner_product(b, b, s + 1.0);
    lhs += tu + tb + diss;
    scale += std::abs(tu) + std::abs(tb) + diss;
  }

  double rhs_comm = 0.0;
  auto commutator = [](const SpectralVector2& v, const SpectralVector2& f, int s) {
    return fractional_derivative(advect(v, f), s) -
           advect(v, fractional_derivative(f, s));
  };
  for (int s = 1; s <= m; ++s) {
    const SpectralVector2 dsu = fractional_derivative(u, s);
    const SpectralVector2 dsb = fractional_derivative(b, s);
    const double c1 = -l2_inner_product(commutator(u, u, s), dsu);
    const double c2 = l2_inner_product(commutator(b, b, s), dsu);
    const double c3 = -l2_inner_product(commutator(u, b, s), dsb);
    const double c4 = l2_inner_product(commutator(b, u, s), dsb);
    rhs_comm += c1 + c2 + c3 + c4;
    scale += std::abs(c1) + std::abs(c2) + std::abs(c3) + std::abs(c4);
  }
  return std::abs(lhs - rhs_comm) / scale;
}

double cross_term(const FlowState& state, const BackgroundField& bg,
                  const std::vector<double>& exponents) {
  const SpectralVector2 ndu = directional_derivative(state.u, bg.n);
  double sum = 0.0;
  for (double s : exponents) sum += weighted_inner_product(state.b, ndu, s);
  return sum;
}

double lyapunov_E(const FlowState& state, const BackgroundField& bg,
                  const ProofParams& pp) {
  const double s = pp.base_index();
  const double nu = sobolev_norm(state.u, s);
  const double nb = sobolev_norm(state.b, s);
  return pp.a_weight * (nu * nu + nb * nb) - cross_term(state, bg, pp.cross_exponents);
}

double dissipation_D(const FlowState& state, const BackgroundField& bg,
                     const ProofParams& pp) {
  const double s = pp.base_index();
  double grad_b_sq = 0.0;
  for (int axis = 1; axis <= 2; ++axis) {
    const double g1 = sobolev_norm(partial_derivative(state.b.x1, axis), s);
    const double g2 = sobolev_norm(partial_derivative(state.b.x2, axis), s);
    grad_b_sq += g1 * g1 + g2 * g2;
  }
  const double ndu = sobolev_norm(directional_derivative(state.u, bg.n), pp.cross_index());
  return pp.a_weight * grad_b_sq + ndu * ndu;
}

double choose_A(const BackgroundField& bg, const ProofParams& pp) {
  double max_s = 0.0;
  for (double s : pp.cross_exponents) max_s = std::max(max_s, s);
  return 1.0 + (max_s + 1.0) * std::hypot(bg.n[0], bg.n[1]);
}

EnergySample collect_sample(const FlowState& state, const BackgroundField& bg,
                            const ProofParams& pp,
                            const std::vector<double>& gamma_list,
                            std::optional<int> hm_order) {
  EnergySample s;
  s.t = state.t;
  s.l2_u = sobolev_norm(state.u, 0.0);
  s.l2_b = sobolev_norm(state.b, 0.0);
  s.grad_b_l2 = homogeneous_norm(state.b, 1.0);
  for (double g : gamma_list) {
    s.h_gamma_u.push_back(sobolev_norm(state.u, g));
    s.h_gamma_b.push_back(sobolev_norm(state.b, g));
  }
  s.h_n_u = sobolev_norm(state.u, pp.n_sob);
  s.h_n_b = sobolev_norm(state.b, pp.n_sob);
  s.cross = cross_term(state, bg, pp.cross_exponents);
  s.energy = lyapunov_E(state, bg, pp);
  s.dissipation = dissipation_D(state, bg, pp);
  s.residual_l2 = l2_balance_residual(state, bg);
  if (hm_order) s.residual_hm = hm_balance_residual(state, bg, *hm_order);
  return s;
}

MonitorReport lyapunov_monitor(std::vector<EnergySample>& samples, double tol_rel,
                               double tol_abs) {
  if (samples.size() < 3)
    throw std::invalid_argument("lyapunov_monitor: needs at least 3 samples");
  MonitorReport report;
  report.local_decay_exponent.assign(samples.size(), 0.0);
  constexpr double floor = 1e-30;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const EnergySample& lo = samples[i - 1];
    const EnergySample& hi = samples[i + 1];
    const double dt = hi.t - lo.t;
    const double de_dt = (hi.energy - lo.energy) / dt;
    samples[i].de_dt_fd = de_dt;
    const double bound = tol_rel * samples[i].dissipation + tol_abs;
    if (de_dt + 0.5 * samples[i].dissipation > bound)
      report.violations.push_back({i, de_dt, bound});
    if (lo.energy > floor && hi.energy > floor) {
      const double dlog_t = std::log1p(hi.t) - std::log1p(lo.t);
      if (dlog_t > 0.0)
        report.local_decay_exponent[i] =
            (std::log(hi.energy) - std::log(lo.energy)) / dlog_t;
    }
  }
  // one-sided estimates at the ends
  const std::size_t n = samples.size();
  samples[0].de_dt_fd =
      (samples[1].energy - samples[0].energy) / (samples[1].t - samples[0].t);
  samples[n - 1].de_dt_fd = (samples[n - 1].energy - samples[n - 2].energy) /
                            (samples[n - 1].t - samples[n - 2].t);
  return report;
}

}  // namespace mhd2d
