#include "mhd2d/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mhd2d {

namespace {

double max_speed(const SpectralVector2& v) {
  const int p = v.lattice().padded;
  const auto v1 = inverse_transform(v.x1, p);
  const auto v2 = inverse_transform(v.x2, p);
  double m = 0.0;
  for (std::size_t i = 0; i < v1.size(); ++i)
    m = std::max(m, std::hypot(v1[i], v2[i]));
  return m;
}

// Multiply each mode by exp(-|k|^2 tau).
void apply_diffusion_factor(SpectralVector2& v, double tau) {
  const WaveLattice& lat = v.lattice();
  const int m = lat.modes;
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      const double q = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const double f = std::exp(-q * tau);
      const std::size_t p = static_cast<std::size_t>(i) * m + j;
      v.x1.coeffs()[p] *= f;
      v.x2.coeffs()[p] *= f;
    }
  }
}

std::string worst_mode_report(const SpectralVector2& v) {
  const WaveLattice& lat = v.lattice();
  const int m = lat.modes;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const std::size_t p = static_cast<std::size_t>(i) * m + j;
      auto bad = [](Complex c) {
        return !std::isfinite(c.real()) || !std::isfinite(c.imag());
      };
      if (bad(v.x1.coeffs()[p]) || bad(v.x2.coeffs()[p]))
        return "first non-finite mode k=(" + std::to_string(lat.wavenumber(i)) +
               "," + std::to_string(lat.wavenumber(j)) + ")";
    }
  return "all modes finite";
}

double grad_b_l2_sq(const SpectralVector2& b) {
  const double g = homogeneous_norm(b, 1.0);
  return g * g;
}

}  // namespace

double choose_dt(const FlowState& state, const BackgroundField& bg,
                 const StepControl& ctl) {
  if (!all_finite(state.u) || !all_finite(state.b))
    throw BlowUpError("non-finite state at t=" + std::to_string(state.t), state.t);
  const double h = 2.0 * M_PI / state.lattice().modes;
  const double n_speed = std::hypot(bg.n[0], bg.n[1]);
  const double denom = n_speed + max_speed(state.u) + max_speed(state.b) + 1e-12;
  const double dt_cfl = ctl.cfl * h / denom;
  if (dt_cfl < ctl.dt_min)
    throw BlowUpError("CFL step " + std::to_string(dt_cfl) + " below dt_min at t=" +
                          std::to_string(state.t) + " (max speed " +
                          std::to_string(denom) + "): blow-up suspected",
                      state.t);
  return std::min(dt_cfl, ctl.dt_max);
}

FlowState step_if_rk4(const FlowState& state, const BackgroundField& bg, double dt) {
  const double h = dt;

  auto eval = [&](const SpectralVector2& u, const SpectralVector2& b) {
    FlowState s;
    s.u = u;
    s.b = b;
    return rhs_nonstiff(s, bg);
  };

  const auto [k1u, k1b] = eval(state.u, state.b);
  const double d1 = grad_b_l2_sq(state.b);

  SpectralVector2 u1 = state.u + (h / 2.0) * k1u;
  SpectralVector2 b1 = state.b + (h / 2.0) * k1b;
  apply_diffusion_factor(b1, h / 2.0);
  const auto [k2u, k2b] = eval(u1, b1);
  const double d2 = grad_b_l2_sq(b1);

  SpectralVector2 u2 = state.u + (h / 2.0) * k2u;
  SpectralVector2 bh = state.b;
  apply_diffusion_factor(bh, h / 2.0);  // e^{-|k|^2 h/2} b
  SpectralVector2 b2 = bh + (h / 2.0) * k2b;
  const auto [k3u, k3b] = eval(u2, b2);
  const double d3 = grad_b_l2_sq(b2);

  SpectralVector2 u3 = state.u + h * k3u;
  SpectralVector2 k3b_half = k3b;
  apply_diffusion_factor(k3b_half, h / 2.0);
  SpectralVector2 bf = state.b;
  apply_diffusion_factor(bf, h);  // e^{-|k|^2 h} b
  SpectralVector2 b3 = bf + h * k3b_half;
  const auto [k4u, k4b] = eval(u3, b3);
  const double d4 = grad_b_l2_sq(b3);

  FlowState out;
  out.t = state.t + h;
  out.u = state.u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);

  SpectralVector2 k1b_full = k1b;
  apply_diffusion_factor(k1b_full, h);
  SpectralVector2 k2b_half = k2b;
  apply_diffusion_factor(k2b_half, h / 2.0);
  out.b = bf + (h / 6.0) * (k1b_full + 2.0 * k2b_half + 2.0 * k3b_half + k4b);

  out.dissipation_integral =
      state.dissipation_integral + (h / 6.0) * (d1 + 2.0 * d2 + 2.0 * d3 + d4);

  if (!all_finite(out.u) || !all_finite(out.b)) {
    const auto& bad = all_finite(out.u) ? out.b : out.u;
    throw BlowUpError("non-finite values after step to t=" + std::to_string(out.t) +
                          "; " + worst_mode_report(bad),
                      out.t);
  }
  return out;
}

FlowState advance_to(FlowState state, const BackgroundField& bg,
                     const StepControl& ctl, const Observer& observer) {
  if (ctl.t_end < state.t)
    throw std::invalid_argument("advance_to: t_end before current time");
  const double t0 = state.t;
  const double eps = 1e-12 * std::max(1.0, std::abs(ctl.t_end));

  if (observer) observer(state);
  long sample_index = 1;
  while (state.t < ctl.t_end - eps) {
    double dt = choose_dt(state, bg, ctl);
    const double next_sample = t0 + sample_index * ctl.sample_interval;
    double target = std::min(ctl.t_end, next_sample);
    dt = std::min(dt, target - state.t);
    state = step_if_rk4(state, bg, dt);
    if (state.t >= target - eps) {
      state.t = target;  // absorb roundoff so diagnostics land on exact times
      if (observer) observer(state);
      if (target >= ctl.t_end - eps) break;
      ++sample_index;
    }
  }
  return state;
}

}  // namespace mhd2d
