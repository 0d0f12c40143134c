#ifndef MHD2D_INTEGRATOR_HPP
#define MHD2D_INTEGRATOR_HPP

#include <functional>
#include <stdexcept>

#include "mhd2d/mhd.hpp"

namespace mhd2d {

struct StepControl {
  double cfl = 0.4;            // in (0, 1]
  double dt_max = 0.05;
  double dt_min = 1e-9;
  double t_end = 1.0;
  double sample_interval = 0.1;
};

struct BlowUpError : std::runtime_error {
  double t;
  explicit BlowUpError(const std::string& msg, double time)
      : std::runtime_error(msg), t(time) {}
};

/// Advective CFL step: cfl * h / (|n| + max|u| + max|b| + floor), clamped to
/// [dt_min, dt_max]. Diffusion is handled exactly and imposes no restriction.
/// Throws BlowUpError on non-finite state or when the CFL bound falls below
/// dt_min.
double choose_dt(const FlowState& state, const BackgroundField& bg,
                 const StepControl& ctl);

/// One integrating-factor classical RK4 step. The substitution
/// b_tilde(k,t) = e^{|k|^2 t} b_hat(k,t) makes the magnetic diffusion exact;
/// RK4 handles the rest. The L2 magnetic dissipation integral is advanced
/// with the same RK4 quadrature.
FlowState step_if_rk4(const FlowState& state, const BackgroundField& bg, double dt);

using Observer = std::function<void(const FlowState&)>;

/// Step from state.t to ctl.t_end, invoking the observer at t = state.t and
/// at every multiple of sample_interval (steps are truncated to land on
/// sample times and on t_end exactly).
FlowState advance_to(FlowState state, const BackgroundField& bg,
                     const StepControl& ctl, const Observer& observer = {});

}  // namespace mhd2d

#endif
