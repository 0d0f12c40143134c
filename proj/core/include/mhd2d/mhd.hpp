#ifndef MHD2D_MHD_HPP
#define MHD2D_MHD_HPP

#include <string>
#include <utility>
#include <vector>

#include "mhd2d/spectral.hpp"

namespace mhd2d {

/// Background magnetic direction n with its Diophantine data.
struct BackgroundField {
  Vec2 n{0.0, 0.0};
  double r = 2.0;    // Diophantine exponent, > 1
  double c_K = 0.0;  // certified constant on the searched lattice ball
};

/// Perturbation state: time plus the (u, b) pair on a shared lattice.
/// dissipation_integral accumulates int_0^t |grad b|_{L2}^2 via the same
/// RK quadrature as the time stepper.
struct FlowState {
  double t = 0.0;
  SpectralVector2 u, b;
  double dissipation_integral = 0.0;

  FlowState() = default;
  FlowState(double time, SpectralVector2 vel, SpectralVector2 mag)
      : t(time), u(std::move(vel)), b(std::move(mag)) {}
  const WaveLattice& lattice() const { return u.lattice(); }
};

/// Fourier-side projection onto divergence-free fields; zero mode untouched.
SpectralVector2 leray_project(const SpectralVector2& v);

/// Max over modes of |k . v_hat(k)|.
double max_divergence(const SpectralVector2& v);

/// (v . grad) f, dealiased.
SpectralScalar advect(const SpectralVector2& v, const SpectralScalar& f);
SpectralVector2 advect(const SpectralVector2& v, const SpectralVector2& f);

/// Right-hand sides of the perturbed system with pressure eliminated:
///   du/dt = P( n.grad b + (b.grad)b - (u.grad)u )
///   db/dt = Lap b + n.grad u + (b.grad)u - (u.grad)b
/// db/dt is re-projected for roundoff hygiene.
std::pair<SpectralVector2, SpectralVector2> rhs(const FlowState& state,
                                                const BackgroundField& bg);

/// db/dt without the diffusion term (the stiff part is handled exactly by
/// the integrating-factor stepper).
std::pair<SpectralVector2, SpectralVector2> rhs_nonstiff(const FlowState& state,
                                                         const BackgroundField& bg);

struct CancellationResidual {
  std::string name;
  double residual;  // normalized by the product of participating norms
};

/// Residuals of the exact energy-method cancellations, including the
/// |k|^s-weighted family for s = 0..m.
std::vector<CancellationResidual> cancellation_suite(const SpectralVector2& u,
                                                     const SpectralVector2& b,
                                                     Vec2 n, int m = 2);

/// Apply |k|^s to each component.
SpectralScalar fractional_derivative(const SpectralScalar& f, double s);
SpectralVector2 fractional_derivative(const SpectralVector2& v, double s);

}  // namespace mhd2d

#endif
