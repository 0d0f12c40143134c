#include "mhd2d/mhd.hpp"

#include <cmath>

namespace mhd2d {

SpectralVector2 leray_project(const SpectralVector2& v) {
  const WaveLattice& lat = v.lattice();
  const int m = lat.modes;
  SpectralVector2 out = v;
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      if (k1 == 0 && k2 == 0) continue;
      const double q = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const std::size_t p = static_cast<std::size_t>(i) * m + j;
      const Complex dot = static_cast<double>(k1) * out.x1.coeffs()[p] +
                          static_cast<double>(k2) * out.x2.coeffs()[p];
      out.x1.coeffs()[p] -= static_cast<double>(k1) * dot / q;
      out.x2.coeffs()[p] -= static_cast<double>(k2) * dot / q;
    }
  }
  return out;
}

double max_divergence(const SpectralVector2& v) {
  const WaveLattice& lat = v.lattice();
  const int m = lat.modes;
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      const std::size_t p = static_cast<std::size_t>(i) * m + j;
      const Complex dot = static_cast<double>(k1) * v.x1.coeffs()[p] +
                          static_cast<double>(k2) * v.x2.coeffs()[p];
      worst = std::max(worst, std::abs(dot));
    }
  }
  return worst;
}

SpectralScalar advect(const SpectralVector2& v, const SpectralScalar& f) {
  return dealiased_product(v.x1, partial_derivative(f, 1)) +
         dealiased_product(v.x2, partial_derivative(f, 2));
}

SpectralVector2 advect(const SpectralVector2& v, const SpectralVector2& f) {
  SpectralVector2 out;
  out.x1 = advect(v, f.x1);
  out.x2 = advect(v, f.x2);
  return out;
}

static void zero_mean(SpectralVector2& v) {
  v.x1.set(0, 0, Complex{0.0, 0.0});
  v.x2.set(0, 0, Complex{0.0, 0.0});
}

std::pair<SpectralVector2, SpectralVector2> rhs_nonstiff(const FlowState& state,
                                                         const BackgroundField& bg) {
  const SpectralVector2 ndb = directional_derivative(state.b, bg.n);
  const SpectralVector2 ndu = directional_derivative(state.u, bg.n);

  SpectralVector2 du = ndb + advect(state.b, state.b) - advect(state.u, state.u);
  du = leray_project(du);
  zero_mean(du);

  SpectralVector2 db = ndu + advect(state.b, state.u) - advect(state.u, state.b);
  db = leray_project(db);  // analytically div-free; kill roundoff drift
  zero_mean(db);
  return {std::move(du), std::move(db)};
}

std::pair<SpectralVector2, SpectralVector2> rhs(const FlowState& state,
                                                const BackgroundField& bg) {
  auto [du, db] = rhs_nonstiff(state, bg);
  db += laplacian(state.b);
  return {std::move(du), std::move(db)};
}

SpectralScalar fractional_derivative(const SpectralScalar& f, double s) {
  const WaveLattice& lat = f.lattice();
  const int m = lat.modes;
  SpectralScalar out(lat);
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      const std::size_t p = static_cast<std::size_t>(i) * m + j;
      if (k1 == 0 && k2 == 0) continue;  // D^s annihilates the mean
      const double q = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      out.coeffs()[p] = std::pow(q, s / 2.0) * f.coeffs()[p];
    }
  }
  return out;
}

SpectralVector2 fractional_derivative(const SpectralVector2& v, double s) {
  SpectralVector2 out;
  out.x1 = fractional_derivative(v.x1, s);
  out.x2 = fractional_derivative(v.x2, s);
  return out;
}

namespace {

// One pairing <a, c> with its scale |a|_{L2} |c|_{L2}.
struct Pairing {
  double value;
  double scale;
};

Pairing pair_l2(const SpectralVector2& a, const SpectralVector2& c) {
  return {l2_inner_product(a, c),
          std::sqrt(l2_inner_product(a, a) * l2_inner_product(c, c))};
}

CancellationResidual normalized(std::string name, std::initializer_list<Pairing> parts) {
  double value = 0.0, scale = 0.0;
  for (const Pairing& p : parts) {
    value += p.value;
    scale += p.scale;
  }
  return {std::move(name), scale > 0.0 ? std::abs(value) / scale : std::abs(value)};
}

}  // namespace

std::vector<CancellationResidual> cancellation_suite(const SpectralVector2& u,
                                                     const SpectralVector2& b,
                                                     Vec2 n, int m) {
  std::vector<CancellationResidual> out;

  const SpectralVector2 adv_uu = advect(u, u);
  const SpectralVector2 adv_ub = advect(u, b);
  const SpectralVector2 ndb = directional_derivative(b, n);
  const SpectralVector2 ndu = directional_derivative(u, n);

  out.push_back(normalized("<u.grad u, u>", {pair_l2(adv_uu, u)}));
  out.push_back(normalized("<u.grad b, b>", {pair_l2(adv_ub, b)}));

  // pressure gradient part of the full velocity nonlinearity
  SpectralVector2 w = ndb + advect(b, b) - adv_uu;
  const SpectralVector2 grad_part = w - leray_project(w);
  out.push_back(normalized("<grad p, u>", {pair_l2(grad_part, u)}));

  out.push_back(normalized("<b.grad b, u> + <b.grad u, b>",
                           {pair_l2(advect(b, b), u), pair_l2(advect(b, u), b)}));
  out.push_back(normalized("<n.grad b, u> + <n.grad u, b>",
                           {pair_l2(ndb, u), pair_l2(ndu, b)}));

  for (int s = 0; s <= m; ++s) {
    const SpectralVector2 dsu = fractional_derivative(u, s);
    const SpectralVector2 dsb = fractional_derivative(b, s);
    out.push_back(normalized("<u.grad D^" + std::to_string(s) + " u, D^" +
                                 std::to_string(s) + " u>",
                             {pair_l2(advect(u, dsu), dsu)}));
    out.push_back(normalized("<u.grad D^" + std::to_string(s) + " b, D^" +
                                 std::to_string(s) + " b>",
                             {pair_l2(advect(u, dsb), dsb)}));
    out.push_back(normalized("<b.grad D^" + std::to_string(s) + " b, D^" +
                                 std::to_string(s) + " u> + sym",
                             {pair_l2(advect(b, dsb), dsu), pair_l2(advect(b, dsu), dsb)}));
    out.push_back(normalized("<D^" + std::to_string(s) + "(n.grad b), D^" +
                                 std::to_string(s) + " u> + sym",
                             {pair_l2(fractional_derivative(ndb, s), dsu),
                              pair_l2(fractional_derivative(ndu, s), dsb)}));
  }
  return out;
}

}  // namespace mhd2d
