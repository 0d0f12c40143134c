#include "mhd2d/diophantine.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mhd2d {

DiophantineCertificate diophantine_constant(Vec2 n, double r, int K) {
  if (K < 1) throw std::invalid_argument("diophantine_constant: K >= 1 required");
  if (!(r > 1.0)) throw std::invalid_argument("diophantine_constant: r > 1 required");
  DiophantineCertificate cert;
  cert.n = n;
  cert.r = r;
  cert.K = K;
  double best = std::numeric_limits<double>::infinity();
  std::array<int, 2> best_k{0, 0};
  const long K2 = static_cast<long>(K) * K;
  // |n.k| |k|^r is symmetric under k -> -k; scan the canonical half lattice
  for (int k1 = 0; k1 <= K; ++k1) {
    for (int k2 = -K; k2 <= K; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const long q = static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2;
      if (q > K2) continue;
      const double v = std::abs(n[0] * k1 + n[1] * k2) *
                       std::pow(static_cast<double>(q), r / 2.0);
      const std::array<int, 2> k{k1, k2};
      if (v < best || (v == best && k < best_k)) {
        best = v;
        best_k = k;
      }
    }
  }
  cert.c_K = best;
  cert.argmin_k = best_k;
  return cert;
}

Vec2 golden_vector() { return {1.0, (1.0 + std::sqrt(5.0)) / 2.0}; }

Vec2 noble_vector(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> quotient(1, 2);
  // evaluate [a0; a1, a2, ...] from the tail up
  constexpr int depth = 48;
  int a[depth];
  a[0] = 1;  // keep the slope in (1, 2)
  for (int i = 1; i < depth; ++i) a[i] = quotient(rng);
  double x = static_cast<double>(a[depth - 1]);
  for (int i = depth - 2; i >= 0; --i) x = a[i] + 1.0 / x;
  return {1.0, x};
}

namespace {

void check_certificate(const SpectralScalar& f, const DiophantineCertificate& cert) {
  if (!cert.valid())
    throw std::invalid_argument("verify_poincare: certificate has c_K = 0");
  if (f.lattice().radius() > cert.K + 1e-12)
    throw std::invalid_argument(
        "verify_poincare: field band exceeds the certified lattice radius");
}

PoincareCheck check_with(double lhs, const SpectralScalar& f,
                         const DiophantineCertificate& cert, double s) {
  PoincareCheck out;
  out.lhs = lhs;
  out.rhs = sobolev_norm(directional_derivative(f, cert.n), s + cert.r) / cert.c_K;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

}  // namespace

PoincareCheck verify_poincare(const SpectralScalar& f,
                              const DiophantineCertificate& cert, double s) {
  check_certificate(f, cert);
  const double mean = std::abs(f(0, 0));
  if (mean > 1e-13 * (1.0 + sobolev_norm(f, 0.0)))
    throw std::invalid_argument("verify_poincare: field must have zero mean");
  return check_with(sobolev_norm(f, s), f, cert, s);
}

PoincareCheck verify_homogeneous_poincare(const SpectralScalar& f,
                                          const DiophantineCertificate& cert,
                                          double s) {
  if (!(s > 0.0))
    throw std::invalid_argument("verify_homogeneous_poincare: s > 0 required");
  check_certificate(f, cert);
  return check_with(homogeneous_norm(f, s), f, cert, s);
}

}  // namespace mhd2d
