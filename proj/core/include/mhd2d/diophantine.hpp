#ifndef MHD2D_DIOPHANTINE_HPP
#define MHD2D_DIOPHANTINE_HPP

#include <array>
#include <cstdint>
#include <tuple>

#include "mhd2d/spectral.hpp"

namespace mhd2d {

/// Result of the brute-force scan of min |n.k| |k|^r over 0 < |k| <= K.
/// c_K > 0 certifies the non-resonance |n.k| >= c_K / |k|^r on that ball.
struct DiophantineCertificate {
  Vec2 n{0.0, 0.0};
  double r = 2.0;
  int K = 0;
  double c_K = 0.0;
  std::array<int, 2> argmin_k{0, 0};

  bool valid() const { return c_K > 0.0; }
};

/// Exact minimum over the finite lattice ball; lexicographic tie-break on k.
/// A rational direction reachable within K yields c_K = 0 (invalid).
DiophantineCertificate diophantine_constant(Vec2 n, double r, int K);

/// (1, golden ratio): all continued-fraction partial quotients equal 1.
Vec2 golden_vector();

/// (1, x) with x drawn from continued fractions with partial quotients in
/// {1, 2}; badly approximable, hence Diophantine for every r > 1.
/// Deterministic in the seed.
Vec2 noble_vector(std::uint64_t seed);

struct PoincareCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// |f|_{H^s} <= (1/c_K) |n.grad f|_{H^{s+r}} for mean-zero f band-limited
/// within the certified radius. Throws on nonzero mean or invalid certificate.
PoincareCheck verify_poincare(const SpectralScalar& f,
                              const DiophantineCertificate& cert, double s);

/// Homogeneous variant |f|_{Hdot^s} <= (1/c_K) |n.grad f|_{H^{s+r}}; no
/// mean-zero requirement, needs s > 0.
PoincareCheck verify_homogeneous_poincare(const SpectralScalar& f,
                                          const DiophantineCertificate& cert,
                                          double s);

}  // namespace mhd2d

#endif
