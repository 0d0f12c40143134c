#include <doctest.h>

#include <cmath>

#include "mhd2d/diophantine.hpp"

using namespace mhd2d;

TEST_CASE("diophantine_constant") {
  SUBCASE("golden direction: c_K = 1 at k = (1,0) for every searched K") {
    for (int K : {50, 100, 500, 1000}) {
      const auto cert = diophantine_constant(golden_vector(), 2.0, K);
      CHECK(cert.valid());
      CHECK(cert.c_K == 1.0);
      CHECK(cert.argmin_k == std::array<int, 2>{1, 0});
      CHECK(cert.K == K);
    }
  }

  SUBCASE("c_K is non-increasing in K") {
    const Vec2 n = noble_vector(7);
    double prev = std::numeric_limits<double>::infinity();
    for (int K : {10, 50, 200, 500}) {
      const double c = diophantine_constant(n, 2.0, K).c_K;
      CHECK(c <= prev);
      CHECK(c > 0.0);
      prev = c;
    }
  }

  SUBCASE("rational direction is resonant") {
    const auto cert = diophantine_constant({1.0, 0.0}, 2.0, 50);
    CHECK(cert.c_K == 0.0);
    CHECK_FALSE(cert.valid());
    CHECK(cert.argmin_k == std::array<int, 2>{0, 1});
  }

  SUBCASE("the minimum scales linearly with |n|") {
    const Vec2 g = golden_vector();
    const auto cert = diophantine_constant({2.0 * g[0], 2.0 * g[1]}, 2.0, 50);
    CHECK(cert.c_K == 2.0);
  }

  SUBCASE("brute force agrees on a tiny ball") {
    // K = 2: candidates (1,0),(0,1),(1,1),(1,-1),(1,2),... by hand the
    // minimum for n=(1,sqrt(2)) with r=2 is |1-sqrt(2)|*2 at (1,-1)
    const auto cert = diophantine_constant({1.0, std::sqrt(2.0)}, 2.0, 2);
    CHECK(cert.argmin_k == std::array<int, 2>{1, -1});
    CHECK(cert.c_K == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-14));
  }

  SUBCASE("invalid arguments throw") {
    CHECK_THROWS_AS(diophantine_constant(golden_vector(), 2.0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(diophantine_constant(golden_vector(), 1.0, 50),
                    std::invalid_argument);
  }
}

TEST_CASE("noble_vector") {
  SUBCASE("deterministic in the seed") {
    const Vec2 a = noble_vector(42);
    const Vec2 b = noble_vector(42);
    CHECK(a[1] == b[1]);
    CHECK(noble_vector(43)[1] != a[1]);
  }

  SUBCASE("twenty seeds all give valid certificates at K = 500") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Vec2 n = noble_vector(seed);
      CHECK(n[0] == 1.0);
      CHECK(n[1] > 1.0);
      CHECK(n[1] < 2.0);
      const auto cert = diophantine_constant(n, 2.0, 500);
      INFO("seed ", seed, " n2 ", n[1]);
      CHECK(cert.valid());
      CHECK(cert.c_K > 1e-3);
    }
  }
}

TEST_CASE("verify_poincare") {
  const WaveLattice lat = WaveLattice::make(32);
  const auto cert = diophantine_constant(golden_vector(), 2.0, 50);

  SUBCASE("hand check: f = 2 cos(x1 + x2) at s = 0") {
    SpectralScalar f(lat);
    f.set(1, 1, Complex{1.0, 0.0});
    f.set(-1, -1, Complex{1.0, 0.0});
    const PoincareCheck chk = verify_poincare(f, cert, 0.0);
    CHECK(chk.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    // |n.grad f|_{H^2} / c_K = sqrt(2) * 3 * (1+phi)
    CHECK(chk.rhs == doctest::Approx(std::sqrt(2.0) * 3.0 * (1.0 + phi)).epsilon(1e-14));
    CHECK(chk.holds);
  }

  SUBCASE("holds across s on random-ish mean-zero fields") {
    SpectralScalar f(lat);
    for (int k1 = -5; k1 <= 5; ++k1)
      for (int k2 = -5; k2 <= 5; ++k2) {
        if (k1 == 0 && k2 == 0) continue;
        f.set(k1, k2, Complex{0.1 / (1.0 + k1 * k1 + k2 * k2),
                              0.05 * k1 * k2});
      }
    f.enforce_invariants();
    for (double s : {0.0, 1.0, 2.5, 5.5}) {
      const PoincareCheck chk = verify_poincare(f, cert, s);
      CHECK(chk.holds);
      CHECK(chk.lhs < chk.rhs);
    }
  }

  SUBCASE("the argmin mode saturates at the predicted ratio") {
    SpectralScalar f(lat);
    f.set(cert.argmin_k[0], cert.argmin_k[1], Complex{0.3, 0.4});
    f.enforce_invariants();
    const double q = static_cast<double>(cert.argmin_k[0] * cert.argmin_k[0] +
                                         cert.argmin_k[1] * cert.argmin_k[1]);
    const double expected = std::pow(q / (1.0 + q), cert.r / 2.0);
    const PoincareCheck chk = verify_poincare(f, cert, 3.0);
    CHECK(chk.lhs / chk.rhs == doctest::Approx(expected).epsilon(1e-13));
  }

  SUBCASE("homogeneous variant is exactly saturated on the argmin mode") {
    SpectralScalar f(lat);
    f.set(cert.argmin_k[0], cert.argmin_k[1], Complex{0.3, 0.4});
    f.enforce_invariants();
    // |k*| = 1: Hdot^s norm equals |n.grad f|_{H^{s+r}} / c_K up to (1+q)^{r/2} vs q^{r/2}
    const PoincareCheck chk = verify_homogeneous_poincare(f, cert, 3.0);
    CHECK(chk.holds);
    CHECK(chk.lhs <= chk.rhs);
  }

  SUBCASE("rejections") {
    SpectralScalar f(lat);
    f.set(1, 0, Complex{0.5, 0.0});
    f.set(-1, 0, Complex{0.5, 0.0});

    SpectralScalar with_mean = f;
    with_mean.set(0, 0, Complex{1.0, 0.0});
    CHECK_THROWS_AS(verify_poincare(with_mean, cert, 0.0), std::invalid_argument);

    DiophantineCertificate resonant = cert;
    resonant.c_K = 0.0;
    CHECK_THROWS_AS(verify_poincare(f, resonant, 0.0), std::invalid_argument);

    const auto small_cert = diophantine_constant(golden_vector(), 2.0, 10);
    // lattice radius of M=32 exceeds K=10
    CHECK_THROWS_AS(verify_poincare(f, small_cert, 0.0), std::invalid_argument);

    CHECK_THROWS_AS(verify_homogeneous_poincare(f, cert, 0.0), std::invalid_argument);
  }
}
