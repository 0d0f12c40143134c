#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mhd2d/experiment.hpp"
#include "mhd2d/spectral.hpp"

using namespace mhd2d;

namespace {

// Slow direct evaluation of f(x) = sum_k c(k) e^{ik.x} on a P x P grid;
// independent of the FFT path.
std::vector<Complex> slow_eval(const SpectralScalar& f, int grid) {
  const WaveLattice& lat = f.lattice();
  const int m = lat.modes;
  std::vector<Complex> out(static_cast<std::size_t>(grid) * grid, Complex{0, 0});
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      const Complex c = f.coeffs()[static_cast<std::size_t>(i) * m + j];
      if (c == Complex{0, 0}) continue;
      for (int a = 0; a < grid; ++a) {
        const double x1 = 2.0 * M_PI * a / grid;
        for (int b = 0; b < grid; ++b) {
          const double x2 = 2.0 * M_PI * b / grid;
          out[static_cast<std::size_t>(a) * grid + b] +=
              c * std::exp(Complex{0.0, k1 * x1 + k2 * x2});
        }
      }
    }
  }
  return out;
}

SpectralScalar cosine_x1(WaveLattice lat, double amplitude = 1.0) {
  SpectralScalar f(lat);
  f.set(1, 0, Complex{amplitude / 2.0, 0.0});
  f.set(-1, 0, Complex{amplitude / 2.0, 0.0});
  return f;
}

double rel_diff(const SpectralScalar& a, const SpectralScalar& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    num += std::norm(a.coeffs()[i] - b.coeffs()[i]);
    den += std::norm(b.coeffs()[i]);
  }
  return std::sqrt(num / (den + 1e-300));
}

}  // namespace

TEST_CASE("forward/inverse transform") {
  const WaveLattice lat = WaveLattice::make(16);

  SUBCASE("zero samples give zero coefficients") {
    std::vector<double> zero(static_cast<std::size_t>(lat.padded) * lat.padded, 0.0);
    const SpectralScalar f = forward_transform(zero, lat);
    for (const Complex& c : f.coeffs()) CHECK(c == Complex{0, 0});
  }

  SUBCASE("cos(x1) has coefficients 1/2 at k=(+-1,0)") {
    const int p = lat.padded;
    std::vector<double> samples(static_cast<std::size_t>(p) * p);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        samples[static_cast<std::size_t>(a) * p + b] = std::cos(2.0 * M_PI * a / p);
    const SpectralScalar f = forward_transform(samples, lat);
    CHECK(std::abs(f(1, 0) - Complex{0.5, 0.0}) < 1e-14);
    CHECK(std::abs(f(-1, 0) - Complex{0.5, 0.0}) < 1e-14);
    double rest = 0.0;
    for (const Complex& c : f.coeffs()) rest += std::norm(c);
    CHECK(rest == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("roundtrip is the identity on band-limited data") {
    const SpectralScalar f = random_divfree_field(lat, 7).x1;
    const SpectralScalar back = forward_transform(inverse_transform(f, lat.padded), lat);
    CHECK(rel_diff(back, f) < 1e-13);
  }

  SUBCASE("dimension mismatch is rejected") {
    std::vector<double> wrong(10, 0.0);
    CHECK_THROWS_AS(forward_transform(wrong, lat), std::invalid_argument);
    const SpectralScalar f(lat);
    CHECK_THROWS_AS(inverse_transform(f, 4), std::invalid_argument);
  }
}

TEST_CASE("partial_derivative") {
  const WaveLattice lat = WaveLattice::make(16);

  SUBCASE("d/dx1 cos(x1) = -sin(x1)") {
    const SpectralScalar d = partial_derivative(cosine_x1(lat), 1);
    // -sin(x1) has coefficients +-1/(2i) = -+ i/2
    CHECK(std::abs(d(1, 0) - Complex{0.0, 0.5}) < 1e-15);
    CHECK(std::abs(d(-1, 0) - Complex{0.0, -0.5}) < 1e-15);
  }

  SUBCASE("constant maps to zero") {
    SpectralScalar f(lat);
    f.set(0, 0, Complex{3.0, 0.0});
    const SpectralScalar d = partial_derivative(f, 1);
    CHECK(sobolev_norm(d, 0.0) == 0.0);
  }

  SUBCASE("mixed partials commute") {
    const SpectralScalar f = random_divfree_field(lat, 3).x1;
    const SpectralScalar a = partial_derivative(partial_derivative(f, 1), 2);
    const SpectralScalar b = partial_derivative(partial_derivative(f, 2), 1);
    CHECK(rel_diff(a, b) < 1e-15);
  }

  SUBCASE("derivative of reality-symmetric input is reality-symmetric") {
    const SpectralScalar d = partial_derivative(random_divfree_field(lat, 9).x1, 2);
    for (int k1 = -7; k1 <= 7; ++k1)
      for (int k2 = -7; k2 <= 7; ++k2)
        CHECK(std::abs(d(k1, k2) - std::conj(d(-k1, -k2))) < 1e-16);
  }
}

TEST_CASE("directional_derivative") {
  const WaveLattice lat = WaveLattice::make(16);

  SUBCASE("n=(1,0) on cos(x1) gives -sin(x1)") {
    const SpectralScalar d = directional_derivative(cosine_x1(lat), Vec2{1.0, 0.0});
    CHECK(std::abs(d(1, 0) - Complex{0.0, 0.5}) < 1e-15);
    CHECK(std::abs(d(-1, 0) - Complex{0.0, -0.5}) < 1e-15);
  }

  SUBCASE("n=0 annihilates everything") {
    const SpectralScalar f = random_divfree_field(lat, 5).x1;
    const SpectralScalar d = directional_derivative(f, Vec2{0.0, 0.0});
    CHECK(sobolev_norm(d, 0.0) == 0.0);
  }

  SUBCASE("golden n scales the (1,-1) mode by phi-1") {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    SpectralScalar f(lat);
    f.set(1, -1, Complex{1.0, 0.0});
    f.set(-1, 1, Complex{1.0, 0.0});
    const SpectralScalar d = directional_derivative(f, Vec2{1.0, phi});
    CHECK(std::abs(d(1, -1)) == doctest::Approx(phi - 1.0).epsilon(1e-13));
  }

  SUBCASE("kills the k=0 mode") {
    SpectralScalar f(lat);
    f.set(0, 0, Complex{2.0, 0.0});
    const SpectralScalar d = directional_derivative(f, Vec2{1.0, 1.0});
    CHECK(std::abs(d(0, 0)) == 0.0);
  }
}

TEST_CASE("sobolev_norm") {
  const WaveLattice lat = WaveLattice::make(32);

  SUBCASE("zero field") { CHECK(sobolev_norm(SpectralScalar(lat), 3.0) == 0.0); }

  SUBCASE("2cos(x1) at s=1 equals 2 (hand Plancherel sum)") {
    CHECK(sobolev_norm(cosine_x1(lat, 2.0), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("lattice sum matches brute-force quadrature oracle") {
    const SpectralScalar f = random_divfree_field(lat, 11).x1;
    const double s = 2.5;
    // apply the pseudodifferential weight mode by mode, evaluate on the
    // padded grid by direct summation, integrate by the trapezoid-on-torus
    SpectralScalar weighted = f;
    for (int i = 0; i < lat.modes; ++i)
      for (int j = 0; j < lat.modes; ++j) {
        const int k1 = lat.wavenumber(i);
        const int k2 = lat.wavenumber(j);
        const double q = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
        weighted.coeffs()[static_cast<std::size_t>(i) * lat.modes + j] *=
            std::pow(1.0 + q, s / 2.0);
      }
    const auto phys = slow_eval(weighted, lat.padded);
    double quad = 0.0;
    for (const Complex& v : phys) quad += std::norm(v);
    quad /= phys.size();
    const double norm = sobolev_norm(f, s);
    CHECK(norm * norm == doctest::Approx(quad).epsilon(1e-10));
  }

  SUBCASE("s=0 equals the L2 norm by Plancherel against quadrature") {
    const SpectralScalar f = random_divfree_field(lat, 13).x1;
    const auto phys = inverse_transform(f, lat.padded);
    double quad = 0.0;
    for (double v : phys) quad += v * v;
    quad /= phys.size();
    const double n0 = sobolev_norm(f, 0.0);
    CHECK(n0 * n0 == doctest::Approx(quad).epsilon(1e-10));
  }
}

TEST_CASE("homogeneous_norm") {
  const WaveLattice lat = WaveLattice::make(16);

  SUBCASE("constants map to zero") {
    SpectralScalar f(lat);
    f.set(0, 0, Complex{5.0, 0.0});
    CHECK(homogeneous_norm(f, 1.0) == 0.0);
  }

  SUBCASE("2cos(x1) at s=2 equals sqrt(2)") {
    CHECK(homogeneous_norm(cosine_x1(lat, 2.0), 2.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }

  SUBCASE("coincides with sobolev_norm at s=0 for mean-zero fields") {
    const SpectralScalar f = random_divfree_field(lat, 17).x1;
    CHECK(homogeneous_norm(f, 0.0) ==
          doctest::Approx(sobolev_norm(f, 0.0)).epsilon(1e-14));
  }
}

TEST_CASE("weighted_inner_product") {
  const WaveLattice lat = WaveLattice::make(16);

  SUBCASE("diagonal equals squared homogeneous norm") {
    const SpectralScalar f = random_divfree_field(lat, 19).x1;
    const double h = homogeneous_norm(f, 1.5);
    CHECK(weighted_inner_product(f, f, 1.5) == doctest::Approx(h * h).epsilon(1e-13));
  }

  SUBCASE("cos(x1) and sin(x1) are orthogonal") {
    SpectralScalar s1(lat);
    s1.set(1, 0, Complex{0.0, -0.5});
    s1.set(-1, 0, Complex{0.0, 0.5});
    CHECK(weighted_inner_product(cosine_x1(lat), s1, 2.0) == doctest::Approx(0.0));
  }

  SUBCASE("disjoint spectra give zero") {
    SpectralScalar c2(lat);
    c2.set(0, 1, Complex{0.5, 0.0});
    c2.set(0, -1, Complex{0.5, 0.0});
    CHECK(weighted_inner_product(cosine_x1(lat), c2, 1.0) == 0.0);
  }

  SUBCASE("lattice mismatch is rejected") {
    const SpectralScalar a(lat), b(WaveLattice::make(32));
    CHECK_THROWS_AS(weighted_inner_product(a, b, 1.0), LatticeMismatch);
  }
}

TEST_CASE("dealiased_product") {
  const WaveLattice lat = WaveLattice::make(16);

  SUBCASE("constant one is the identity element") {
    SpectralScalar one(lat);
    one.set(0, 0, Complex{1.0, 0.0});
    const SpectralScalar g = random_divfree_field(lat, 23).x1;
    CHECK(rel_diff(dealiased_product(one, g), g) < 1e-14);
  }

  SUBCASE("cos^2(x1) = 1/2 + cos(2x1)/2") {
    const SpectralScalar f = cosine_x1(lat);
    const SpectralScalar p = dealiased_product(f, f);
    CHECK(std::abs(p(0, 0) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(p(2, 0) - Complex{0.25, 0.0}) < 1e-15);
    CHECK(std::abs(p(-2, 0) - Complex{0.25, 0.0}) < 1e-15);
    CHECK(std::abs(p(1, 0)) < 1e-15);
  }

  SUBCASE("adjoint associativity under the L2 pairing (quadrature oracle)") {
    // degrees below the cutoff so that every product is exact
    const WaveLattice small = WaveLattice::make(16);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    auto band_limited = [&](int band) {
      SpectralScalar f(small);
      for (int k1 = 0; k1 <= band; ++k1)
        for (int k2 = -band; k2 <= band; ++k2) {
          if (k1 == 0 && k2 <= 0) continue;
          const Complex c{amp(rng), amp(rng)};
          f.set(k1, k2, c);
          f.set(-k1, -k2, std::conj(c));
        }
      f.set(0, 0, Complex{amp(rng), 0.0});
      return f;
    };
    const SpectralScalar f = band_limited(2), g = band_limited(2), h = band_limited(2);
    const double lhs = l2_inner_product(dealiased_product(f, g), h);
    const double rhs = l2_inner_product(f, dealiased_product(g, h));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    // oracle: direct quadrature of the triple product on the padded grid
    const auto pf = slow_eval(f, small.padded);
    const auto pg = slow_eval(g, small.padded);
    const auto ph = slow_eval(h, small.padded);
    double quad = 0.0;
    for (std::size_t i = 0; i < pf.size(); ++i)
      quad += (pf[i] * pg[i] * ph[i]).real();
    quad /= pf.size();
    CHECK(lhs == doctest::Approx(quad).epsilon(1e-12));
  }
}

TEST_CASE("module-wide invariants") {
  const WaveLattice lat = WaveLattice::make(32);

  SUBCASE("exact Sobolev interpolation (Holder, constant 1)") {
    const SpectralScalar f = random_divfree_field(lat, 31).x1;
    for (const auto& [s1, s2, theta] :
         {std::tuple{0.0, 4.0, 0.5}, {1.0, 6.0, 0.25}, {0.5, 9.0, 0.75}}) {
      const double mid = theta * s1 + (1.0 - theta) * s2;
      const double bound = std::pow(sobolev_norm(f, s1), theta) *
                           std::pow(sobolev_norm(f, s2), 1.0 - theta);
      CHECK(sobolev_norm(f, mid) <= bound * (1.0 + 1e-12));
    }
  }

  SUBCASE("reality and Nyquist preserved by products and derivatives") {
    const SpectralScalar f = random_divfree_field(lat, 37).x1;
    const SpectralScalar g = random_divfree_field(lat, 41).x1;
    for (const SpectralScalar& out :
         {dealiased_product(f, g), partial_derivative(f, 1),
          directional_derivative(f, golden_vector())}) {
      const int half = lat.modes / 2;
      for (int k2 = -half + 1; k2 <= half; ++k2) CHECK(out(half, k2) == Complex{0, 0});
      for (int k1 = -half + 1; k1 < half; ++k1)
        for (int k2 = -half + 1; k2 < half; ++k2)
          CHECK(std::abs(out(k1, k2) - std::conj(out(-k1, -k2))) <= 1e-14);
    }
  }

  SUBCASE("directional derivative is skew-adjoint") {
    const SpectralScalar f = random_divfree_field(lat, 43).x1;
    const SpectralScalar g = random_divfree_field(lat, 47).x1;
    const Vec2 n = golden_vector();
    for (double s : {0.0, 1.0, 2.5}) {
      const double a = weighted_inner_product(directional_derivative(f, n), g, s);
      const double b = weighted_inner_product(f, directional_derivative(g, n), s);
      CHECK(std::abs(a + b) <= 1e-12 * (std::abs(a) + std::abs(b) + 1e-300));
    }
  }
}
