#include "mhd2d/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace mhd2d {

WaveLattice WaveLattice::make(int modes_per_dim) {
  if (modes_per_dim <= 0 || modes_per_dim % 2 != 0)
    throw std::invalid_argument("modes_per_dim must be even and positive");
  WaveLattice lat;
  lat.modes = modes_per_dim;
  lat.padded = 3 * modes_per_dim / 2;
  if (lat.padded % 2 != 0) ++lat.padded;
  return lat;
}

double WaveLattice::radius() const {
  // Nyquist modes are pinned to zero, so the outermost mode that can carry
  // data is the (M/2 - 1, M/2 - 1) corner.
  const double half = modes / 2.0 - 1.0;
  return std::sqrt(2.0) * half;
}

void SpectralScalar::enforce_invariants() {
  const int m = lattice_.modes;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (lattice_.is_nyquist(i, j)) {
        coeffs_[static_cast<std::size_t>(i) * m + j] = Complex{0.0, 0.0};
      }
    }
  }
  for (int k1 = -m / 2 + 1; k1 <= m / 2 - 1; ++k1) {
    for (int k2 = -m / 2 + 1; k2 <= m / 2 - 1; ++k2) {
      if (k1 < 0 || (k1 == 0 && k2 < 0)) continue;  // visit each pair once
      const std::size_t p = idx(k1, k2);
      const std::size_t q = idx(-k1, -k2);
      const Complex avg = 0.5 * (coeffs_[p] + std::conj(coeffs_[q]));
      coeffs_[p] = avg;
      coeffs_[q] = std::conj(avg);
    }
  }
  coeffs_[idx(0, 0)].imag(0.0);
}

static void check_same_lattice(const WaveLattice& a, const WaveLattice& b) {
  if (!(a == b)) throw LatticeMismatch("spectral fields live on different lattices");
}

SpectralScalar& SpectralScalar::operator+=(const SpectralScalar& o) {
  check_same_lattice(lattice_, o.lattice_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}
SpectralScalar& SpectralScalar::operator-=(const SpectralScalar& o) {
  check_same_lattice(lattice_, o.lattice_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}
SpectralScalar& SpectralScalar::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) { return a += b; }
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) { return a -= b; }
SpectralScalar operator*(double a, SpectralScalar f) { return f *= a; }

SpectralVector2& SpectralVector2::operator+=(const SpectralVector2& o) {
  x1 += o.x1;
  x2 += o.x2;
  return *this;
}
SpectralVector2& SpectralVector2::operator-=(const SpectralVector2& o) {
  x1 -= o.x1;
  x2 -= o.x2;
  return *this;
}
SpectralVector2& SpectralVector2::operator*=(double a) {
  x1 *= a;
  x2 *= a;
  return *this;
}
SpectralVector2 operator+(SpectralVector2 a, const SpectralVector2& b) { return a += b; }
SpectralVector2 operator-(SpectralVector2 a, const SpectralVector2& b) { return a -= b; }
SpectralVector2 operator*(double a, SpectralVector2 v) { return v *= a; }

// ---- FFT workspaces -------------------------------------------------------

namespace {

// FFTW planning is not thread-safe; execution on private buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftGrid {
  int n = 0;
  fftw_complex* a = nullptr;
  fftw_complex* b = nullptr;
  fftw_plan fwd_a{}, bwd_a{}, bwd_b{};

  explicit FftGrid(int grid) : n(grid) {
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    a = fftw_alloc_complex(sz);
    b = fftw_alloc_complex(sz);
    std::lock_guard lock(planner_mutex());
    fwd_a = fftw_plan_dft_2d(n, n, a, a, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_a = fftw_plan_dft_2d(n, n, a, a, FFTW_BACKWARD, FFTW_ESTIMATE);
    bwd_b = fftw_plan_dft_2d(n, n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftGrid() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd_a);
    fftw_destroy_plan(bwd_a);
    fftw_destroy_plan(bwd_b);
    fftw_free(a);
    fftw_free(b);
  }
  FftGrid(const FftGrid&) = delete;
  FftGrid& operator=(const FftGrid&) = delete;

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
};

// One workspace per grid size per thread.
FftGrid& grid_for(int n) {
  thread_local std::map<int, std::unique_ptr<FftGrid>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftGrid>(n);
  return *slot;
}

int wrap_index(int k, int n) { return k >= 0 ? k : k + n; }

// Scatter retained modes into a zeroed n x n complex buffer.
void pad_into(const SpectralScalar& f, fftw_complex* buf, int n) {
  const WaveLattice& lat = f.lattice();
  const int m = lat.modes;
  std::fill_n(&buf[0][0], 2 * static_cast<std::size_t>(n) * n, 0.0);
  auto coeffs = f.coeffs();
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      if (lat.is_nyquist(i, j)) continue;
      const Complex c = coeffs[static_cast<std::size_t>(i) * m + j];
      const std::size_t p =
          static_cast<std::size_t>(wrap_index(k1, n)) * n + wrap_index(k2, n);
      buf[p][0] = c.real();
      buf[p][1] = c.imag();
    }
  }
}

// Gather retained modes from an n x n buffer, scaling by 1/n^2.
SpectralScalar extract_from(const fftw_complex* buf, int n, WaveLattice lat) {
  SpectralScalar out(lat);
  const int m = lat.modes;
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      if (lat.is_nyquist(i, j)) continue;
      const int k2 = lat.wavenumber(j);
      const std::size_t p =
          static_cast<std::size_t>(wrap_index(k1, n)) * n + wrap_index(k2, n);
      out.coeffs()[static_cast<std::size_t>(i) * m + j] =
          Complex{buf[p][0] * scale, buf[p][1] * scale};
    }
  }
  return out;
}

}  // namespace

SpectralScalar forward_transform(std::span<const double> physical, WaveLattice lat) {
  const int n = lat.padded;
  if (physical.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("forward_transform: sample count does not match padded grid");
  FftGrid& g = grid_for(n);
  for (std::size_t p = 0; p < g.size(); ++p) {
    g.a[p][0] = physical[p];
    g.a[p][1] = 0.0;
  }
  fftw_execute(g.fwd_a);
  SpectralScalar out = extract_from(g.a, n, lat);
  out.enforce_invariants();
  return out;
}

std::vector<double> inverse_transform(const SpectralScalar& f, int target_grid) {
  const int n = target_grid;
  if (n < f.lattice().modes)
    throw std::invalid_argument("inverse_transform: target grid smaller than lattice");
  FftGrid& g = grid_for(n);
  pad_into(f, g.a, n);
  fftw_execute(g.bwd_a);
  std::vector<double> out(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) out[p] = g.a[p][0];
  return out;
}

SpectralScalar dealiased_product(const SpectralScalar& f, const SpectralScalar& g) {
  check_same_lattice(f.lattice(), g.lattice());
  const int n = f.lattice().padded;
  FftGrid& w = grid_for(n);
  pad_into(f, w.a, n);
  pad_into(g, w.b, n);
  fftw_execute(w.bwd_a);
  fftw_execute(w.bwd_b);
  for (std::size_t p = 0; p < w.size(); ++p) {
    // both factors are real fields; drop roundoff imaginary parts
    const double fr = w.a[p][0];
    const double gr = w.b[p][0];
    w.a[p][0] = fr * gr;
    w.a[p][1] = 0.0;
  }
  fftw_execute(w.fwd_a);
  return extract_from(w.a, n, f.lattice());
}

SpectralScalar partial_derivative(const SpectralScalar& f, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
  const WaveLattice& lat = f.lattice();
  const int m = lat.modes;
  SpectralScalar out(lat);
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      const double ka = axis == 1 ? k1 : k2;
      out.coeffs()[static_cast<std::size_t>(i) * m + j] =
          Complex{0.0, ka} * f.coeffs()[static_cast<std::size_t>(i) * m + j];
    }
  }
  return out;
}

SpectralScalar directional_derivative(const SpectralScalar& f, Vec2 n) {
  const WaveLattice& lat = f.lattice();
  const int m = lat.modes;
  SpectralScalar out(lat);
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      const double nk = n[0] * k1 + n[1] * k2;
      out.coeffs()[static_cast<std::size_t>(i) * m + j] =
          Complex{0.0, nk} * f.coeffs()[static_cast<std::size_t>(i) * m + j];
    }
  }
  return out;
}

SpectralScalar laplacian(const SpectralScalar& f) {
  const WaveLattice& lat = f.lattice();
  const int m = lat.modes;
  SpectralScalar out(lat);
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      const double q = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      out.coeffs()[static_cast<std::size_t>(i) * m + j] =
          -q * f.coeffs()[static_cast<std::size_t>(i) * m + j];
    }
  }
  return out;
}

SpectralVector2 directional_derivative(const SpectralVector2& v, Vec2 n) {
  SpectralVector2 out;
  out.x1 = directional_derivative(v.x1, n);
  out.x2 = directional_derivative(v.x2, n);
  return out;
}

SpectralVector2 laplacian(const SpectralVector2& v) {
  SpectralVector2 out;
  out.x1 = laplacian(v.x1);
  out.x2 = laplacian(v.x2);
  return out;
}

// ---- norms ----------------------------------------------------------------

namespace {

// H^N weights span many orders of magnitude; sum large-|k| terms first with
// Neumaier compensation.
double compensated_descending_sum(std::vector<std::pair<double, double>>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double sum = 0.0, comp = 0.0;
  for (const auto& [key, v] : terms) {
    (void)key;
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

template <typename Weight, typename Term>
double lattice_sum(const WaveLattice& lat, bool skip_zero, Weight weight, Term term) {
  const int m = lat.modes;
  std::vector<std::pair<double, double>> terms;
  terms.reserve(lat.size());
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      if (skip_zero && k1 == 0 && k2 == 0) continue;
      const double q = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const double t = term(static_cast<std::size_t>(i) * m + j);
      if (t == 0.0) continue;
      terms.emplace_back(q, weight(q) * t);
    }
  }
  return compensated_descending_sum(terms);
}

}  // namespace

double sobolev_norm(const SpectralScalar& f, double s) {
  auto c = f.coeffs();
  const double sum = lattice_sum(
      f.lattice(), false, [s](double q) { return std::pow(1.0 + q, s); },
      [c](std::size_t p) { return std::norm(c[p]); });
  return std::sqrt(std::max(sum, 0.0));
}

double homogeneous_norm(const SpectralScalar& f, double s) {
  auto c = f.coeffs();
  const double sum = lattice_sum(
      f.lattice(), true, [s](double q) { return std::pow(q, s); },
      [c](std::size_t p) { return std::norm(c[p]); });
  return std::sqrt(std::max(sum, 0.0));
}

double weighted_inner_product(const SpectralScalar& f, const SpectralScalar& g, double s) {
  check_same_lattice(f.lattice(), g.lattice());
  auto cf = f.coeffs();
  auto cg = g.coeffs();
  return lattice_sum(
      f.lattice(), true, [s](double q) { return std::pow(q, s); },
      [cf, cg](std::size_t p) {
        return cf[p].real() * cg[p].real() + cf[p].imag() * cg[p].imag();
      });
}

double l2_inner_product(const SpectralScalar& f, const SpectralScalar& g) {
  check_same_lattice(f.lattice(), g.lattice());
  auto cf = f.coeffs();
  auto cg = g.coeffs();
  return lattice_sum(
      f.lattice(), false, [](double) { return 1.0; },
      [cf, cg](std::size_t p) {
        return cf[p].real() * cg[p].real() + cf[p].imag() * cg[p].imag();
      });
}

double sobolev_norm(const SpectralVector2& v, double s) {
  const double a = sobolev_norm(v.x1, s);
  const double b = sobolev_norm(v.x2, s);
  return std::sqrt(a * a + b * b);
}

double homogeneous_norm(const SpectralVector2& v, double s) {
  const double a = homogeneous_norm(v.x1, s);
  const double b = homogeneous_norm(v.x2, s);
  return std::sqrt(a * a + b * b);
}

double weighted_inner_product(const SpectralVector2& f, const SpectralVector2& g, double s) {
  return weighted_inner_product(f.x1, g.x1, s) + weighted_inner_product(f.x2, g.x2, s);
}

double l2_inner_product(const SpectralVector2& f, const SpectralVector2& g) {
  return l2_inner_product(f.x1, g.x1) + l2_inner_product(f.x2, g.x2);
}

double max_physical_abs(const SpectralScalar& f) {
  const auto phys = inverse_transform(f, f.lattice().padded);
  double m = 0.0;
  for (double v : phys) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const SpectralScalar& f) {
  for (const Complex& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

bool all_finite(const SpectralVector2& v) { return all_finite(v.x1) && all_finite(v.x2); }

}  // namespace mhd2d
