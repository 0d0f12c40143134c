#ifndef MHD2D_SPECTRAL_HPP
#define MHD2D_SPECTRAL_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace mhd2d {

using Complex = std::complex<double>;
using Vec2 = std::array<double, 2>;

/// Truncated wavenumber lattice for real periodic fields on [0,2pi)^2.
/// Retained modes are k = (k1,k2) with -M/2 < ki <= M/2; the unpaired
/// Nyquist row/column (ki == M/2) is kept in storage but pinned to zero.
/// Quadratic products are evaluated on the P x P grid, P = 3M/2.
struct WaveLattice {
  int modes = 0;   // M, even and positive
  int padded = 0;  // P >= 3M/2, even

  static WaveLattice make(int modes_per_dim);

  int wavenumber(int idx) const { return idx <= modes / 2 ? idx : idx - modes; }
  int index_of(int k) const { return k >= 0 ? k : k + modes; }
  bool is_nyquist(int i, int j) const { return i == modes / 2 || j == modes / 2; }
  std::size_t size() const { return static_cast<std::size_t>(modes) * modes; }
  /// Largest |k| on the retained lattice (corner mode).
  double radius() const;

  bool operator==(const WaveLattice&) const = default;
};

/// Fourier coefficients of a real scalar field, f(x) = sum_k c(k) e^{i k.x}.
/// Invariants: c(-k) = conj(c(k)); Nyquist coefficients are zero.
class SpectralScalar {
 public:
  SpectralScalar() = default;
  explicit SpectralScalar(WaveLattice lat)
      : lattice_(lat), coeffs_(lat.size(), Complex{0.0, 0.0}) {}

  const WaveLattice& lattice() const { return lattice_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  Complex operator()(int k1, int k2) const {
    return coeffs_[idx(k1, k2)];
  }
  void set(int k1, int k2, Complex v) { coeffs_[idx(k1, k2)] = v; }

  /// Symmetrize to c(-k) = conj(c(k)) and zero the Nyquist modes.
  void enforce_invariants();

  SpectralScalar& operator+=(const SpectralScalar& o);
  SpectralScalar& operator-=(const SpectralScalar& o);
  SpectralScalar& operator*=(double a);

 private:
  std::size_t idx(int k1, int k2) const {
    return static_cast<std::size_t>(lattice_.index_of(k1)) * lattice_.modes +
           lattice_.index_of(k2);
  }
  WaveLattice lattice_;
  std::vector<Complex> coeffs_;
};

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator*(double a, SpectralScalar f);

/// Two-component field (velocity or magnetic perturbation).
struct SpectralVector2 {
  SpectralScalar x1, x2;

  SpectralVector2() = default;
  explicit SpectralVector2(WaveLattice lat) : x1(lat), x2(lat) {}
  const WaveLattice& lattice() const { return x1.lattice(); }

  SpectralVector2& operator+=(const SpectralVector2& o);
  SpectralVector2& operator-=(const SpectralVector2& o);
  SpectralVector2& operator*=(double a);
};

SpectralVector2 operator+(SpectralVector2 a, const SpectralVector2& b);
SpectralVector2 operator-(SpectralVector2 a, const SpectralVector2& b);
SpectralVector2 operator*(double a, SpectralVector2 v);

// ---- transforms -----------------------------------------------------------

/// Physical samples on the padded P x P grid -> truncated coefficients.
SpectralScalar forward_transform(std::span<const double> physical, WaveLattice lat);
/// Coefficients -> physical samples on the target P x P grid.
std::vector<double> inverse_transform(const SpectralScalar& f, int target_grid);

/// Pointwise product evaluated on the padded grid, truncated back to the
/// retained modes (exact for band-limited factors, 3/2 rule).
SpectralScalar dealiased_product(const SpectralScalar& f, const SpectralScalar& g);

// ---- derivatives ----------------------------------------------------------

SpectralScalar partial_derivative(const SpectralScalar& f, int axis);  // axis 1 or 2
SpectralScalar directional_derivative(const SpectralScalar& f, Vec2 n);
SpectralScalar laplacian(const SpectralScalar& f);
SpectralVector2 directional_derivative(const SpectralVector2& v, Vec2 n);
SpectralVector2 laplacian(const SpectralVector2& v);

// ---- norms and inner products --------------------------------------------

/// sqrt( sum_k (1+|k|^2)^s |c(k)|^2 ); s = 0 gives the L2 norm under the
/// coefficient convention above.
double sobolev_norm(const SpectralScalar& f, double s);
/// sqrt( sum_{k!=0} |k|^{2s} |c(k)|^2 ).
double homogeneous_norm(const SpectralScalar& f, double s);
/// sum_{k!=0} |k|^{2s} Re( c_f(k) conj(c_g(k)) ).
double weighted_inner_product(const SpectralScalar& f, const SpectralScalar& g, double s);
/// Full L2 inner product, zero mode included.
double l2_inner_product(const SpectralScalar& f, const SpectralScalar& g);

double sobolev_norm(const SpectralVector2& v, double s);
double homogeneous_norm(const SpectralVector2& v, double s);
double weighted_inner_product(const SpectralVector2& f, const SpectralVector2& g, double s);
double l2_inner_product(const SpectralVector2& f, const SpectralVector2& g);

/// Largest pointwise magnitude of the physical-space field.
double max_physical_abs(const SpectralScalar& f);

bool all_finite(const SpectralScalar& f);
bool all_finite(const SpectralVector2& v);

struct LatticeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace mhd2d

#endif
