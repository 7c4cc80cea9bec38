#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace spectral::fourier {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-l, l) with N (even, >= 4) points.
///
/// Nodes are x_j = (1 - N/2 + j) dx, j = 0..N-1, so the grid ends exactly at
/// x = l. Wavenumbers follow the fft layout [0 .. N/2, 1 - N/2 .. -1] * pi/l.
class PeriodicGrid {
 public:
  PeriodicGrid(std::size_t n, double half_length);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double half_length() const noexcept { return l_; }
  [[nodiscard]] double dx() const noexcept { return 2.0 * l_ / static_cast<double>(n_); }
  [[nodiscard]] double dk() const noexcept;

  [[nodiscard]] double node(std::size_t j) const noexcept;
  [[nodiscard]] std::vector<double> nodes() const;

  /// Signed integer mode index of slot j: 0..N/2 then 1-N/2..-1.
  [[nodiscard]] long mode_index(std::size_t j) const noexcept;
  [[nodiscard]] double wavenumber(std::size_t j) const noexcept;
  [[nodiscard]] std::vector<double> wavenumbers() const;

  [[nodiscard]] std::size_t nyquist_slot() const noexcept { return n_ / 2; }

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  std::size_t n_;
  double l_;
};

enum class Representation { physical, spectral, both };

/// A real function on a PeriodicGrid, held as physical samples, fft
/// coefficients (forward unnormalized), or both.
class SpectralField {
 public:
  static SpectralField from_values(PeriodicGrid grid, std::vector<double> values);
  static SpectralField from_coeffs(PeriodicGrid grid, std::vector<cplx> coeffs);
  static SpectralField sample(PeriodicGrid grid, const std::function<double(double)>& f);

  [[nodiscard]] const PeriodicGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] bool has_values() const noexcept { return values_.has_value(); }
  [[nodiscard]] bool has_coeffs() const noexcept { return coeffs_.has_value(); }
  [[nodiscard]] Representation representation() const noexcept;

  /// Throws PreconditionError if the representation is absent.
  [[nodiscard]] std::span<const double> values() const;
  [[nodiscard]] std::span<const cplx> coeffs() const;

 private:
  SpectralField(PeriodicGrid grid, std::optional<std::vector<double>> values,
                std::optional<std::vector<cplx>> coeffs);

  friend SpectralField dft_forward(const SpectralField&);
  friend SpectralField dft_inverse(const SpectralField&);

  PeriodicGrid grid_;
  std::optional<std::vector<double>> values_;
  std::optional<std::vector<cplx>> coeffs_;
};

/// Returns a field carrying both representations. Forward: coefficients from
/// samples.
[[nodiscard]] SpectralField dft_forward(const SpectralField& field);

/// Returns a field carrying both representations. Inverse: samples from
/// coefficients; imaginary residue above 1e-10 (relative to the peak) raises
/// NumericalError, otherwise it is dropped.
[[nodiscard]] SpectralField dft_inverse(const SpectralField& field);

/// Real part of ifft(coeffs) after the residue check described above.
[[nodiscard]] std::vector<double> synthesize(std::span<const cplx> coeffs);

/// Multiplier (ik)^order for every slot of the grid. For odd orders the
/// Nyquist slot is zero.
[[nodiscard]] std::vector<cplx> derivative_multiplier(const PeriodicGrid& grid, unsigned order);

/// d^order/dx^order computed in coefficient space.
[[nodiscard]] SpectralField spectral_derivative(const SpectralField& field, unsigned order);

/// 3/2-rule product of two coefficient vectors of equal even length N:
/// zero-pad to M = 3N/2, inverse transform, multiply pointwise, forward
/// transform, keep N coefficients and rescale by 3/2.
[[nodiscard]] std::vector<cplx> dealias_product(std::span<const cplx> u_coeffs,
                                                std::span<const cplx> v_coeffs);

/// The same product without padding (aliased).
[[nodiscard]] std::vector<cplx> aliased_product(std::span<const cplx> u_coeffs,
                                                std::span<const cplx> v_coeffs);

/// Exact heat propagator: coefficient k is multiplied by exp(-nu k^2 t).
[[nodiscard]] SpectralField heat_propagate(const SpectralField& field, double nu, double t);

/// Finite Fourier spectrum u(x) = sum_k c_k exp(i k x) on [-pi, pi).
using Spectrum = std::map<long, cplx>;

/// Split of a spectrum seen through an N-point grid.
///
/// Norms are the normalized L2 norm on [-pi, pi], i.e. (1/2pi) int |.|^2
/// = sum |c_k|^2. The interpolation error is measured in physical space by
/// exact trapezoidal quadrature, independently of the coefficient identity.
struct AliasingReport {
  Spectrum interp_coeffs;  // hat v_k = sum_j v_{k + jN}, k in the resolved band
  Spectrum trunc_coeffs;   // v_k restricted to the resolved band
  double interp_error_sq = 0.0;  // ||u - I_N u||^2
  double trunc_error_sq = 0.0;   // ||u - T_N u||^2
  double alias_norm_sq = 0.0;    // ||R_N u||^2
  [[nodiscard]] double alias_norm() const;
};

/// Resolved band of an N-point grid: [-m, m] for N = 2m + 1, and
/// [1 - N/2, N/2] for even N (the fft layout).
[[nodiscard]] std::pair<long, long> resolved_band(std::size_t n);

/// Representative of mode k in the resolved band (k mod N folded).
[[nodiscard]] long fold_mode(long k, std::size_t n);

[[nodiscard]] AliasingReport aliasing_error(const Spectrum& full_spectrum, std::size_t n);

/// Evaluate sum_k c_k exp(i k x).
[[nodiscard]] cplx evaluate(const Spectrum& spectrum, double x);

/// n equispaced points on [a, b], both ends included.
[[nodiscard]] std::vector<double> closed_grid(std::size_t n, double a, double b);

/// u(x) = sin(pi (x+1)) exp(sin(pi (x+1))) on [-1, 1] and its first three
/// derivatives in closed form (order 0..3).
[[nodiscard]] double benchmark_function(double x, unsigned order);

/// Relative sup-errors max|D_N u - u^(n)| / max|u^(n)| of the spectral
/// derivatives of benchmark_function on an N-point grid, n = 1, 2, 3.
[[nodiscard]] std::array<double, 3> derivative_benchmark(std::size_t n);

/// CSV dump with header `k_index,k_value,re,im`, one row per slot in fft
/// layout order.
void write_coefficients(std::ostream& out, const SpectralField& field);

}  // namespace spectral::fourier
