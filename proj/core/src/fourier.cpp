#include "spectral/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "spectral/csv.hpp"
#include "spectral/error.hpp"
#include "spectral/fft.hpp"

namespace spectral::fourier {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t n, double half_length) : n_(n), l_(half_length) {
  if (n < 4 || n % 2 != 0) {
    throw PreconditionError("PeriodicGrid: N must be even and >= 4 (got " + std::to_string(n) + ")");
  }
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw PreconditionError("PeriodicGrid: half-length must be positive");
  }
}

double PeriodicGrid::dk() const noexcept { return kPi / l_; }

double PeriodicGrid::node(std::size_t j) const noexcept {
  const auto offset = 1 - static_cast<long>(n_ / 2) + static_cast<long>(j);
  return static_cast<double>(offset) * dx();
}

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

long PeriodicGrid::mode_index(std::size_t j) const noexcept {
  const auto half = static_cast<long>(n_ / 2);
  const auto s = static_cast<long>(j);
  return s <= half ? s : s - static_cast<long>(n_);
}

double PeriodicGrid::wavenumber(std::size_t j) const noexcept {
  return static_cast<double>(mode_index(j)) * dk();
}

std::vector<double> PeriodicGrid::wavenumbers() const {
  std::vector<double> k(n_);
  for (std::size_t j = 0; j < n_; ++j) k[j] = wavenumber(j);
  return k;
}

SpectralField::SpectralField(PeriodicGrid grid, std::optional<std::vector<double>> values,
                             std::optional<std::vector<cplx>> coeffs)
    : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

SpectralField SpectralField::from_values(PeriodicGrid grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw PreconditionError("SpectralField: value count does not match the grid");
  }
  return SpectralField(grid, std::move(values), std::nullopt);
}

SpectralField SpectralField::from_coeffs(PeriodicGrid grid, std::vector<cplx> coeffs) {
  if (coeffs.size() != grid.size()) {
    throw PreconditionError("SpectralField: coefficient count does not match the grid");
  }
  return SpectralField(grid, std::nullopt, std::move(coeffs));
}

SpectralField SpectralField::sample(PeriodicGrid grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) v[j] = f(grid.node(j));
  return from_values(grid, std::move(v));
}

Representation SpectralField::representation() const noexcept {
  if (values_ && coeffs_) return Representation::both;
  return values_ ? Representation::physical : Representation::spectral;
}

std::span<const double> SpectralField::values() const {
  if (!values_) throw PreconditionError("SpectralField: physical representation absent");
  return *values_;
}

std::span<const cplx> SpectralField::coeffs() const {
  if (!coeffs_) throw PreconditionError("SpectralField: spectral representation absent");
  return *coeffs_;
}

SpectralField dft_forward(const SpectralField& field) {
  if (field.coeffs_ && field.values_) return field;
  if (field.coeffs_) return dft_inverse(field);
  auto coeffs = fft::forward(std::span<const double>(*field.values_));
  return SpectralField(field.grid_, field.values_, std::move(coeffs));
}

SpectralField dft_inverse(const SpectralField& field) {
  if (field.coeffs_ && field.values_) return field;
  if (field.values_) return dft_forward(field);
  auto values = synthesize(*field.coeffs_);
  return SpectralField(field.grid_, std::move(values), field.coeffs_);
}

std::vector<double> synthesize(std::span<const cplx> coeffs) {
  const auto z = fft::inverse(coeffs);
  double peak = 0.0;
  double residue = 0.0;
  for (const auto& c : z) {
    peak = std::max(peak, std::abs(c));
    residue = std::max(residue, std::abs(c.imag()));
  }
  if (residue > 1e-10 * std::max(peak, std::numeric_limits<double>::min())) {
    throw NumericalError("synthesize: imaginary residue " + std::to_string(residue) +
                         " exceeds tolerance (coefficients are not Hermitian)");
  }
  std::vector<double> out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [](const cplx& c) { return c.real(); });
  return out;
}

std::vector<cplx> derivative_multiplier(const PeriodicGrid& grid, unsigned order) {
  std::vector<cplx> m(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    m[j] = std::pow(cplx(0.0, grid.wavenumber(j)), static_cast<int>(order));
  }
  // (ik)^n is sign-ambiguous at the Nyquist slot for odd n.
  if (order % 2 == 1) m[grid.nyquist_slot()] = 0.0;
  return m;
}

SpectralField spectral_derivative(const SpectralField& field, unsigned order) {
  const auto full = dft_forward(field);
  const auto c = full.coeffs();
  const auto mult = derivative_multiplier(field.grid(), order);
  std::vector<cplx> d(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) d[j] = mult[j] * c[j];
  return dft_inverse(SpectralField::from_coeffs(field.grid(), std::move(d)));
}

std::vector<cplx> dealias_product(std::span<const cplx> u_coeffs, std::span<const cplx> v_coeffs) {
  const std::size_t n = u_coeffs.size();
  if (v_coeffs.size() != n) throw PreconditionError("dealias_product: length mismatch");
  if (n == 0 || n % 2 != 0) throw PreconditionError("dealias_product: N must be even");
  const std::size_t m = 3 * n / 2;
  const std::size_t half = n / 2;

  // The Nyquist coefficient is shared between +N/2 and -N/2 so the padded
  // spectrum stays Hermitian.
  auto pad = [&](std::span<const cplx> c) {
    std::vector<cplx> p(m, cplx(0.0, 0.0));
    std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half), p.begin());
    std::copy(c.begin() + static_cast<std::ptrdiff_t>(half), c.end(),
              p.begin() + static_cast<std::ptrdiff_t>(m - n + half));
    p[half] = 0.5 * c[half];
    p[m - half] = 0.5 * c[half];
    return p;
  };
  const auto u_pad = fft::inverse(pad(u_coeffs));
  const auto v_pad = fft::inverse(pad(v_coeffs));
  std::vector<cplx> w_pad(m);
  for (std::size_t j = 0; j < m; ++j) w_pad[j] = u_pad[j] * v_pad[j];
  const auto w_pad_hat = fft::forward(std::span<const cplx>(w_pad));

  std::vector<cplx> w(n);
  for (std::size_t j = 0; j < half; ++j) w[j] = 1.5 * w_pad_hat[j];
  for (std::size_t j = 0; j < half; ++j) w[half + j] = 1.5 * w_pad_hat[m - half + j];
  w[half] += 1.5 * w_pad_hat[half];  // +N/2 and -N/2 coincide on the N-point grid
  return w;
}

std::vector<cplx> aliased_product(std::span<const cplx> u_coeffs, std::span<const cplx> v_coeffs) {
  const std::size_t n = u_coeffs.size();
  if (v_coeffs.size() != n) throw PreconditionError("aliased_product: length mismatch");
  const auto u = fft::inverse(u_coeffs);
  const auto v = fft::inverse(v_coeffs);
  std::vector<cplx> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = u[j] * v[j];
  return fft::forward(std::span<const cplx>(w));
}

SpectralField heat_propagate(const SpectralField& field, double nu, double t) {
  if (nu < 0.0) throw PreconditionError("heat_propagate: nu must be >= 0");
  if (t < 0.0) throw PreconditionError("heat_propagate: T must be >= 0");
  if (nu * t == 0.0) return field;
  const auto full = dft_forward(field);
  const auto c = full.coeffs();
  const auto& grid = field.grid();
  std::vector<cplx> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = grid.wavenumber(j);
    out[j] = c[j] * std::exp(-nu * k * k * t);
  }
  return dft_inverse(SpectralField::from_coeffs(grid, std::move(out)));
}

double AliasingReport::alias_norm() const { return std::sqrt(alias_norm_sq); }

std::pair<long, long> resolved_band(std::size_t n) {
  if (n == 0) throw PreconditionError("resolved_band: N must be positive");
  const auto nn = static_cast<long>(n);
  if (n % 2 == 1) return {-(nn - 1) / 2, (nn - 1) / 2};
  return {1 - nn / 2, nn / 2};
}

long fold_mode(long k, std::size_t n) {
  const auto [lo, hi] = resolved_band(n);
  const auto nn = static_cast<long>(n);
  long r = (k - lo) % nn;
  if (r < 0) r += nn;
  return r + lo;
}

cplx evaluate(const Spectrum& spectrum, double x) {
  cplx s(0.0, 0.0);
  for (const auto& [k, c] : spectrum) s += c * std::exp(cplx(0.0, static_cast<double>(k) * x));
  return s;
}

AliasingReport aliasing_error(const Spectrum& full_spectrum, std::size_t n) {
  const auto [lo, hi] = resolved_band(n);
  AliasingReport r;
  long kmax = std::max(std::abs(lo), std::abs(hi));
  for (const auto& [k, c] : full_spectrum) {
    kmax = std::max(kmax, std::abs(k));
    r.interp_coeffs[fold_mode(k, n)] += c;
    if (k >= lo && k <= hi) {
      r.trunc_coeffs[k] += c;
    } else {
      r.trunc_error_sq += std::norm(c);
    }
  }
  for (const auto& [k, c] : r.interp_coeffs) {
    const auto it = r.trunc_coeffs.find(k);
    const cplx t = it == r.trunc_coeffs.end() ? cplx(0.0, 0.0) : it->second;
    r.alias_norm_sq += std::norm(c - t);
  }
  // ||u - I_N u||^2 by trapezoid on q > 2 kmax points: exact for the
  // trigonometric polynomial u - I_N u.
  const std::size_t q = static_cast<std::size_t>(2 * kmax + 2);
  double acc = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    const double x = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(q);
    acc += std::norm(evaluate(full_spectrum, x) - evaluate(r.interp_coeffs, x));
  }
  r.interp_error_sq = acc / static_cast<double>(q);
  return r;
}

std::vector<double> closed_grid(std::size_t n, double a, double b) {
  if (n < 2) throw PreconditionError("closed_grid: at least two points required");
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  x.back() = b;
  return x;
}

double benchmark_function(double x, unsigned order) {
  const double y = kPi * (x + 1.0);
  const double s = std::sin(y);
  const double c = std::cos(y);
  const double e = std::exp(s);
  switch (order) {
    case 0: return s * e;
    case 1: return kPi * c * (1.0 + s) * e;
    case 2: return kPi * kPi * e * (c * c * (2.0 + s) - s - s * s);
    case 3: return kPi * kPi * kPi * e * c * (c * c * (3.0 + s) - 3.0 * s * s - 7.0 * s - 1.0);
    default: throw PreconditionError("benchmark_function: order must be 0..3");
  }
}

std::array<double, 3> derivative_benchmark(std::size_t n) {
  const PeriodicGrid grid(n, 1.0);
  const auto u = SpectralField::sample(grid, [](double x) { return benchmark_function(x, 0); });
  std::array<double, 3> out{};
  for (unsigned order = 1; order <= 3; ++order) {
    const auto d = spectral_derivative(u, order);
    const auto v = d.values();
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double exact = benchmark_function(grid.node(j), order);
      err = std::max(err, std::abs(v[j] - exact));
      scale = std::max(scale, std::abs(exact));
    }
    out[order - 1] = err / scale;
  }
  return out;
}

void write_coefficients(std::ostream& out, const SpectralField& field) {
  const auto full = dft_forward(field);
  const auto c = full.coeffs();
  const auto& grid = field.grid();
  csv::Writer w(out);
  w.header({"k_index", "k_value", "re", "im"});
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<std::string> row{std::to_string(grid.mode_index(j)), csv::format(grid.wavenumber(j)),
                                 csv::format(c[j].real()), csv::format(c[j].imag())};
    w.raw_row(row);
  }
}

}  // namespace spectral::fourier
