#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spectral/fourier.hpp"
#include "spectral/timestep.hpp"

namespace spectral::pde {

using fourier::cplx;
using Coeffs = std::vector<cplx>;
using Fields = std::vector<Coeffs>;

/// Method-of-lines system: one or more coefficient vectors on a shared grid
/// and their time derivative.
struct MolSystem {
  fourier::PeriodicGrid grid;
  std::size_t fields = 1;
  std::function<Fields(double t, const Fields& state)> rhs_spectral;
};

/// Complex coefficient fields packed as a real vector (re, im per slot).
[[nodiscard]] timestep::State pack(const Fields& fields);
[[nodiscard]] Fields unpack(const timestep::State& state, std::size_t fields, std::size_t n);

/// Advance the coefficients from t = 0 to t = T with n_steps uniform steps.
/// A non-finite state raises BlowUpError carrying the step index.
[[nodiscard]] Fields mol_integrate(const MolSystem& system, const Fields& initial, const timestep::SchemeSpec& scheme,
                                   double t_end, std::size_t n_steps);

/// du/dt = nu u_xx in coefficient space: dc_k/dt = -nu k^2 c_k.
[[nodiscard]] MolSystem linear_heat_system(const fourier::PeriodicGrid& grid, double nu);

/// Largest |Im ifft(c)| relative to the largest |ifft(c)|.
[[nodiscard]] double imaginary_residue(std::span<const cplx> coeffs);

using Coefficient = std::function<double(double theta, double temp)>;

/// Coefficient functions of the coupled heat and moisture model
///
///   theta_t = (D_theta theta_x + D_T T_x)_x
///   rho_cm T_t = (lambda T_x)_x - L(T) (j_v)_x,   j_v = -V_theta theta_x - V_T T_x.
struct HeatMoistureParams {
  Coefficient d_theta;
  Coefficient d_t;
  Coefficient lambda;
  Coefficient v_theta;
  Coefficient v_t;
  double rho_cm = 1.0;
  std::function<double(double temp)> latent;

  /// Constant transport coefficients, no vapour coupling (V = 0, L = 0).
  static HeatMoistureParams constant(double d_theta, double d_t, double lambda, double rho_cm = 1.0);
  /// D_theta = d0 (1 + theta^2), the other coefficients constant and a
  /// small latent-heat coupling.
  static HeatMoistureParams nonlinear(double d0 = 0.01, double d_t = 0.001, double lambda = 0.01,
                                      double rho_cm = 1.0);
  /// "constant" or "nonlinear".
  static HeatMoistureParams preset(const std::string& name);
};

/// Time derivative of (theta_hat, T_hat). Derivatives are taken with ik
/// multipliers; coefficient functions and products are formed in physical
/// space, on a 3N/2 grid when `dealias` is set.
///
/// Throws NumericalError when a coefficient evaluates to a non-finite value
/// and PreconditionError when rho_cm <= 0.
[[nodiscard]] Fields heat_moisture_rhs(const fourier::PeriodicGrid& grid, const Fields& state,
                                       const HeatMoistureParams& params, bool dealias = true);

[[nodiscard]] MolSystem heat_moisture_system(const fourier::PeriodicGrid& grid, HeatMoistureParams params,
                                             bool dealias = true);

/// Reference solution of u_t = kappa u_xx on [0, 1] with u(0, t) = sin t,
/// u_x(1, t) = 0, u(x, 0) = 0 and kappa = 2 / (9 pi^2):
///
///   u = [cos(a x) sinh(a (1-x)) sin t - sin(a x) cosh(a (1-x)) cos t] / sinh(a)
///     + (72/pi) sum_n (2n-1) e^{-(2n-1)^2 t/18} sin((n - 1/2) pi x)
///                     / ([9 + 4(n-2)^2][9 + 4(n+1)^2]),      a = 3 pi / 2.
class ExactHeatSolution {
 public:
  static constexpr double kappa = 2.0 / (9.0 * 3.141592653589793 * 3.141592653589793);

  explicit ExactHeatSolution(double tolerance = 1e-12, std::size_t max_terms = 10000);

  /// Series truncated once the next term's bound drops below the tolerance.
  /// ConvergenceError if that needs more than max_terms terms (t near 0).
  [[nodiscard]] double operator()(double x, double t) const;
  /// Exactly `terms` series terms.
  [[nodiscard]] double with_terms(double x, double t, std::size_t terms) const;

  [[nodiscard]] double steady(double x, double t) const;
  [[nodiscard]] double series(double x, double t, std::size_t terms) const;
  /// Terms used by operator() at time t.
  [[nodiscard]] std::size_t terms_needed(double t) const;
  /// Bound on the magnitude of term n at time t.
  [[nodiscard]] static double term_bound(std::size_t n, double t);

 private:
  double tolerance_;
  std::size_t max_terms_;
};

[[nodiscard]] double exact_nonperiodic_heat(double x, double t);

/// CSV `t,x,u` for every (t, x) pair, time-major.
void write_space_time(std::ostream& out, std::span<const double> times, std::span<const double> xs,
                      const std::function<double(double x, double t)>& u);

/// Flat key=value run configuration. Blank lines and '#' comments are
/// skipped; unknown keys raise PreconditionError.
struct RunConfig {
  std::size_t n = 256;
  double l = 1.0;
  double nu = 0.01;
  double t_end = 5.0;
  std::size_t steps = 0;
  std::string scheme = "rk4";
  bool dealias = true;
  std::string preset = "linear";

  /// Applies a single key/value pair (keys N, l, nu, T, steps, scheme,
  /// dealias, preset).
  void set(const std::string& key, const std::string& value);
};

[[nodiscard]] RunConfig parse_config(std::istream& in);

}  // namespace spectral::pde
