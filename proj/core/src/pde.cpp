#include "spectral/pde.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include "spectral/csv.hpp"
#include "spectral/error.hpp"
#include "spectral/fft.hpp"

namespace spectral::pde {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t slot_of(long mode, std::size_t m) {
  return mode >= 0 ? static_cast<std::size_t>(mode) : m - static_cast<std::size_t>(-mode);
}

// Physical samples on an M-point grid (M >= N) of the field with N
// coefficients c. The Nyquist coefficient is split evenly between +-N/2 so the
// padded spectrum stays Hermitian.
std::vector<double> to_physical(const fourier::PeriodicGrid& grid, std::span<const cplx> c, std::size_t m) {
  const std::size_t n = grid.size();
  const double scale = static_cast<double>(m) / static_cast<double>(n);
  std::vector<cplx> p(m, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    const long mode = grid.mode_index(j);
    if (m > n && j == grid.nyquist_slot()) {
      p[n / 2] += 0.5 * scale * c[j];
      p[m - n / 2] += 0.5 * scale * c[j];
    } else {
      p[slot_of(mode, m)] += scale * c[j];
    }
  }
  const auto z = fft::inverse(p);
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = z[i].real();
  return out;
}

// N coefficients of M physical samples, dropping modes outside the N band.
Coeffs from_physical(const fourier::PeriodicGrid& grid, std::span<const double> v) {
  const std::size_t n = grid.size();
  const std::size_t m = v.size();
  const double scale = static_cast<double>(n) / static_cast<double>(m);
  const auto w = fft::forward(v);
  Coeffs out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long mode = grid.mode_index(j);
    if (m > n && j == grid.nyquist_slot()) {
      out[j] = scale * (w[n / 2] + w[m - n / 2]);
    } else {
      out[j] = scale * w[slot_of(mode, m)];
    }
  }
  return out;
}

Coeffs times_ik(const std::vector<cplx>& mult, std::span<const cplx> c) {
  Coeffs out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = mult[j] * c[j];
  return out;
}

double checked(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw NumericalError(std::string("heat_moisture_rhs: coefficient ") + name + " is not finite");
  }
  return value;
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw PreconditionError("expected a boolean, got '" + s + "'");
}

double parse_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw PreconditionError("config: '" + key + "' expects a number, got '" + s + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& key, const std::string& s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw PreconditionError("config: '" + key + "' expects a non-negative integer, got '" + s + "'");
  }
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

timestep::State pack(const Fields& fields) {
  std::size_t total = 0;
  for (const auto& f : fields) total += f.size();
  timestep::State s(static_cast<Eigen::Index>(2 * total));
  Eigen::Index i = 0;
  for (const auto& f : fields) {
    for (const auto& c : f) {
      s[i++] = c.real();
      s[i++] = c.imag();
    }
  }
  return s;
}

Fields unpack(const timestep::State& state, std::size_t fields, std::size_t n) {
  if (static_cast<std::size_t>(state.size()) != 2 * fields * n) {
    throw PreconditionError("unpack: state size does not match fields x N");
  }
  Fields out(fields, Coeffs(n));
  Eigen::Index i = 0;
  for (auto& f : out) {
    for (auto& c : f) {
      c = cplx(state[i], state[i + 1]);
      i += 2;
    }
  }
  return out;
}

Fields mol_integrate(const MolSystem& system, const Fields& initial, const timestep::SchemeSpec& scheme,
                     double t_end, std::size_t n_steps) {
  const std::size_t n = system.grid.size();
  if (initial.size() != system.fields) throw PreconditionError("mol_integrate: wrong number of fields");
  for (const auto& f : initial) {
    if (f.size() != n) throw PreconditionError("mol_integrate: field size does not match the grid");
  }
  timestep::IvpProblem problem;
  problem.u0 = pack(initial);
  problem.t0 = 0.0;
  problem.t_end = t_end;
  const auto nf = system.fields;
  const auto& rhs = system.rhs_spectral;
  problem.rhs = [&rhs, nf, n](double t, const timestep::State& u) { return pack(rhs(t, unpack(u, nf, n))); };
  const auto traj = timestep::integrate(scheme, problem, n_steps);
  return unpack(traj.final_state, nf, n);
}

MolSystem linear_heat_system(const fourier::PeriodicGrid& grid, double nu) {
  if (nu < 0.0) throw PreconditionError("linear_heat_system: nu must be >= 0");
  const auto k = grid.wavenumbers();
  MolSystem sys{grid, 1, {}};
  sys.rhs_spectral = [k, nu](double, const Fields& s) {
    Fields d(1, Coeffs(s[0].size()));
    for (std::size_t j = 0; j < k.size(); ++j) d[0][j] = -nu * k[j] * k[j] * s[0][j];
    return d;
  };
  return sys;
}

double imaginary_residue(std::span<const cplx> coeffs) {
  const auto z = fft::inverse(coeffs);
  double peak = 0.0;
  double im = 0.0;
  for (const auto& c : z) {
    peak = std::max(peak, std::abs(c));
    im = std::max(im, std::abs(c.imag()));
  }
  return peak > 0.0 ? im / peak : 0.0;
}

HeatMoistureParams HeatMoistureParams::constant(double d_theta, double d_t, double lambda, double rho_cm) {
  HeatMoistureParams p;
  p.d_theta = [d_theta](double, double) { return d_theta; };
  p.d_t = [d_t](double, double) { return d_t; };
  p.lambda = [lambda](double, double) { return lambda; };
  p.v_theta = [](double, double) { return 0.0; };
  p.v_t = [](double, double) { return 0.0; };
  p.rho_cm = rho_cm;
  p.latent = [](double) { return 0.0; };
  return p;
}

HeatMoistureParams HeatMoistureParams::nonlinear(double d0, double d_t, double lambda, double rho_cm) {
  auto p = constant(d0, d_t, lambda, rho_cm);
  p.d_theta = [d0](double theta, double) { return d0 * (1.0 + theta * theta); };
  p.v_theta = [d0](double, double) { return 0.1 * d0; };
  p.latent = [](double) { return 0.5; };
  return p;
}

HeatMoistureParams HeatMoistureParams::preset(const std::string& name) {
  if (name == "constant") return constant(0.01, 0.001, 0.01);
  if (name == "nonlinear") return nonlinear();
  throw PreconditionError("unknown heat-moisture preset '" + name + "' (constant, nonlinear)");
}

Fields heat_moisture_rhs(const fourier::PeriodicGrid& grid, const Fields& state, const HeatMoistureParams& params,
                         bool dealias) {
  if (state.size() != 2) throw PreconditionError("heat_moisture_rhs: state must be (theta_hat, T_hat)");
  const std::size_t n = grid.size();
  if (state[0].size() != n || state[1].size() != n) {
    throw PreconditionError("heat_moisture_rhs: field size does not match the grid");
  }
  if (!(params.rho_cm > 0.0)) throw PreconditionError("heat_moisture_rhs: rho_cm must be positive");

  const std::size_t m = dealias ? 3 * n / 2 : n;
  const auto ik = fourier::derivative_multiplier(grid, 1);

  const auto theta = to_physical(grid, state[0], m);
  const auto temp = to_physical(grid, state[1], m);
  const auto theta_x = to_physical(grid, times_ik(ik, state[0]), m);
  const auto temp_x = to_physical(grid, times_ik(ik, state[1]), m);

  std::vector<double> mass_flux(m);
  std::vector<double> heat_flux(m);
  std::vector<double> vapour(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double th = theta[i];
    const double tt = temp[i];
    mass_flux[i] = checked(params.d_theta(th, tt), "D_theta") * theta_x[i] +
                   checked(params.d_t(th, tt), "D_T") * temp_x[i];
    heat_flux[i] = checked(params.lambda(th, tt), "lambda") * temp_x[i];
    vapour[i] = -checked(params.v_theta(th, tt), "V_theta") * theta_x[i] -
                checked(params.v_t(th, tt), "V_T") * temp_x[i];
  }

  // (j_v)_x on the working grid, then L(T) (j_v)_x as a physical product.
  std::vector<cplx> jv_hat = fft::forward(std::span<const double>(vapour));
  for (std::size_t j = 0; j < m; ++j) {
    const long mode = j <= m / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(m);
    const bool nyquist = m % 2 == 0 && j == m / 2;
    jv_hat[j] *= nyquist ? cplx(0.0, 0.0) : cplx(0.0, static_cast<double>(mode) * grid.dk());
  }
  const auto jv_x = fft::inverse(jv_hat);
  std::vector<double> latent_term(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double lt = params.latent ? checked(params.latent(temp[i]), "L") : 0.0;
    latent_term[i] = lt * jv_x[i].real();
  }

  const auto mass_hat = from_physical(grid, mass_flux);
  const auto heat_hat = from_physical(grid, heat_flux);
  const auto latent_hat = from_physical(grid, latent_term);

  Fields d(2, Coeffs(n));
  for (std::size_t j = 0; j < n; ++j) {
    d[0][j] = ik[j] * mass_hat[j];
    d[1][j] = (ik[j] * heat_hat[j] - latent_hat[j]) / params.rho_cm;
  }
  return d;
}

MolSystem heat_moisture_system(const fourier::PeriodicGrid& grid, HeatMoistureParams params, bool dealias) {
  MolSystem sys{grid, 2, {}};
  sys.rhs_spectral = [grid, p = std::move(params), dealias](double, const Fields& s) {
    return heat_moisture_rhs(grid, s, p, dealias);
  };
  return sys;
}

ExactHeatSolution::ExactHeatSolution(double tolerance, std::size_t max_terms)
    : tolerance_(tolerance), max_terms_(max_terms) {
  if (!(tolerance > 0.0)) throw PreconditionError("ExactHeatSolution: tolerance must be positive");
  if (max_terms < 1) throw PreconditionError("ExactHeatSolution: max_terms >= 1 required");
}

double ExactHeatSolution::term_bound(std::size_t n, double t) {
  const double nn = static_cast<double>(n);
  const double odd = 2.0 * nn - 1.0;
  const double a = 9.0 + 4.0 * (nn - 2.0) * (nn - 2.0);
  const double b = 9.0 + 4.0 * (nn + 1.0) * (nn + 1.0);
  return 72.0 / kPi * odd * std::exp(-odd * odd * t / 18.0) / (a * b);
}

double ExactHeatSolution::steady(double x, double t) const {
  const double a = 1.5 * kPi;
  return (std::cos(a * x) * std::sinh(a * (1.0 - x)) * std::sin(t) -
          std::sin(a * x) * std::cosh(a * (1.0 - x)) * std::cos(t)) /
         std::sinh(a);
}

double ExactHeatSolution::series(double x, double t, std::size_t terms) const {
  double s = 0.0;
  for (std::size_t n = terms; n >= 1; --n) {
    const double nn = static_cast<double>(n);
    s += term_bound(n, t) * std::sin((nn - 0.5) * kPi * x);
  }
  return s;
}

std::size_t ExactHeatSolution::terms_needed(double t) const {
  if (t < 0.0) throw PreconditionError("ExactHeatSolution: t must be >= 0");
  std::size_t n = 1;
  while (term_bound(n, t) >= tolerance_) {
    if (n >= max_terms_) {
      throw ConvergenceError("ExactHeatSolution: tolerance " + std::to_string(tolerance_) +
                             " unreachable within " + std::to_string(max_terms_) + " terms at t = " +
                             std::to_string(t));
    }
    ++n;
  }
  return n - 1;
}

double ExactHeatSolution::operator()(double x, double t) const { return with_terms(x, t, terms_needed(t)); }

double ExactHeatSolution::with_terms(double x, double t, std::size_t terms) const {
  if (x < 0.0 || x > 1.0) throw DomainError("ExactHeatSolution: x must lie in [0, 1]");
  if (t < 0.0) throw PreconditionError("ExactHeatSolution: t must be >= 0");
  return steady(x, t) + series(x, t, terms);
}

double exact_nonperiodic_heat(double x, double t) {
  static const ExactHeatSolution solution;
  return solution(x, t);
}

void write_space_time(std::ostream& out, std::span<const double> times, std::span<const double> xs,
                      const std::function<double(double, double)>& u) {
  csv::Writer w(out);
  w.header({"t", "x", "u"});
  for (double t : times) {
    for (double x : xs) w.row({t, x, u(x, t)});
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "N") {
    n = parse_size(key, value);
  } else if (key == "l") {
    l = parse_double(key, value);
  } else if (key == "nu") {
    nu = parse_double(key, value);
  } else if (key == "T") {
    t_end = parse_double(key, value);
  } else if (key == "steps") {
    steps = parse_size(key, value);
  } else if (key == "scheme") {
    (void)timestep::SchemeSpec::parse(value);
    scheme = value;
  } else if (key == "dealias") {
    dealias = parse_bool(value);
  } else if (key == "preset") {
    if (value != "linear" && value != "constant" && value != "nonlinear") {
      throw PreconditionError("config: preset must be linear, constant or nonlinear");
    }
    preset = value;
  } else {
    throw PreconditionError("config: unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    cfg.set(trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
  }
  return cfg;
}

}  // namespace spectral::pde
