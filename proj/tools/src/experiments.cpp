#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spectral/bvp.hpp"
#include "spectral/csv.hpp"
#include "spectral/error.hpp"
#include "spectral/fourier.hpp"
#include "spectral/interp.hpp"
#include "spectral/montecarlo.hpp"
#include "spectral/orthopoly.hpp"
#include "spectral/pde.hpp"
#include "spectral/random.hpp"
#include "spectral/timestep.hpp"
#include "spectral/trefftz.hpp"
#include "spectral_cli/registry.hpp"

namespace spectral::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 1) x.back() = b;
  return x;
}

std::string fmt(double v) { return csv::format(v); }

void summary_rows(std::ostream& o, const std::vector<std::pair<std::string, std::string>>& rows) {
  csv::Writer w(o);
  w.header({"key", "value"});
  for (const auto& [k, v] : rows) {
    const std::vector<std::string> r{k, v};
    w.raw_row(r);
  }
}

// Gnuplot script plotting columns 2.. of `csv_name` against column 1.
std::string line_plot(const std::string& csv_name, const std::string& title, std::size_t columns,
                      const std::string& extra = "") {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set title '" << title << "'\n"
    << extra;
  s << "plot ";
  for (std::size_t c = 2; c <= columns; ++c) {
    if (c > 2) s << ", \\\n     ";
    s << "'" << csv_name << "' using 1:" << c << " with lines";
  }
  s << "\npause -1\n";
  return s.str();
}

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

// ---------------------------------------------------------------- runge-interp

void runge_interp(Context& ctx) {
  const auto n_max = ctx.params().get_size("N", 20);
  const auto samples = ctx.params().get_size("samples", 1001);
  if (n_max < 2) throw PreconditionError("--N must be >= 2");
  if (samples < 2) throw PreconditionError("--samples must be >= 2");
  const auto runge = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };

  std::vector<std::size_t> degrees;
  for (std::size_t n = 4; n <= n_max; n += 4) degrees.push_back(n);
  if (degrees.empty() || degrees.back() != n_max) degrees.push_back(n_max);

  const auto xs = linspace(-1.0, 1.0, samples);
  for (const auto& [label, kind] : {std::pair{"uniform", orthopoly::NodeKind::uniform},
                                    std::pair{"chebyshev", orthopoly::NodeKind::chebyshev_extrema}}) {
    std::vector<interp::Interpolant> ps;
    for (auto n : degrees) ps.push_back(interp::interpolate(orthopoly::cheb_nodes({kind, n, {}}), runge));
    const std::string name = std::string("runge_") + label + ".csv";
    ctx.write(name, [&](std::ostream& o) {
      csv::Writer w(o);
      std::vector<std::string> head{"x", "f"};
      for (auto n : degrees) head.push_back("p_N" + std::to_string(n));
      w.header(head);
      std::vector<double> row(head.size());
      for (double x : xs) {
        row[0] = x;
        row[1] = runge(x);
        for (std::size_t i = 0; i < ps.size(); ++i) row[i + 2] = ps[i](x);
        w.row(row);
      }
    });
    ctx.plot(std::string("runge_") + label + ".gp",
             line_plot(name, std::string("Runge function, ") + label + " nodes", degrees.size() + 2,
                       "set yrange [-1:2]\n"));
  }

  ctx.write("runge_errors.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"N", "sup_error_uniform", "sup_error_chebyshev"});
    for (std::size_t n = 2; n <= n_max; n += 2) {
      const auto pu = interp::interpolate(orthopoly::cheb_nodes(orthopoly::NodeFamily::uniform(n)), runge);
      const auto pc = interp::interpolate(orthopoly::cheb_nodes(orthopoly::NodeFamily::extrema(n)), runge);
      w.row({static_cast<double>(n), interp::sup_error(pu, runge), interp::sup_error(pc, runge)});
    }
  });
  ctx.plot("runge_errors.gp", line_plot("runge_errors.csv", "Interpolation error", 3, "set logscale y\n"));
}

// -------------------------------------------------------------------- aliasing

void aliasing(Context& ctx) {
  const auto n = ctx.params().get_size("N", 11);
  const auto k = static_cast<long>(ctx.params().get_size("k", 9));
  const auto samples = ctx.params().get_size("samples", 401);
  if (n < 2) throw PreconditionError("--N must be >= 2");

  ctx.write("aliasing_modes.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"x", "cos_x", "cos_kx"});
    for (double x : linspace(-kPi, kPi, samples)) w.row({x, std::cos(x), std::cos(static_cast<double>(k) * x)});
  });
  ctx.write("aliasing_nodes.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"x", "cos_x", "cos_kx", "difference"});
    for (double x : fourier::closed_grid(n, -kPi, kPi)) {
      const double a = std::cos(x);
      const double b = std::cos(static_cast<double>(k) * x);
      w.row({x, a, b, b - a});
    }
  });

  // Pythagorean split for a fixed spectrum reaching past the grid's band.
  const std::size_t grid_points = n - 1;
  fourier::Spectrum spectrum;
  const long kmax = static_cast<long>(3 * grid_points);
  for (long m = -kmax; m <= kmax; ++m) {
    spectrum[m] = fourier::cplx(1.0 / (1.0 + static_cast<double>(m * m)), 0.0);
  }
  const auto r = fourier::aliasing_error(spectrum, grid_points);
  ctx.write("aliasing_identity.csv", [&](std::ostream& o) {
    summary_rows(o, {{"grid_points", std::to_string(grid_points)},
                     {"interp_error_sq", fmt(r.interp_error_sq)},
                     {"trunc_error_sq", fmt(r.trunc_error_sq)},
                     {"alias_norm_sq", fmt(r.alias_norm_sq)},
                     {"identity_defect", fmt(r.interp_error_sq - r.trunc_error_sq - r.alias_norm_sq)}});
  });
  ctx.plot("aliasing.gp", "set datafile separator ','\nset key autotitle columnhead\n"
                          "plot 'aliasing_modes.csv' using 1:2 with lines, \\\n"
                          "     'aliasing_modes.csv' using 1:3 with lines, \\\n"
                          "     'aliasing_nodes.csv' using 1:2 with points pt 7\npause -1\n");
}

// ----------------------------------------------------------------- bvp-compare

void bvp_compare(Context& ctx) {
  const auto n = ctx.params().get_size("N", 4);
  const auto points = ctx.params().get_size("points", 401);
  const auto n_max = ctx.params().get_size("N_max", 24);
  ctx.write("bvp_solution.csv", [&](std::ostream& o) { bvp::write_comparison(o, n, points); });

  auto sup_error = [](const bvp::BvpSolution& s) {
    double e = 0.0;
    for (double x : linspace(-1.0, 1.0, 1001)) e = std::max(e, std::abs(s.coeffs(x) - bvp::exact_bvp_solution(x)));
    return e;
  };
  ctx.write("bvp_methods.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"method", "N", "sup_error", "bc_left", "bc_right", "residual_sup", "condition"});
    for (auto m : {bvp::Method::tau, bvp::Method::galerkin, bvp::Method::collocation}) {
      const auto s = bvp::solve_bvp(m, n);
      const std::vector<std::string> row{std::string(bvp::method_name(m)), std::to_string(n), fmt(sup_error(s)),
                                         fmt(s.bc_residual.first), fmt(s.bc_residual.second), fmt(s.residual_norm),
                                         fmt(s.condition)};
      w.raw_row(row);
    }
  });
  ctx.write("bvp_convergence.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"N", "tau", "galerkin", "collocation"});
    for (std::size_t k = 2; k <= n_max; ++k) {
      w.row({static_cast<double>(k), sup_error(bvp::solve_bvp(bvp::Method::tau, k)),
             sup_error(bvp::solve_bvp(bvp::Method::galerkin, k)),
             sup_error(bvp::solve_bvp(bvp::Method::collocation, k))});
    }
  });
  ctx.plot("bvp_solution.gp", line_plot("bvp_solution.csv", "u'' + u' - 2u + 2 = 0, N = " + std::to_string(n), 5));
  ctx.plot("bvp_convergence.gp", line_plot("bvp_convergence.csv", "sup-error vs N", 4, "set logscale y\n"));
}

// ------------------------------------------------------------------ cheb-polys

void cheb_polys(Context& ctx) {
  const auto n = ctx.params().get_size("n", 4);
  const auto samples = ctx.params().get_size("samples", 401);
  ctx.write("cheb_polys.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    std::vector<std::string> head{"x"};
    for (std::size_t k = 0; k <= n; ++k) head.push_back("T" + std::to_string(k));
    w.header(head);
    std::vector<double> row(n + 2);
    for (double x : linspace(-1.0, 1.0, samples)) {
      row[0] = x;
      for (std::size_t k = 0; k <= n; ++k) row[k + 1] = orthopoly::cheb_eval(k, x);
      w.row(row);
    }
  });
  ctx.write("cheb_coefficients.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"k", "power", "coefficient"});
    const auto polys = orthopoly::cheb_polys(n);
    for (std::size_t k = 0; k <= n; ++k) {
      const auto c = polys[k].coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) {
        w.row({static_cast<double>(k), static_cast<double>(c.size() - 1 - i), c[i]});
      }
    }
  });
  ctx.plot("cheb_polys.gp", line_plot("cheb_polys.csv", "Chebyshev polynomials", n + 2));
}

// ------------------------------------------------------------------- heat-demo

void heat_demo(Context& ctx) {
  pde::RunConfig cfg;
  if (ctx.params().has("config")) {
    const auto path = ctx.params().get_string("config", "");
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot read config file '" + path + "'");
    cfg = pde::parse_config(f);
  }
  for (const char* key : {"N", "l", "nu", "T", "steps", "scheme", "dealias", "preset"}) {
    if (ctx.params().has(key)) cfg.set(key, ctx.params().get_string(key, ""));
  }
  if (cfg.t_end < 0.0) throw PreconditionError("--T must be >= 0");
  const fourier::PeriodicGrid grid(cfg.n, cfg.l);
  const auto x = grid.nodes();
  const auto scheme = timestep::SchemeSpec::parse(cfg.scheme);
  std::vector<std::pair<std::string, std::string>> summary{
      {"preset", cfg.preset}, {"N", std::to_string(cfg.n)}, {"l", fmt(cfg.l)},         {"nu", fmt(cfg.nu)},
      {"T", fmt(cfg.t_end)},  {"scheme", scheme.name()},     {"dealias", cfg.dealias ? "1" : "0"}};

  if (cfg.preset == "linear") {
    const auto u0 = fourier::SpectralField::sample(grid, [](double v) { return sech2(10.0 * v); });
    const auto exact = fourier::heat_propagate(u0, cfg.nu, cfg.t_end);
    std::vector<double> mol;
    if (cfg.steps > 0 && cfg.t_end > 0.0) {
      const auto c0 = fourier::dft_forward(u0).coeffs();
      const auto out = pde::mol_integrate(pde::linear_heat_system(grid, cfg.nu), {pde::Coeffs(c0.begin(), c0.end())},
                                          scheme, cfg.t_end, cfg.steps);
      mol = fourier::synthesize(out[0]);
      double diff = 0.0;
      for (std::size_t j = 0; j < mol.size(); ++j) diff = std::max(diff, std::abs(mol[j] - exact.values()[j]));
      summary.emplace_back("steps", std::to_string(cfg.steps));
      summary.emplace_back("mol_vs_propagator_sup", fmt(diff));
    }
    ctx.write("heat_field.csv", [&](std::ostream& o) {
      csv::Writer w(o);
      if (mol.empty()) {
        w.header({"x", "u0", "uT"});
        for (std::size_t j = 0; j < x.size(); ++j) w.row({x[j], u0.values()[j], exact.values()[j]});
      } else {
        w.header({"x", "u0", "uT", "uT_mol"});
        for (std::size_t j = 0; j < x.size(); ++j) w.row({x[j], u0.values()[j], exact.values()[j], mol[j]});
      }
    });
    ctx.write("heat_spectrum.csv", [&](std::ostream& o) { fourier::write_coefficients(o, exact); });
    ctx.plot("heat_field.gp", line_plot("heat_field.csv", "Heat equation, T = " + fmt(cfg.t_end), mol.empty() ? 3 : 4));
  } else {
    auto params = pde::HeatMoistureParams::preset(cfg.preset);
    const auto th0 = fourier::SpectralField::sample(grid, [](double v) { return sech2(10.0 * v); });
    const double l = cfg.l;
    const auto te0 = fourier::SpectralField::sample(grid, [l](double v) { return 0.5 * std::cos(kPi * v / l); });
    const auto c_th = fourier::dft_forward(th0).coeffs();
    const auto c_te = fourier::dft_forward(te0).coeffs();
    pde::Fields state{pde::Coeffs(c_th.begin(), c_th.end()), pde::Coeffs(c_te.begin(), c_te.end())};
    const double mass0 = state[0][0].real();
    if (cfg.t_end > 0.0) {
      std::size_t steps = cfg.steps;
      if (steps == 0) {
        // Explicit stability hint: dt |lambda_max| <= 2 with lambda_max ~ D_max k_max^2.
        double dmax = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
          const double th = th0.values()[j];
          const double te = te0.values()[j];
          dmax = std::max({dmax, params.d_theta(th, te), params.lambda(th, te) / params.rho_cm});
        }
        const double kmax = grid.wavenumber(grid.nyquist_slot());
        steps = static_cast<std::size_t>(std::ceil(cfg.t_end * dmax * kmax * kmax / 2.0));
        steps = std::max<std::size_t>(steps, 1);
      }
      summary.emplace_back("steps", std::to_string(steps));
      state = pde::mol_integrate(pde::heat_moisture_system(grid, params, cfg.dealias), state, scheme, cfg.t_end, steps);
    }
    const auto th = fourier::synthesize(state[0]);
    const auto te = fourier::synthesize(state[1]);
    summary.emplace_back("theta_mode0_initial", fmt(mass0));
    summary.emplace_back("theta_mode0_final", fmt(state[0][0].real()));
    ctx.write("heat_moisture.csv", [&](std::ostream& o) {
      csv::Writer w(o);
      w.header({"x", "theta0", "temp0", "thetaT", "tempT"});
      for (std::size_t j = 0; j < x.size(); ++j) w.row({x[j], th0.values()[j], te0.values()[j], th[j], te[j]});
    });
    ctx.plot("heat_moisture.gp", line_plot("heat_moisture.csv", "Heat and moisture, T = " + fmt(cfg.t_end), 5));
  }
  ctx.write("heat_summary.csv", [&](std::ostream& o) { summary_rows(o, summary); });
}

// ------------------------------------------------------------- deriv-benchmark

void deriv_benchmark(Context& ctx) {
  const auto n = ctx.params().get_size("N", 32);
  const auto plot_n = ctx.params().get_size("plot_N", 128);
  const auto eps = fourier::derivative_benchmark(n);
  ctx.write("deriv_errors.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"order", "N", "relative_sup_error"});
    for (unsigned k = 0; k < 3; ++k) w.row({static_cast<double>(k + 1), static_cast<double>(n), eps[k]});
  });
  const fourier::PeriodicGrid grid(plot_n, 1.0);
  const auto u = fourier::SpectralField::sample(grid, [](double x) { return fourier::benchmark_function(x, 0); });
  const auto d1 = fourier::spectral_derivative(u, 1);
  const auto d2 = fourier::spectral_derivative(u, 2);
  const auto d3 = fourier::spectral_derivative(u, 3);
  ctx.write("deriv_field.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"x", "u", "du_exact", "du", "d2u_exact", "d2u", "d3u_exact", "d3u"});
    for (std::size_t j = 0; j < plot_n; ++j) {
      const double x = grid.node(j);
      w.row({x, u.values()[j], fourier::benchmark_function(x, 1), d1.values()[j], fourier::benchmark_function(x, 2),
             d2.values()[j], fourier::benchmark_function(x, 3), d3.values()[j]});
    }
  });
  ctx.plot("deriv_field.gp", line_plot("deriv_field.csv", "Spectral derivatives", 8));
}

// ------------------------------------------------------------------- soil-heat

void soil_heat(Context& ctx) {
  const double tmax = ctx.params().get("tmax", 9.0 * kPi);
  const auto nt = ctx.params().get_size("nt", 361);
  const auto nx = ctx.params().get_size("nx", 101);
  const double depth = ctx.params().get("depth", 0.75);
  if (!(tmax > 0.0) || nt < 2 || nx < 2) throw PreconditionError("need tmax > 0, nt >= 2, nx >= 2");
  const pde::ExactHeatSolution sol;
  // At t = 0 the series converges only algebraically: use the fixed budget.
  auto u = [&sol](double x, double t) { return t == 0.0 ? sol.with_terms(x, t, 200) : sol(x, t); };
  const auto ts = linspace(0.0, tmax, nt);
  const auto xs = linspace(0.0, 1.0, nx);
  ctx.write("soil_space_time.csv", [&](std::ostream& o) { pde::write_space_time(o, ts, xs, u); });

  const auto tf = linspace(0.0, tmax, 4 * nt);
  double best_s = -1e300;
  double best_d = -1e300;
  double t_s = 0.0;
  double t_d = 0.0;
  ctx.write("soil_probes.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"t", "u_surface", "u_depth"});
    for (double t : tf) {
      const double a = u(0.0, t);
      const double b = u(depth, t);
      w.row({t, a, b});
      if (t >= tmax - 2.0 * kPi) {  // last period
        if (a > best_s) { best_s = a; t_s = t; }
        if (b > best_d) { best_d = b; t_d = t; }
      }
    }
  });
  ctx.write("soil_summary.csv", [&](std::ostream& o) {
    summary_rows(o, {{"depth", fmt(depth)},
                     {"t_peak_surface", fmt(t_s)},
                     {"t_peak_depth", fmt(t_d)},
                     {"phase_lag", fmt(std::fmod(t_d - t_s + 4.0 * kPi, 2.0 * kPi))},
                     {"amplitude_surface", fmt(best_s)},
                     {"amplitude_depth", fmt(best_d)}});
  });
  ctx.plot("soil_space_time.gp", "set datafile separator ','\nset xlabel 't'\nset ylabel 'x'\n"
                                 "splot 'soil_space_time.csv' using 1:2:3 every ::1 with points pt 0\npause -1\n");
  ctx.plot("soil_probes.gp", line_plot("soil_probes.csv", "Surface and depth", 3));
}

// -------------------------------------------------------------------- brownian

void brownian(Context& ctx) {
  const auto m = ctx.params().get_size("M", 100);
  const auto n = ctx.params().get_size("N", 1000);
  const double t = ctx.params().get("T", 1.0);
  const auto paths2d = ctx.params().get_size("paths2d", 5);
  const auto seed = *ctx.seed();
  const auto batch = montecarlo::brownian_batch(m, n, t, seed);

  ctx.write("brownian_paths.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    std::vector<std::string> head{"t", "plus_2sd", "minus_2sd"};
    for (std::size_t p = 0; p < m; ++p) head.push_back("W" + std::to_string(p));
    w.header(head);
    std::vector<double> row(head.size(), 0.0);
    w.row(row);
    for (std::size_t s = 0; s < n; ++s) {
      const double ts = batch.dt * static_cast<double>(s + 1);
      row[0] = ts;
      row[1] = 2.0 * std::sqrt(ts);
      row[2] = -2.0 * std::sqrt(ts);
      for (std::size_t p = 0; p < m; ++p) row[p + 3] = batch.W(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s));
      w.row(row);
    }
  });
  ctx.write("brownian_stats.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"t", "mean", "variance"});
    std::vector<double> col(m);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t p = 0; p < m; ++p) col[p] = batch.W(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s));
      const double mean = montecarlo::pairwise_sum(col) / static_cast<double>(m);
      for (auto& c : col) c = (c - mean) * (c - mean);
      const double var = m > 1 ? montecarlo::pairwise_sum(col) / static_cast<double>(m - 1) : 0.0;
      w.row({batch.dt * static_cast<double>(s + 1), mean, var});
    }
  });
  ctx.write("brownian_2d.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"path", "t", "x", "y"});
    const double sq = std::sqrt(batch.dt);
    for (std::size_t p = 0; p < paths2d; ++p) {
      random::NormalStream zx(seed, p, 0);
      random::NormalStream zy(seed, p, 1);
      double x = 0.0;
      double y = 0.0;
      w.row({static_cast<double>(p), 0.0, x, y});
      for (std::size_t s = 0; s < n; ++s) {
        x += sq * zx(s);
        y += sq * zy(s);
        w.row({static_cast<double>(p), batch.dt * static_cast<double>(s + 1), x, y});
      }
    }
  });
  ctx.plot("brownian_paths.gp", line_plot("brownian_paths.csv", "Brownian paths", m + 3, "set key off\n"));
  ctx.plot("brownian_2d.gp", "set datafile separator ','\nset key off\nset size square\n"
                             "plot 'brownian_2d.csv' using 3:4:1 every ::1 with lines lc variable\npause -1\n");
}

// ------------------------------------------------------------- rk4-convergence

void rk4_convergence(Context& ctx) {
  const double t_end = ctx.params().get("T", 2.0);
  const auto scheme = timestep::SchemeSpec::parse(ctx.params().get_string("scheme", "rk4"));
  const auto problem = timestep::logistic_problem(t_end);
  const auto steps = timestep::logistic_step_list();
  const timestep::State exact = timestep::State::Constant(1, timestep::logistic_exact(t_end));
  const auto study = timestep::convergence_study(scheme, problem, exact, steps);
  ctx.write("rk4_convergence.csv", [&](std::ostream& o) { timestep::write_convergence(o, study); });
  ctx.write("rk4_fit.csv", [&](std::ostream& o) {
    summary_rows(o, {{"scheme", scheme.name()},
                     {"declared_order", std::to_string(scheme.order())},
                     {"fitted_slope", fmt(study.slope)},
                     {"fitted_points", std::to_string(study.fitted_points)},
                     {"final_error", fmt(study.points.back().error)}});
  });
  ctx.plot("rk4_convergence.gp", "set datafile separator ','\nset key autotitle columnhead\nset logscale xy\n"
                                 "plot 'rk4_convergence.csv' using 2:3 with linespoints\npause -1\n");
}

// -------------------------------------------------------------- lebesgue-table

void lebesgue_table(Context& ctx) {
  const auto n_max = ctx.params().get_size("N_max", 40);
  std::vector<std::size_t> ns;
  for (std::size_t n : {5, 10, 20, 40, 80}) {
    if (n <= n_max) ns.push_back(n);
  }
  ctx.write("lebesgue.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"N", "chebyshev_extrema", "chebyshev_zeros", "uniform", "asymptotic"});
    for (auto n : ns) {
      const auto ext = orthopoly::cheb_nodes(orthopoly::NodeFamily::extrema(n));
      const auto zer = orthopoly::cheb_nodes(orthopoly::NodeFamily::zeros(n + 1));
      const auto uni = orthopoly::cheb_nodes(orthopoly::NodeFamily::uniform(n));
      w.row({static_cast<double>(n), interp::lebesgue_constant(ext), interp::lebesgue_constant(zer),
             interp::lebesgue_constant(uni), interp::chebyshev_lebesgue_asymptotic(n)});
    }
  });
  ctx.plot("lebesgue.gp", line_plot("lebesgue.csv", "Lebesgue constants", 5, "set logscale y\n"));
}

// ---------------------------------------------------------------- trefftz-disk

void trefftz_disk(Context& ctx) {
  const auto n_max = ctx.params().get_size("n_max", 8);
  const auto points = ctx.params().get_size("points", 0);
  const auto lattice = ctx.params().get_size("lattice", 41);
  const auto sources = ctx.params().get_size("sources", 16);
  const double dilation = ctx.params().get("dilation", 1.8);
  const auto domain_file = ctx.params().get_string("domain", "");
  if (lattice < 2) throw PreconditionError("--lattice must be >= 2");

  using trefftz::Point;
  std::optional<trefftz::DomainSpec> domain;
  std::function<double(const Point&)> exact;
  if (domain_file.empty()) {
    exact = [](const Point& p) { return std::exp(p.x()) * std::cos(p.y()); };
    auto data = [exact](const Point& p, const Point&) { return exact(p); };
    domain = trefftz::DomainSpec{trefftz::BoundaryCurve::circle(Point(0.0, 0.0), 1.0),
                                 {trefftz::SegmentCondition::dirichlet(data)}};
  } else {
    std::ifstream f(domain_file);
    if (!f) throw PreconditionError("cannot read domain file '" + domain_file + "'");
    domain = trefftz::read_domain(f);
  }
  const auto& curve = domain->curve;
  const Point c = curve.centroid();
  const double rho = curve.radius();

  struct Run {
    std::string basis;
    trefftz::Method method;
    std::string method_name;
  };
  const std::vector<Run> runs{{"t_complete", trefftz::Method::collocation, "collocation"},
                              {"t_complete", trefftz::Method::least_squares, "least_squares"},
                              {"t_complete", trefftz::Method::galerkin_boundary, "galerkin_boundary"},
                              {"fundamental", trefftz::Method::least_squares, "least_squares"}};

  // Interior probes on a lattice clipped to the domain.
  std::vector<Point> probes;
  for (double y : linspace(c.y() - rho, c.y() + rho, 21)) {
    for (double x : linspace(c.x() - rho, c.x() + rho, 21)) {
      if (curve.signed_distance(Point(x, y)) < -1e-3 * rho) probes.emplace_back(x, y);
    }
  }

  std::optional<trefftz::TrefftzSolution> shown;
  ctx.write("trefftz_summary.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"basis", "method", "unknowns", "boundary_residual", "condition", "interior_error"});
    for (const auto& r : runs) {
      trefftz::BoundaryProblem problem{curve, domain->conditions,
                                       r.basis == "fundamental"
                                           ? trefftz::Basis::fundamental(trefftz::default_sources(curve, sources, dilation))
                                           : trefftz::Basis::t_complete(n_max, c, rho),
                                       points};
      const auto s = trefftz::solve_trefftz(problem, r.method);
      double err = std::numeric_limits<double>::quiet_NaN();
      if (exact) {
        err = 0.0;
        for (const auto& p : probes) err = std::max(err, std::abs(s(p) - exact(p)));
      }
      const std::vector<std::string> row{r.basis, r.method_name, std::to_string(problem.basis.size()),
                                         fmt(s.boundary_residual), fmt(s.condition), fmt(err)};
      w.raw_row(row);
      if (!shown) shown = s;
    }
  });
  const auto xs = linspace(c.x() - rho, c.x() + rho, lattice);
  const auto ys = linspace(c.y() - rho, c.y() + rho, lattice);
  ctx.write("trefftz_field.csv", [&](std::ostream& o) { trefftz::write_lattice(o, *shown, curve, xs, ys); });
  ctx.plot("trefftz_field.gp", "set datafile separator ','\nset view map\nset size square\n"
                               "splot 'trefftz_field.csv' using 1:2:4 every ::1 with points pt 5 palette\npause -1\n");
}

// ----------------------------------------------------------- feynman-kac-probe

void feynman_kac_probe(Context& ctx) {
  const auto m = ctx.params().get_size("M", 100000);
  const auto n = ctx.params().get_size("N", 1);
  const double nu = ctx.params().get("nu", 0.01);
  const double t = ctx.params().get("T", 5.0);
  const double l = ctx.params().get("l", 1.0);
  const auto grid_n = ctx.params().get_size("grid", 256);
  if (!(nu > 0.0)) throw PreconditionError("--nu must be positive");
  const auto seed = *ctx.seed();

  auto wrap = [l](double x) { return x - 2.0 * l * std::floor((x + l) / (2.0 * l)); };
  montecarlo::SdeProblem problem;
  problem.sigma = [s = std::sqrt(2.0 * nu)](double) { return s; };
  problem.u0 = [wrap](double x) { return sech2(10.0 * wrap(x)); };

  const fourier::PeriodicGrid grid(grid_n, l);
  const auto u0 = fourier::SpectralField::sample(grid, [](double x) { return sech2(10.0 * x); });
  const auto ut = fourier::dft_forward(fourier::heat_propagate(u0, nu, t));
  fourier::Spectrum spec;
  const auto coeffs = ut.coeffs();
  for (std::size_t j = 0; j < grid_n; ++j) spec[grid.mode_index(j)] = coeffs[j] / static_cast<double>(grid_n);

  std::vector<montecarlo::ProbeRow> rows;
  std::vector<double> reference;
  for (double x : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
    problem.x0 = x * l;
    rows.push_back({x * l, montecarlo::feynman_kac(problem, t, m, n, seed)});
    // Trigonometric interpolant of the propagated grid function at x.
    reference.push_back(fourier::evaluate(spec, kPi * (x * l + l - grid.dx()) / l).real());
  }
  ctx.write("fk_probes.csv", [&](std::ostream& o) { montecarlo::write_probes(o, rows); });
  ctx.write("fk_compare.csv", [&](std::ostream& o) {
    csv::Writer w(o);
    w.header({"probe_x", "estimate", "std_error", "spectral", "z_score"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& e = rows[i].value;
      w.row({rows[i].x, e.estimate, e.std_error, reference[i], (e.estimate - reference[i]) / e.std_error});
    }
  });
  ctx.plot("fk_compare.gp", "set datafile separator ','\nset key autotitle columnhead\n"
                            "plot 'fk_compare.csv' using 1:2:3 with yerrorbars, '' using 1:4 with points\npause -1\n");
}

}  // namespace

void register_builtin(Registry& r) {
  r.add({"runge-interp", "Runge function interpolated on uniform and Chebyshev nodes", false,
         {"N", "samples"}, runge_interp});
  r.add({"aliasing", "cos(x) and cos(9x) on the 11-point grid; aliasing decomposition", false,
         {"N", "k", "samples"}, aliasing});
  r.add({"bvp-compare", "Tau, Galerkin and collocation solutions of the model BVP", false,
         {"N", "points", "N_max"}, bvp_compare});
  r.add({"cheb-polys", "First Chebyshev polynomials on [-1, 1]", false, {"n", "samples"}, cheb_polys});
  r.add({"heat-demo", "Periodic heat equation (exact propagator, MOL, heat-moisture presets)", false,
         {"config", "N", "l", "nu", "T", "steps", "scheme", "dealias", "preset"}, heat_demo});
  r.add({"deriv-benchmark", "Spectral derivatives of sin(pi(x+1)) exp(sin(pi(x+1)))", false, {"N", "plot_N"},
         deriv_benchmark});
  r.add({"soil-heat", "Exact non-periodic heat solution: space-time field and phase shift", false,
         {"tmax", "nt", "nx", "depth"}, soil_heat});
  r.add({"brownian", "Brownian path batch in one and two dimensions", true, {"M", "N", "T", "paths2d"}, brownian});
  r.add({"rk4-convergence", "RK4 error on the logistic equation over N = 100..6000", false, {"T", "scheme"},
         rk4_convergence});
  r.add({"lebesgue-table", "Lebesgue constants of Chebyshev and uniform nodes", false, {"N_max"}, lebesgue_table});
  r.add({"trefftz-disk", "Trefftz and fundamental-solution Laplace solves on the unit disk", false,
         {"n_max", "points", "lattice", "sources", "dilation", "domain"}, trefftz_disk});
  r.add({"feynman-kac-probe", "Feynman-Kac point estimates against the spectral heat propagator", true,
         {"M", "N", "nu", "T", "l", "grid"}, feynman_kac_probe});
}

}  // namespace spectral::cli
