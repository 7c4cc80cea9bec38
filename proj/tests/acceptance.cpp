// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failures 9,...]
//
// Exit status is 0 when the set of failing criteria equals the known set
// (empty by default), 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectral/bvp.hpp"
#include "spectral/fourier.hpp"
#include "spectral/interp.hpp"
#include "spectral/montecarlo.hpp"
#include "spectral/orthopoly.hpp"
#include "spectral/pde.hpp"
#include "spectral/timestep.hpp"
#include "spectral/trefftz.hpp"
#include "spectral_cli/registry.hpp"
#include "support/gen.hpp"

namespace fs = std::filesystem;
using namespace spectral;
using fourier::cplx;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAIL]");
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

// 1. Derivative benchmark at N = 32.
Outcome derivative_benchmark() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto e = fourier::derivative_benchmark(32);
  const double dt = seconds_since(t0);
  o.check(e[0] <= 1e-12, "order1 " + sci(e[0]));
  o.check(e[1] <= 1e-12, "order2 " + sci(e[1]));
  o.check(e[2] <= 1e-11, "order3 " + sci(e[2]));
  o.check(dt < 1.0, "runtime " + sci(dt) + " s");
  return o;
}

// 2. Superalgebraic convergence under doubling 8 -> 16 -> 32.
Outcome spectral_accuracy() {
  Outcome o;
  const double floor = 1e-12;
  const auto e8 = fourier::derivative_benchmark(8);
  const auto e16 = fourier::derivative_benchmark(16);
  const auto e32 = fourier::derivative_benchmark(32);
  for (int k = 0; k < 3; ++k) {
    const bool a = e16[k] <= e8[k] / 100 || e16[k] <= floor;
    const bool b = e32[k] <= e16[k] / 100 || e32[k] <= floor;
    o.check(a && b, "order" + std::to_string(k + 1) + " " + sci(e8[k]) + " > " + sci(e16[k]) + " > " + sci(e32[k]));
  }
  return o;
}

double bvp_sup_error(const bvp::BvpSolution& s) {
  double e = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -1.0 + 2.0 * i / 1000.0;
    e = std::max(e, std::abs(s.coeffs(x) - bvp::exact_bvp_solution(x)));
  }
  return e;
}

// 3. Model BVP by tau, Galerkin and collocation.
Outcome bvp_methods() {
  Outcome o;
  const auto tau = bvp::solve_bvp(bvp::Method::tau, 4);
  const auto gal = bvp::solve_bvp(bvp::Method::galerkin, 4);
  const auto col = bvp::solve_bvp(bvp::Method::collocation, 4);
  double bc = 0.0;
  for (const auto* s : {&tau, &gal, &col}) {
    bc = std::max({bc, std::abs(s->coeffs(-1.0)), std::abs(s->coeffs(1.0))});
  }
  o.check(bc <= 1e-12, "N=4 bc " + sci(bc));
  const double et = bvp_sup_error(tau);
  const double eg = bvp_sup_error(gal);
  const double ec = bvp_sup_error(col);
  o.check(eg < et && ec < et, "N=4 sup tau " + sci(et) + " galerkin " + sci(eg) + " collocation " + sci(ec));
  double worst = 0.0;
  for (auto m : {bvp::Method::tau, bvp::Method::galerkin, bvp::Method::collocation}) {
    worst = std::max(worst, bvp_sup_error(bvp::solve_bvp(m, 16)));
  }
  o.check(worst <= 1e-8, "N=16 sup " + sci(worst));
  return o;
}

// 4. RK4 on the logistic problem.
Outcome rk4_convergence() {
  Outcome o;
  const auto st = timestep::convergence_study(timestep::SchemeSpec::rk4(), timestep::logistic_problem(2.0),
                                              timestep::State::Constant(1, timestep::logistic_exact(2.0)),
                                              timestep::logistic_step_list());
  o.check(std::abs(st.slope - 4.0) <= 0.1, "slope " + sci(st.slope));
  o.check(st.points.back().error <= 1e-12, "error at N=6000 " + sci(st.points.back().error));
  return o;
}

// 5. Aliasing decomposition and the 11-point example.
Outcome aliasing() {
  Outcome o;
  double worst = 0.0;
  gen::Rng r(5005);
  for (int c = 0; c < 500; ++c) {
    const std::size_t n = r.index(3, 40);
    fourier::Spectrum s;
    const auto terms = r.index(1, 12);
    for (std::size_t i = 0; i < terms; ++i) {
      s[r.integer(-4 * static_cast<long>(n), 4 * static_cast<long>(n))] += cplx(r.normal(), r.normal());
    }
    const auto rep = fourier::aliasing_error(s, n);
    worst = std::max(worst, std::abs(rep.interp_error_sq - rep.trunc_error_sq - rep.alias_norm_sq) /
                                std::max(1.0, rep.interp_error_sq));
  }
  o.check(worst <= 1e-10, "Pythagorean defect " + sci(worst));
  double cos_gap = 0.0;
  for (double x : fourier::closed_grid(11, -kPi, kPi)) cos_gap = std::max(cos_gap, std::abs(std::cos(x) - std::cos(9 * x)));
  o.check(cos_gap <= 1e-12, "cos x vs cos 9x " + sci(cos_gap));
  return o;
}

std::size_t slot(long k, std::size_t n) {
  const long nn = static_cast<long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

std::vector<cplx> layout(const fourier::Spectrum& s, std::size_t n) {
  std::vector<cplx> c(n, 0.0);
  for (const auto& [k, v] : s) c[slot(k, n)] += static_cast<double>(n) * v;
  return c;
}

// 6. Dealiased products.
Outcome dealiasing() {
  Outcome o;
  gen::Rng r(6006);
  double worst = 0.0;
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 4 * r.index(1, 32);
    const long band = static_cast<long>(n / 4);
    auto spectrum = [&] {
      fourier::Spectrum s;
      s[0] = r.normal();
      for (long k = 1; k <= band; ++k) {
        const cplx v(r.normal(), r.normal());
        s[k] = v;
        s[-k] = std::conj(v);
      }
      return s;
    };
    const auto u = spectrum();
    const auto v = spectrum();
    fourier::Spectrum conv;
    for (const auto& [i, a] : u) {
      for (const auto& [j, b] : v) conv[i + j] += a * b;
    }
    const auto w = fourier::dealias_product(layout(u, n), layout(v, n));
    const auto want = layout(conv, n);
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(w[j] - want[j]) / static_cast<double>(n));
  }
  o.check(worst <= 1e-12, "band-limited vs convolution " + sci(worst));
  const std::size_t n = 16;
  const fourier::Spectrum c{{5, 0.5}, {-5, 0.5}};
  const auto naive = fourier::aliased_product(layout(c, n), layout(c, n));
  const auto good = fourier::dealias_product(layout(c, n), layout(c, n));
  const double spurious = std::abs(naive[slot(6, n)]) / n;
  const double clean = std::abs(good[slot(6, n)]) / n;
  o.check(spurious > 0.2 && clean <= 1e-12, "cos5x^2 on 16 points: mode 6 naive " + sci(spurious) + ", dealiased " + sci(clean));
  return o;
}

// Integer coefficients of T_0..T_n in the monomial basis.
std::vector<std::vector<long long>> cheb_table(std::size_t n) {
  std::vector<std::vector<long long>> t(n + 1, std::vector<long long>(n + 1, 0));
  t[0][0] = 1;
  if (n >= 1) t[1][1] = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t p = 0; p <= n; ++p) {
      t[k][p] = (p > 0 ? 2 * t[k - 1][p - 1] : 0) - t[k - 2][p];
    }
  }
  return t;
}

// 7. Chebyshev suite.
Outcome chebyshev() {
  Outcome o;
  double orth = 0.0;
  for (std::size_t m = 0; m <= 16; ++m) {
    for (std::size_t n = 0; n <= 16; ++n) {
      const double want = m != n ? 0.0 : (m == 0 ? kPi : kPi / 2.0);
      orth = std::max(orth, std::abs(orthopoly::cheb_inner(m, n, m + n + 1) - want));
    }
  }
  o.check(orth <= 1e-12, "orthogonality " + sci(orth));
  double comp = 0.0;
  for (std::size_t m = 0; m <= 64; ++m) {
    for (std::size_t n = 0; n <= 64; ++n) {
      if (m * n <= 64) comp = std::max(comp, orthopoly::cheb_compose_check(m, n, 257));
    }
  }
  o.check(comp <= 1e-10, "composition " + sci(comp));
  const auto table = cheb_table(8);
  gen::Rng r(7007);
  double diff = 0.0;
  for (int c = 0; c < 300; ++c) {
    const auto deg = r.index(0, 8);
    const auto v = r.vector(deg + 1, -2.0, 2.0);
    auto to_monomial = [&](std::span<const double> a) {
      std::vector<double> m(9, 0.0);
      for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t p = 0; p <= 8; ++p) m[p] += a[k] * static_cast<double>(table[k][p]);
      }
      return m;
    };
    auto mono = to_monomial(v);
    const orthopoly::ChebSeries s(v);
    for (unsigned order = 1; order <= 3; ++order) {
      std::vector<double> d(9, 0.0);
      for (std::size_t p = 1; p <= 8; ++p) d[p - 1] = static_cast<double>(p) * mono[p];
      mono = d;
      const auto got = orthopoly::cheb_diff(s, order);
      const auto gm = to_monomial(got.coeffs());
      for (std::size_t p = 0; p <= 8; ++p) diff = std::max(diff, std::abs(gm[p] - mono[p]));
    }
  }
  o.check(diff <= 1e-10, "differentiation vs symbolic " + sci(diff));
  return o;
}

// 8. Lebesgue constants.
Outcome lebesgue() {
  Outcome o;
  using orthopoly::NodeFamily;
  for (std::size_t n : {10, 20, 40}) {
    const double lam = interp::lebesgue_constant(orthopoly::cheb_nodes(NodeFamily::extrema(n)));
    const double asym = interp::chebyshev_lebesgue_asymptotic(n);
    o.check(std::abs(lam - asym) / asym <= 0.05, "N=" + std::to_string(n) + " " + sci(lam) + " vs " + sci(asym));
  }
  const double u20 = interp::lebesgue_constant(orthopoly::cheb_nodes(NodeFamily::uniform(20)));
  const double c20 = interp::lebesgue_constant(orthopoly::cheb_nodes(NodeFamily::extrema(20)));
  o.check(u20 / c20 >= 50.0, "uniform/Chebyshev at N=20 " + sci(u20 / c20));
  return o;
}

// 9. Exact non-periodic heat solution.
Outcome soil_heat() {
  Outcome o;
  const pde::ExactHeatSolution u;
  double bc0 = 0.0;
  double bc1 = 0.0;
  const double h = 1e-5;
  for (int i = 1; i <= 90; ++i) {
    const double t = 0.1 * i * kPi;
    bc0 = std::max(bc0, std::abs(u(0.0, t) - std::sin(t)));
    bc1 = std::max(bc1, std::abs((3 * u(1.0, t) - 4 * u(1.0 - h, t) + u(1.0 - 2 * h, t)) / (2 * h)));
  }
  o.check(bc0 <= 1e-10, "u(0,t)-sin t " + sci(bc0));
  o.check(bc1 <= 1e-8, "u_x(1,t) " + sci(bc1));
  double init = 0.0;
  for (int i = 0; i <= 20000; ++i) init = std::max(init, std::abs(u.with_terms(i / 20000.0, 0.0, 200)));
  o.check(init <= 1e-6, "|u(.,0)| with 200 terms " + sci(init));
  double res = 0.0;
  const double ht = 1e-4;
  const double hx = 1e-4;
  for (double t : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    for (int i = 1; i < 20; ++i) {
      const double x = i / 20.0;
      const double ut = (u(x, t + ht) - u(x, t - ht)) / (2 * ht);
      const double uxx = (u(x + hx, t) - 2 * u(x, t) + u(x - hx, t)) / (hx * hx);
      res = std::max(res, std::abs(ut - pde::ExactHeatSolution::kappa * uxx));
    }
  }
  o.check(res <= 1e-6, "PDE residual t>=0.1 " + sci(res));
  // Phase shift: over the last period the depth maximum trails the surface one.
  const double t0 = 7 * kPi;
  double ts = 0.0, td = 0.0, bs = -1e9, bd = -1e9;
  for (int i = 0; i <= 4000; ++i) {
    const double t = t0 + 2 * kPi * i / 4000.0;
    if (const double v = u(0.0, t); v > bs) { bs = v; ts = t; }
    if (const double v = u(0.75, t); v > bd) { bd = v; td = t; }
  }
  const double lag = std::fmod(td - ts + 4 * kPi, 2 * kPi);
  o.check(lag > 0.0 && lag < 2 * kPi && bd < bs, "phase lag at x=3/4 " + sci(lag) + ", amplitude " + sci(bd));
  return o;
}

// 10. Feynman-Kac statistics.
Outcome feynman_kac() {
  Outcome o;
  const std::size_t m = 100000;
  const auto b = montecarlo::brownian_batch(m, 10, 1.0, 10010);
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double w = b.W(static_cast<Eigen::Index>(i), 9);
    s1 += w;
    s2 += w * w;
    s4 += w * w * w * w;
  }
  const double mean = s1 / m;
  const double var = s2 / m;
  o.check(std::abs(mean) <= 4 * std::sqrt(1.0 / m), "E[W_1] " + sci(mean));
  const double var_se = std::sqrt((s4 / m - var * var) / m);
  o.check(std::abs(var - 1.0) <= 4 * var_se, "E[W_1^2] " + sci(var));
  montecarlo::SdeProblem sq;
  sq.u0 = [](double x) { return x * x; };
  const auto e = montecarlo::feynman_kac(sq, 1.0, m, 1, 10011);
  o.check(std::abs(e.estimate - 1.0) <= 4 * e.std_error, "u0=x^2 probe z " + sci((e.estimate - 1.0) / e.std_error));

  std::vector<double> ms, rms;
  for (std::size_t mm : {1000, 10000, 100000, 1000000}) {
    double s = 0.0;
    const int seeds = 16;
    for (int k = 0; k < seeds; ++k) {
      const auto r = montecarlo::feynman_kac(sq, 1.0, mm, 1, 20000 + k);
      s += (r.estimate - 1.0) * (r.estimate - 1.0);
    }
    ms.push_back(static_cast<double>(mm));
    rms.push_back(std::sqrt(s / seeds));
  }
  const double fit = timestep::loglog_slope(ms, rms);
  o.check(std::abs(fit + 0.5) <= 0.15, "RMS error slope " + sci(fit));

  const double nu = 0.01;
  const double t = 5.0;
  const double l = 1.0;
  const std::size_t grid_n = 256;
  auto wrap = [l](double x) { return x - 2.0 * l * std::floor((x + l) / (2.0 * l)); };
  montecarlo::SdeProblem heat;
  heat.sigma = [s = std::sqrt(2.0 * nu)](double) { return s; };
  heat.u0 = [wrap](double x) { return sech2(10.0 * wrap(x)); };
  const fourier::PeriodicGrid grid(grid_n, l);
  const auto ut = fourier::dft_forward(
      fourier::heat_propagate(fourier::SpectralField::sample(grid, [](double x) { return sech2(10.0 * x); }), nu, t));
  fourier::Spectrum spec;
  for (std::size_t j = 0; j < grid_n; ++j) spec[grid.mode_index(j)] = ut.coeffs()[j] / static_cast<double>(grid_n);
  double worst_z = 0.0;
  for (double x : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
    heat.x0 = x;
    const auto est = montecarlo::feynman_kac(heat, t, m, 1, 10012);
    const double ref = fourier::evaluate(spec, kPi * (x + l - grid.dx()) / l).real();
    worst_z = std::max(worst_z, std::abs(est.estimate - ref) / est.std_error);
  }
  o.check(worst_z <= 4.0, "spectral cross-check max |z| " + sci(worst_z));
  return o;
}

// 11. Trefftz solver.
Outcome trefftz_solver() {
  using namespace spectral::trefftz;
  Outcome o;
  BoundaryProblem disk{BoundaryCurve::circle({0, 0}, 1.0),
                       {SegmentCondition::dirichlet([](const Point& x, const Point&) { return x.x(); })},
                       Basis::t_complete(8), 40};
  const auto s = solve_trefftz(disk, Method::least_squares);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) worst = std::max(worst, std::abs(s.coeffs[i] - (i == 1 ? 1.0 : 0.0)));
  o.check(worst <= 1e-10, "disk cos(theta) coefficients " + sci(worst));
  auto exact = [](const Point& x) { return x.x() * x.x() - x.y() * x.y(); };
  BoundaryProblem square{BoundaryCurve::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}),
                         {SegmentCondition::dirichlet([&](const Point& x, const Point&) { return exact(x); })},
                         Basis::t_complete(8), 36};
  const auto q = solve_trefftz(square, Method::collocation);
  gen::Rng r(11011);
  double interior = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point x(r.uniform(-1, 1), r.uniform(-1, 1));
    interior = std::max(interior, std::abs(q(x) - exact(x)));
  }
  o.check(interior <= 1e-8, "square x^2-y^2 interior " + sci(interior));
  return o;
}

pde::Coeffs coeffs_of(const fourier::PeriodicGrid& g, const std::function<double(double)>& f) {
  const auto field = fourier::dft_forward(fourier::SpectralField::sample(g, f));
  return {field.coeffs().begin(), field.coeffs().end()};
}

std::vector<double> fd4(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = (-f[(i + 2) % n] + 8 * f[(i + 1) % n] - 8 * f[(i + n - 1) % n] + f[(i + n - 2) % n]) / (12 * h);
  }
  return d;
}

// 12. Coupled heat and moisture model.
Outcome heat_moisture() {
  Outcome o;
  gen::Rng r(12012);
  auto trig = [&r](std::size_t band, double amp) {
    const double c0 = r.uniform(-amp, amp);
    auto a = r.vector(band, -amp, amp);
    auto b = r.vector(band, -amp, amp);
    return [c0, a, b](double x) {
      double s = c0;
      for (std::size_t k = 1; k <= a.size(); ++k) {
        s += (a[k - 1] * std::cos(k * kPi * x) + b[k - 1] * std::sin(k * kPi * x)) / static_cast<double>(k);
      }
      return s;
    };
  };

  const fourier::PeriodicGrid g(64, 1.0);
  double diag = 0.0;
  for (int c = 0; c < 20; ++c) {
    const double dth = r.uniform(0.0, 0.1), dt = r.uniform(0.0, 0.1), lam = r.uniform(0.0, 0.1), rho = r.uniform(0.5, 2);
    const auto p = pde::HeatMoistureParams::constant(dth, dt, lam, rho);
    const pde::Fields s{coeffs_of(g, trig(31, 1.0)), coeffs_of(g, trig(31, 1.0))};
    const auto d = pde::heat_moisture_rhs(g, s, p);
    for (std::size_t j = 0; j < 64; ++j) {
      if (j == g.nyquist_slot()) continue;
      const double k2 = g.wavenumber(j) * g.wavenumber(j);
      const cplx w0 = -k2 * (dth * s[0][j] + dt * s[1][j]);
      const cplx w1 = -k2 * lam / rho * s[1][j];
      diag = std::max(diag, std::abs(d[0][j] - w0) / std::max(std::abs(w0), 1e-300 + std::abs(s[0][j])));
      diag = std::max(diag, std::abs(d[1][j] - w1) / std::max(std::abs(w1), 1e-300 + std::abs(s[1][j])));
    }
  }
  o.check(diag <= 1e-12, "constant-coefficient modes " + sci(diag));

  double fd = 0.0;
  const std::size_t fine = 4096;
  const fourier::PeriodicGrid gf(fine, 1.0);
  for (int c = 0; c < 5; ++c) {
    const auto th = trig(4, 0.4);
    const auto te = trig(4, 0.4);
    const auto p = pde::HeatMoistureParams::nonlinear(0.01, 0.002, 0.02, 1.3);
    const auto d = pde::heat_moisture_rhs(g, {coeffs_of(g, th), coeffs_of(g, te)}, p);
    const auto dth = fourier::synthesize(d[0]);
    const auto dte = fourier::synthesize(d[1]);
    std::vector<double> t(fine), T(fine);
    for (std::size_t i = 0; i < fine; ++i) {
      t[i] = th(gf.node(i));
      T[i] = te(gf.node(i));
    }
    const auto tx = fd4(t, gf.dx());
    const auto Tx = fd4(T, gf.dx());
    std::vector<double> mf(fine), hf(fine), jv(fine);
    for (std::size_t i = 0; i < fine; ++i) {
      mf[i] = p.d_theta(t[i], T[i]) * tx[i] + p.d_t(t[i], T[i]) * Tx[i];
      hf[i] = p.lambda(t[i], T[i]) * Tx[i];
      jv[i] = -p.v_theta(t[i], T[i]) * tx[i] - p.v_t(t[i], T[i]) * Tx[i];
    }
    const auto dm = fd4(mf, gf.dx());
    const auto dh = fd4(hf, gf.dx());
    const auto dj = fd4(jv, gf.dx());
    std::vector<double> want_te(fine);
    double sc0 = 0.0, sc1 = 0.0;
    for (std::size_t i = 0; i < fine; ++i) {
      want_te[i] = (dh[i] - p.latent(T[i]) * dj[i]) / p.rho_cm;
      sc0 = std::max(sc0, std::abs(dm[i]));
      sc1 = std::max(sc1, std::abs(want_te[i]));
    }
    for (std::size_t j = 0; j < 64; ++j) {
      const std::size_t i = 64 * j + 63;
      fd = std::max({fd, std::abs(dth[j] - dm[i]) / sc0, std::abs(dte[j] - want_te[i]) / sc1});
    }
  }
  o.check(fd <= 1e-6, "nonlinear vs 4096-point FD " + sci(fd));

  const auto p = pde::HeatMoistureParams::nonlinear();
  const pde::Fields s{coeffs_of(g, [](double x) { return sech2(10 * x); }),
                      coeffs_of(g, [](double x) { return 0.5 * std::cos(kPi * x); })};
  const auto d = pde::heat_moisture_rhs(g, s, p);
  const auto out = pde::mol_integrate(pde::heat_moisture_system(g, p), s, timestep::SchemeSpec::rk4(), 2.0, 200);
  const double drift = std::abs(out[0][0] - s[0][0]) / std::abs(s[0][0]);
  o.check(d[0][0] == cplx(0.0) && drift <= 64 * 200 * 1.1e-16,
          "moisture mode 0 rate " + sci(std::abs(d[0][0])) + ", drift " + sci(drift));
  return o;
}

// 13. Determinism of every CLI experiment.
Outcome determinism(Clock::time_point start) {
  Outcome o;
  const auto reg = cli::Registry::with_defaults();
  const auto root = fs::temp_directory_path() / "spectral_acceptance";
  std::size_t identical = 0;
  std::string mismatched;
  for (const auto& e : reg.list()) {
    std::string manifests[2];
    bool ok = true;
    for (int k = 0; k < 2; ++k) {
      const auto dir = root / (e.name + std::to_string(k));
      fs::remove_all(dir);
      const std::string out_dir = dir.string();
      const char* argv[] = {"spectral-kit", "run", e.name.c_str(), "--seed", "13013", "--out", out_dir.c_str()};
      std::ostringstream so, se;
      if (cli::main_entry(7, argv, reg, so, se) != 0) ok = false;
      std::ifstream in(dir / "manifest.json", std::ios::binary);
      manifests[k].assign(std::istreambuf_iterator<char>(in), {});
    }
    if (ok && !manifests[0].empty() && manifests[0] == manifests[1]) {
      ++identical;
    } else {
      mismatched += " " + e.name;
    }
  }
  fs::remove_all(root);
  o.check(identical == reg.list().size(),
          std::to_string(identical) + "/" + std::to_string(reg.list().size()) + " experiments byte-identical" + mismatched);
  const double elapsed = seconds_since(start);
  o.check(elapsed <= 300.0, "acceptance wall time " + sci(elapsed) + " s");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  app.add_option("--known-failures", known, "Criteria expected to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const auto start = Clock::now();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"derivative benchmark", derivative_benchmark},
      {"spectral accuracy", spectral_accuracy},
      {"boundary value problem", bvp_methods},
      {"RK4 convergence", rk4_convergence},
      {"aliasing identity", aliasing},
      {"dealiased product", dealiasing},
      {"Chebyshev suite", chebyshev},
      {"Lebesgue constants", lebesgue},
      {"exact soil-heat solution", soil_heat},
      {"Feynman-Kac", feynman_kac},
      {"Trefftz", trefftz_solver},
      {"coupled heat-moisture", heat_moisture},
      {"determinism and runtime", [start] { return determinism(start); }},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const int id = static_cast<int>(i + 1);
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << criteria[i].first << ": " << o.detail << std::endl;
  }
  const std::set<int> expected(known.begin(), known.end());
  std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass";
  if (!expected.empty()) std::cout << " (known failures:" << [&] {
    std::string s;
    for (int k : expected) s += " " + std::to_string(k);
    return s;
  }() << ")";
  std::cout << std::endl;
  return failed == expected ? 0 : 1;
}
