#include "spectral/timestep.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "spectral/csv.hpp"
#include "spectral/error.hpp"

namespace spectral::timestep {

SchemeSpec SchemeSpec::parse(std::string_view name) {
  if (name == "forward_euler" || name == "euler") return forward_euler();
  if (name == "backward_euler") return backward_euler();
  if (name == "ab2") return ab2();
  if (name == "ab3") return ab3();
  if (name == "am1" || name == "am1_trapezoid" || name == "trapezoid") return trapezoid();
  if (name == "am2") return am2();
  if (name == "rk2" || name == "midpoint") return midpoint();
  if (name == "heun") return heun();
  if (name == "ralston") return ralston();
  if (name == "rk4") return rk4();
  throw PreconditionError("unknown time-stepping scheme '" + std::string(name) + "'");
}

int SchemeSpec::order() const noexcept {
  switch (family) {
    case Family::forward_euler:
    case Family::backward_euler:
      return 1;
    case Family::ab2:
    case Family::am1_trapezoid:
    case Family::rk2:
      return 2;
    case Family::ab3:
    case Family::am2:
      return 3;
    case Family::rk4:
      return 4;
  }
  return 0;
}

bool SchemeSpec::implicit() const noexcept {
  return family == Family::backward_euler || family == Family::am1_trapezoid || family == Family::am2;
}

std::size_t SchemeSpec::history_required() const noexcept {
  switch (family) {
    case Family::ab2:
    case Family::am2:
      return 1;
    case Family::ab3:
      return 2;
    default:
      return 0;
  }
}

std::string SchemeSpec::name() const {
  switch (family) {
    case Family::forward_euler: return "forward_euler";
    case Family::backward_euler: return "backward_euler";
    case Family::ab2: return "ab2";
    case Family::ab3: return "ab3";
    case Family::am1_trapezoid: return "am1_trapezoid";
    case Family::am2: return "am2";
    case Family::rk2: return "rk2(alpha=" + csv::format(alpha) + ")";
    case Family::rk4: return "rk4";
  }
  return "unknown";
}

namespace {

// Solves v = c + beta dt f(t_new, v) by damped Newton with a finite-difference
// Jacobian, starting from `guess`.
State implicit_solve(const Rhs& rhs, double t_new, double beta_dt, const State& c, State guess,
                     const NewtonOptions& opt) {
  const auto n = guess.size();
  auto residual = [&](const State& v) -> State { return v - beta_dt * rhs(t_new, v) - c; };
  auto scale = [](const State& v) { return std::max(1.0, v.lpNorm<Eigen::Infinity>()); };

  State v = std::move(guess);
  State g = residual(v);
  double gnorm = g.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    if (!std::isfinite(gnorm)) break;
    if (gnorm <= opt.tolerance * scale(v)) return v;

    Eigen::MatrixXd jac(n, n);
    const State f0 = rhs(t_new, v);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = opt.fd_relative_step * std::max(1.0, std::abs(v[j]));
      State vp = v;
      vp[j] += h;
      jac.col(j) = (rhs(t_new, vp) - f0) / h;
    }
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - beta_dt * jac;
    const State delta = system.partialPivLu().solve(-g);

    double lambda = 1.0;
    State trial = v + delta;
    State gt = residual(trial);
    double tn = gt.lpNorm<Eigen::Infinity>();
    for (int k = 0; k < 10 && !(tn < gnorm); ++k) {
      lambda *= 0.5;
      trial = v + lambda * delta;
      gt = residual(trial);
      tn = gt.lpNorm<Eigen::Infinity>();
    }
    if (!(tn < gnorm)) {
      // No decrease along the Newton direction; accept if already at round-off.
      if (gnorm <= 1e3 * std::numeric_limits<double>::epsilon() * scale(v)) return v;
      break;
    }
    v = std::move(trial);
    g = std::move(gt);
    gnorm = tn;
  }
  if (std::isfinite(gnorm) && gnorm <= opt.tolerance * scale(v)) return v;
  throw ConvergenceError("implicit step: Newton iteration did not converge (residual " +
                         std::to_string(gnorm) + ")");
}

void require_history(const SchemeSpec& scheme, const StepHistory& history, Eigen::Index n) {
  if (history.past_rhs.size() < scheme.history_required()) {
    throw PreconditionError("step: scheme " + scheme.name() + " needs " +
                            std::to_string(scheme.history_required()) + " past right-hand sides");
  }
  for (std::size_t i = 0; i < scheme.history_required(); ++i) {
    if (history.past_rhs[i].size() != n) throw PreconditionError("step: history state size mismatch");
  }
}

}  // namespace

State step(const SchemeSpec& scheme, const Rhs& rhs, double t, const State& u, double dt,
           const StepHistory& history, const NewtonOptions& newton) {
  if (!(dt > 0.0)) throw PreconditionError("step: dt must be positive");
  require_history(scheme, history, u.size());

  switch (scheme.family) {
    case Family::forward_euler:
      return u + dt * rhs(t, u);

    case Family::backward_euler: {
      State guess = u + dt * rhs(t, u);
      return implicit_solve(rhs, t + dt, dt, u, std::move(guess), newton);
    }

    case Family::ab2: {
      const State fn = rhs(t, u);
      return u + dt * (1.5 * fn - 0.5 * history.past_rhs[0]);
    }

    case Family::ab3: {
      const State fn = rhs(t, u);
      return u + dt * (23.0 / 12.0 * fn - 4.0 / 3.0 * history.past_rhs[0] +
                       5.0 / 12.0 * history.past_rhs[1]);
    }

    case Family::am1_trapezoid: {
      const State fn = rhs(t, u);
      const State c = u + 0.5 * dt * fn;
      return implicit_solve(rhs, t + dt, 0.5 * dt, c, u + dt * fn, newton);
    }

    case Family::am2: {
      const State fn = rhs(t, u);
      const State c = u + dt * (2.0 / 3.0 * fn - 1.0 / 12.0 * history.past_rhs[0]);
      return implicit_solve(rhs, t + dt, 5.0 / 12.0 * dt, c, u + dt * fn, newton);
    }

    case Family::rk2: {
      const double a = scheme.alpha;
      if (a == 0.0) throw PreconditionError("step: rk2 requires alpha != 0");
      const State k1 = dt * rhs(t, u);
      const State k2 = dt * rhs(t + a * dt, u + a * k1);
      return u + (1.0 - 1.0 / (2.0 * a)) * k1 + 1.0 / (2.0 * a) * k2;
    }

    case Family::rk4: {
      const State k1 = dt * rhs(t, u);
      const State k2 = dt * rhs(t + 0.5 * dt, u + 0.5 * k1);
      const State k3 = dt * rhs(t + 0.5 * dt, u + 0.5 * k2);
      const State k4 = dt * rhs(t + dt, u + k3);
      return u + (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    }
  }
  throw PreconditionError("step: unknown scheme family");
}

Trajectory integrate(const SchemeSpec& scheme, const IvpProblem& problem, std::size_t n_steps,
                     const IntegrateOptions& options) {
  if (n_steps < 1) throw PreconditionError("integrate: n_steps >= 1 required");
  if (!(problem.t_end > problem.t0)) throw PreconditionError("integrate: t_end must exceed t0");

  const double dt = (problem.t_end - problem.t0) / static_cast<double>(n_steps);
  const std::size_t needed = scheme.history_required();
  const auto bootstrap = SchemeSpec::rk4();

  Trajectory out;
  State u = problem.u0;
  StepHistory history;
  if (options.record_trajectory) {
    out.times.push_back(problem.t0);
    out.states.push_back(u);
  }

  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t = problem.t0 + static_cast<double>(n) * dt;
    State next;
    if (needed == 0) {
      next = step(scheme, problem.rhs, t, u, dt, {}, options.newton);
    } else if (history.past_rhs.size() < needed) {
      next = step(bootstrap, problem.rhs, t, u, dt);
    } else {
      next = step(scheme, problem.rhs, t, u, dt, history, options.newton);
    }
    if (needed > 0) {
      history.past_rhs.insert(history.past_rhs.begin(), problem.rhs(t, u));
      if (history.past_rhs.size() > needed) history.past_rhs.pop_back();
    }

    const double t_next = problem.t0 + static_cast<double>(n + 1) * dt;
    const double peak = next.size() > 0 ? next.lpNorm<Eigen::Infinity>() : 0.0;
    if (!next.allFinite()) {
      throw BlowUpError("integrate: non-finite state at step " + std::to_string(n + 1) + " (t = " +
                            std::to_string(t_next) + ")",
                        t_next, n + 1);
    }
    if (peak > options.blowup_threshold) {
      throw BlowUpError("integrate: |u| = " + std::to_string(peak) + " exceeds blow-up threshold at step " +
                            std::to_string(n + 1) + " (t = " + std::to_string(t_next) + ")",
                        t_next, n + 1);
    }
    u = std::move(next);
    if (options.record_trajectory) {
      out.times.push_back(t_next);
      out.states.push_back(u);
    }
  }
  out.final_state = std::move(u);
  out.final_time = problem.t_end;
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("loglog_slope: need >= 2 paired points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvergenceStudy convergence_study(const SchemeSpec& scheme, const IvpProblem& problem,
                                   const State& exact_final, std::span<const std::size_t> step_list) {
  ConvergenceStudy study;
  for (auto n : step_list) {
    const auto traj = integrate(scheme, problem, n);
    const double err = (traj.final_state - exact_final).lpNorm<Eigen::Infinity>();
    study.points.push_back({n, (problem.t_end - problem.t0) / static_cast<double>(n), err});
  }
  const double floor =
      100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, exact_final.lpNorm<Eigen::Infinity>());
  std::vector<double> dts;
  std::vector<double> errs;
  for (const auto& p : study.points) {
    if (!(p.error > floor)) break;
    dts.push_back(p.dt);
    errs.push_back(p.error);
  }
  study.fitted_points = dts.size();
  if (dts.size() >= 2) study.slope = loglog_slope(dts, errs);
  return study;
}

std::vector<std::size_t> logistic_step_list() {
  return {100, 150, 200, 250, 350, 500, 750, 900, 1000, 1250,
          1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000, 5500, 6000};
}

IvpProblem logistic_problem(double t_end) {
  IvpProblem p;
  p.rhs = [](double, const State& u) -> State { return u.array() * (1.0 - u.array()); };
  p.u0 = State::Constant(1, 2.0);
  p.t0 = 0.0;
  p.t_end = t_end;
  return p;
}

double logistic_exact(double t) { return 2.0 / (2.0 - std::exp(-t)); }

void write_convergence(std::ostream& out, const ConvergenceStudy& study) {
  csv::Writer w(out);
  w.header({"N", "dt", "error"});
  for (const auto& p : study.points) w.row({static_cast<double>(p.steps), p.dt, p.error});
}

}  // namespace spectral::timestep
