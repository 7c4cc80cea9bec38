#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace spectral::timestep {

using State = Eigen::VectorXd;
using Rhs = std::function<State(double t, const State& u)>;

enum class Family { forward_euler, backward_euler, ab2, ab3, am1_trapezoid, am2, rk2, rk4 };

/// A time-marching scheme. `alpha` is only read by the two-stage
/// Runge-Kutta family (1/2 midpoint, 1 Heun, 2/3 Ralston).
struct SchemeSpec {
  Family family = Family::rk4;
  double alpha = 0.5;

  static SchemeSpec forward_euler() { return {Family::forward_euler}; }
  static SchemeSpec backward_euler() { return {Family::backward_euler}; }
  static SchemeSpec ab2() { return {Family::ab2}; }
  static SchemeSpec ab3() { return {Family::ab3}; }
  static SchemeSpec trapezoid() { return {Family::am1_trapezoid}; }
  static SchemeSpec am2() { return {Family::am2}; }
  static SchemeSpec rk2(double alpha) { return {Family::rk2, alpha}; }
  static SchemeSpec midpoint() { return rk2(0.5); }
  static SchemeSpec heun() { return rk2(1.0); }
  static SchemeSpec ralston() { return rk2(2.0 / 3.0); }
  static SchemeSpec rk4() { return {Family::rk4}; }

  /// Accepts forward_euler, backward_euler, ab2, ab3, am1 / trapezoid, am2,
  /// rk2 (alpha 1/2), midpoint, heun, ralston, rk4.
  static SchemeSpec parse(std::string_view name);

  [[nodiscard]] int order() const noexcept;
  [[nodiscard]] bool implicit() const noexcept;
  /// Number of past right-hand-side values a step consumes.
  [[nodiscard]] std::size_t history_required() const noexcept;
  [[nodiscard]] std::string name() const;
};

struct IvpProblem {
  Rhs rhs;
  State u0;
  double t0 = 0.0;
  double t_end = 1.0;
};

/// Right-hand sides at earlier steps, most recent first:
/// past_rhs[0] = f(t_{n-1}, u_{n-1}), past_rhs[1] = f(t_{n-2}, u_{n-2}).
struct StepHistory {
  std::vector<State> past_rhs;
};

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
  double fd_relative_step = 1e-7;
};

/// One step u_n -> u_{n+1} of the given scheme.
///
/// Throws PreconditionError if dt <= 0 or the history is too short, and
/// ConvergenceError if an implicit inner solve fails.
[[nodiscard]] State step(const SchemeSpec& scheme, const Rhs& rhs, double t, const State& u, double dt,
                         const StepHistory& history = {}, const NewtonOptions& newton = {});

struct IntegrateOptions {
  bool record_trajectory = false;
  double blowup_threshold = 1e12;
  NewtonOptions newton;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;  // empty unless recorded
  State final_state;
  double final_time = 0.0;
};

/// n_steps uniform steps from t0 to t_end. Multistep schemes take their first
/// one or two steps with RK4. Aborts with BlowUpError when any component
/// exceeds the blow-up threshold or becomes non-finite.
[[nodiscard]] Trajectory integrate(const SchemeSpec& scheme, const IvpProblem& problem, std::size_t n_steps,
                                   const IntegrateOptions& options = {});

struct ConvergencePoint {
  std::size_t steps;
  double dt;
  double error;
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> points;
  double slope = 0.0;            // d log(error) / d log(dt) over the fitted points
  std::size_t fitted_points = 0; // leading points above the rounding floor
};

/// Max-norm error of the final state for each step count, plus the fitted
/// log-log slope over the leading points whose error exceeds
/// 100 eps max(1, |exact|).
[[nodiscard]] ConvergenceStudy convergence_study(const SchemeSpec& scheme, const IvpProblem& problem,
                                                 const State& exact_final, std::span<const std::size_t> step_list);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(std::span<const double> x, std::span<const double> y);

/// The step counts of the RK4 logistic study, 100 .. 6000.
[[nodiscard]] std::vector<std::size_t> logistic_step_list();

/// u' = u (1 - u), u(0) = 2 on [0, t_end]; exact u = 2 / (2 - exp(-t)).
[[nodiscard]] IvpProblem logistic_problem(double t_end = 2.0);
[[nodiscard]] double logistic_exact(double t);

/// CSV `N,dt,error`.
void write_convergence(std::ostream& out, const ConvergenceStudy& study);

}  // namespace spectral::timestep
