#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace spectral::montecarlo {

/// M Brownian paths with N steps on [0, T]. Row m of dW holds the increments
/// of path m; row m of W their running sums, so W(:, N-1) = W(T).
struct PathBatch {
  std::size_t m = 0;
  std::size_t n = 0;
  double t = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd dW;
  Eigen::MatrixXd W;
};

/// Increments sqrt(dt) Z with Z drawn from random::NormalStream(seed, path, 0).
[[nodiscard]] PathBatch brownian_batch(std::size_t m, std::size_t n, double t, std::uint64_t seed);

using ScalarFn = std::function<double(double)>;

/// dX = alpha(X) dt + sigma(X) dW, X(0) = x0, with potential V and initial
/// datum u0. Empty alpha means 0, empty sigma means 1, empty V means 0.
struct SdeProblem {
  ScalarFn alpha;
  ScalarFn sigma;
  ScalarFn potential;
  ScalarFn u0;
  double x0 = 0.0;
};

struct PathOptions {
  bool trapezoid_potential = false;  // left-endpoint rule otherwise
  double box = 1e6;                  // |X| above this aborts the run
};

struct EmResult {
  std::vector<double> terminal;            // X_T per path
  std::vector<double> potential_integral;  // int_0^T V(X_s) ds per path
};

/// Euler-Maruyama over the increments of an existing batch. Non-finite
/// states and paths leaving the box raise NumericalError naming the path;
/// V < 0 raises DomainError.
[[nodiscard]] EmResult euler_maruyama(const SdeProblem& problem, const PathBatch& batch,
                                      const PathOptions& options = {});

struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(M)
  std::size_t paths = 0;
};

/// Monte-Carlo mean of exp(-int_0^t V(X_s) ds) u0(X_t) over M paths of N steps.
[[nodiscard]] Estimate feynman_kac(const SdeProblem& problem, double t, std::size_t m, std::size_t n,
                                   std::uint64_t seed, const PathOptions& options = {});

using PointFn = std::function<double(std::span<const double>)>;
/// Component i of a diagonal drift or volatility evaluated at x.
using ComponentFn = std::function<double(std::span<const double> x, std::size_t i)>;

/// d-dimensional problem with independent Brownian coordinates; coordinate i
/// of path m draws from random::NormalStream(seed, m, i).
struct SdeProblemNd {
  std::size_t d = 1;
  ComponentFn alpha;
  ComponentFn sigma;
  PointFn potential;
  PointFn u0;
  std::vector<double> x0;
};

[[nodiscard]] Estimate feynman_kac_nd(const SdeProblemNd& problem, double t, std::size_t m, std::size_t n,
                                      std::uint64_t seed, const PathOptions& options = {});

inline constexpr double gas_constant = 8.3144598;         // J / (K mol)
inline constexpr double avogadro = 6.022140857e23;        // 1 / mol

/// D = R T / (f Na). PreconditionError unless R, f, Na > 0 and T >= 0.
[[nodiscard]] double einstein_diffusivity(double r, double t_abs, double f, double na);

/// Sum in a fixed pairwise order, independent of any thread schedule.
[[nodiscard]] double pairwise_sum(std::span<const double> v) noexcept;

/// Threads used for path loops: hardware concurrency, capped by the
/// SPECTRAL_KIT_THREADS environment variable when set.
[[nodiscard]] unsigned worker_threads();

struct ProbeRow {
  double x;
  Estimate value;
};

/// CSV `probe_x,estimate,std_error,M`.
void write_probes(std::ostream& out, std::span<const ProbeRow> rows);

}  // namespace spectral::montecarlo
