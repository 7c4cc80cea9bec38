#include "spectral/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "spectral/csv.hpp"
#include "spectral/error.hpp"
#include "spectral/random.hpp"

namespace spectral::montecarlo {

namespace {

// Runs body(begin, end) over [0, count) in contiguous chunks. The first
// exception, in chunk order, is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t threads = std::min<std::size_t>(worker_threads(), std::max<std::size_t>(1, count / 256));
  if (threads <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    const std::size_t b = count * w / threads;
    const std::size_t e = count * (w + 1) / threads;
    pool.emplace_back([&, w, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Estimate summarize(const std::vector<double>& values) {
  Estimate est;
  est.paths = values.size();
  const double m = static_cast<double>(values.size());
  est.estimate = pairwise_sum(values) / m;
  if (values.size() > 1) {
    std::vector<double> dev(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - est.estimate) * (values[i] - est.estimate);
    est.std_error = std::sqrt(pairwise_sum(dev) / (m - 1.0) / m);
  }
  return est;
}

void check_common(double t, std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw PreconditionError("Monte-Carlo: M, N >= 1 required");
  if (!(t > 0.0) || !std::isfinite(t)) throw PreconditionError("Monte-Carlo: T must be positive");
}

double potential_checked(const PointFn& v, std::span<const double> x, std::size_t path) {
  if (!v) return 0.0;
  const double value = v(x);
  if (value < 0.0) {
    throw DomainError("Feynman-Kac: potential V < 0 on path " + std::to_string(path) +
                      " (the representation needs V >= 0)");
  }
  if (!std::isfinite(value)) throw NumericalError("Feynman-Kac: non-finite potential on path " + std::to_string(path));
  return value;
}

void check_state(std::span<const double> x, std::size_t path, std::size_t step, const PathOptions& options) {
  for (double xi : x) {
    if (!std::isfinite(xi)) {
      throw NumericalError("Euler-Maruyama: non-finite state on path " + std::to_string(path) + " at step " +
                           std::to_string(step));
    }
    if (std::abs(xi) > options.box) {
      throw NumericalError("Euler-Maruyama: path " + std::to_string(path) + " left the box |X| <= " +
                           std::to_string(options.box) + " at step " + std::to_string(step));
    }
  }
}

// One path of the d-dimensional Euler-Maruyama recursion. Returns the
// weight exp(-int V) u0(X_T); `draw(i, step)` supplies the Brownian
// increment of coordinate i.
template <class Draw>
double run_path(const SdeProblemNd& p, double dt, std::size_t n, std::size_t path, const PathOptions& options,
                Draw&& draw, std::vector<double>& x, std::vector<double>& next, double* integral_out = nullptr) {
  x.assign(p.x0.begin(), p.x0.end());
  double integral = 0.0;
  double v_prev = potential_checked(p.potential, x, path);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < p.d; ++i) {
      const double a = p.alpha ? p.alpha(x, i) : 0.0;
      const double b = p.sigma ? p.sigma(x, i) : 1.0;
      next[i] = x[i] + a * dt + b * draw(i, s);
    }
    x.swap(next);
    check_state(x, path, s + 1, options);
    const double v_next = potential_checked(p.potential, x, path);
    integral += options.trapezoid_potential ? 0.5 * (v_prev + v_next) * dt : v_prev * dt;
    v_prev = v_next;
  }
  if (integral_out) *integral_out = integral;
  const double u = p.u0 ? p.u0(x) : 0.0;
  if (!std::isfinite(u)) throw NumericalError("Feynman-Kac: u0 not finite on path " + std::to_string(path));
  return std::exp(-integral) * u;
}

SdeProblemNd lift(const SdeProblem& p) {
  SdeProblemNd q;
  q.d = 1;
  if (p.alpha) q.alpha = [f = p.alpha](std::span<const double> x, std::size_t) { return f(x[0]); };
  if (p.sigma) q.sigma = [f = p.sigma](std::span<const double> x, std::size_t) { return f(x[0]); };
  if (p.potential) q.potential = [f = p.potential](std::span<const double> x) { return f(x[0]); };
  if (p.u0) q.u0 = [f = p.u0](std::span<const double> x) { return f(x[0]); };
  q.x0 = {p.x0};
  return q;
}

}  // namespace

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECTRAL_KIT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

double pairwise_sum(std::span<const double> v) noexcept {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

PathBatch brownian_batch(std::size_t m, std::size_t n, double t, std::uint64_t seed) {
  check_common(t, m, n);
  PathBatch b;
  b.m = m;
  b.n = n;
  b.t = t;
  b.dt = t / static_cast<double>(n);
  b.seed = seed;
  b.dW.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  b.W.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  const double sq = std::sqrt(b.dt);
  parallel_for(m, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      random::NormalStream z(seed, p, 0);
      double w = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        const double dw = sq * z(s);
        w += dw;
        b.dW(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s)) = dw;
        b.W(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s)) = w;
      }
    }
  });
  return b;
}

EmResult euler_maruyama(const SdeProblem& problem, const PathBatch& batch, const PathOptions& options) {
  const auto p = lift(problem);
  EmResult r;
  r.terminal.resize(batch.m);
  r.potential_integral.resize(batch.m);
  parallel_for(batch.m, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> x(1);
    std::vector<double> next(1);
    for (std::size_t path = lo; path < hi; ++path) {
      auto draw = [&](std::size_t, std::size_t s) {
        return batch.dW(static_cast<Eigen::Index>(path), static_cast<Eigen::Index>(s));
      };
      double integral = 0.0;
      (void)run_path(p, batch.dt, batch.n, path, options, draw, x, next, &integral);
      r.terminal[path] = x[0];
      r.potential_integral[path] = integral;
    }
  });
  return r;
}

Estimate feynman_kac_nd(const SdeProblemNd& problem, double t, std::size_t m, std::size_t n, std::uint64_t seed,
                        const PathOptions& options) {
  check_common(t, m, n);
  if (problem.d < 1) throw PreconditionError("feynman_kac_nd: d >= 1 required");
  if (problem.x0.size() != problem.d) throw PreconditionError("feynman_kac_nd: x0 must have d components");
  if (!problem.u0) throw PreconditionError("feynman_kac_nd: initial datum u0 required");
  const double dt = t / static_cast<double>(n);
  const double sq = std::sqrt(dt);
  std::vector<double> values(m);
  parallel_for(m, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> x(problem.d);
    std::vector<double> next(problem.d);
    std::vector<random::NormalStream> streams;
    for (std::size_t path = lo; path < hi; ++path) {
      streams.clear();
      for (std::size_t i = 0; i < problem.d; ++i) streams.emplace_back(seed, path, static_cast<std::uint32_t>(i));
      auto draw = [&](std::size_t i, std::size_t s) { return sq * streams[i](s); };
      values[path] = run_path(problem, dt, n, path, options, draw, x, next);
    }
  });
  return summarize(values);
}

Estimate feynman_kac(const SdeProblem& problem, double t, std::size_t m, std::size_t n, std::uint64_t seed,
                     const PathOptions& options) {
  return feynman_kac_nd(lift(problem), t, m, n, seed, options);
}

double einstein_diffusivity(double r, double t_abs, double f, double na) {
  if (!(r > 0.0) || !(f > 0.0) || !(na > 0.0) || !(t_abs >= 0.0)) {
    throw PreconditionError("einstein_diffusivity: R, f, Na must be positive and T non-negative");
  }
  return r * t_abs / (f * na);
}

void write_probes(std::ostream& out, std::span<const ProbeRow> rows) {
  csv::Writer w(out);
  w.header({"probe_x", "estimate", "std_error", "M"});
  for (const auto& r : rows) w.row({r.x, r.value.estimate, r.value.std_error, static_cast<double>(r.value.paths)});
}

}  // namespace spectral::montecarlo
