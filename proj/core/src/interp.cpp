#include "spectral/interp.hpp"

#include <algorithm>
#include <iterator>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

#include "spectral/csv.hpp"
#include "spectral/error.hpp"

namespace spectral::interp {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

}  // namespace

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) w[i] /= (nodes[i] - nodes[j]);
    }
  }
  double peak = 0.0;
  for (double wi : w) peak = std::max(peak, std::abs(wi));
  if (peak > 0.0 && std::isfinite(peak)) {
    for (double& wi : w) wi /= peak;
  }
  return w;
}

Interpolant::Interpolant(std::vector<double> nodes, std::vector<double> fvals) {
  if (nodes.empty()) throw PreconditionError("Interpolant: at least one node required");
  if (nodes.size() != fvals.size()) throw PreconditionError("Interpolant: nodes/values size mismatch");
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return nodes[a] < nodes[b]; });
  nodes_.reserve(nodes.size());
  fvals_.reserve(nodes.size());
  for (auto i : order) {
    if (!nodes_.empty() && !(nodes[i] > nodes_.back())) {
      throw PreconditionError("Interpolant: duplicate nodes");
    }
    nodes_.push_back(nodes[i]);
    fvals_.push_back(fvals[i]);
  }
  weights_ = barycentric_weights(nodes_);
}

std::size_t Interpolant::node_hit(double x) const noexcept {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  const auto check = [&](auto pos) -> std::size_t {
    if (pos != nodes_.end() && std::abs(*pos - x) <= 1e-14) {
      return static_cast<std::size_t>(pos - nodes_.begin());
    }
    return npos;
  };
  if (auto hit = check(it); hit != npos) return hit;
  if (it != nodes_.begin()) return check(std::prev(it));
  return npos;
}

double Interpolant::operator()(double x) const noexcept {
  if (const auto hit = node_hit(x); hit != npos) return fvals_[hit];
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double t = weights_[i] / (x - nodes_[i]);
    num += t * fvals_[i];
    den += t;
  }
  return num / den;
}

double Interpolant::lebesgue_function(double x) const noexcept {
  if (node_hit(x) != npos) return 1.0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double t = weights_[i] / (x - nodes_[i]);
    num += std::abs(t);
    den += t;
  }
  return num / std::abs(den);
}

Interpolant interpolate(std::vector<double> nodes, std::vector<double> fvals) {
  return Interpolant(std::move(nodes), std::move(fvals));
}

Interpolant interpolate(std::vector<double> nodes, const std::function<double(double)>& f) {
  std::vector<double> fv(nodes.size());
  std::transform(nodes.begin(), nodes.end(), fv.begin(), f);
  return Interpolant(std::move(nodes), std::move(fv));
}

double lebesgue_constant(std::span<const double> nodes, double density) {
  if (nodes.size() < 2) throw PreconditionError("lebesgue_constant: at least two nodes required");
  const Interpolant p(std::vector<double>(nodes.begin(), nodes.end()),
                      std::vector<double>(nodes.size(), 0.0));
  const auto x = p.nodes();
  const double n = static_cast<double>(nodes.size() - 1);

  const auto estimate = [&](double dens) {
    const auto count = static_cast<std::size_t>(std::ceil(dens * n * n)) + 2;
    double best = 1.0;
    const double a = x.front();
    const double b = x.back();
    for (std::size_t i = 0; i < count; ++i) {
      const double xi = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
      best = std::max(best, p.lebesgue_function(xi));
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      best = std::max(best, p.lebesgue_function(0.5 * (x[i] + x[i + 1])));
    }
    return best;
  };

  double prev = estimate(density);
  for (int iter = 0; iter < 8; ++iter) {
    density *= 2.0;
    const double cur = estimate(density);
    if (std::abs(cur - prev) <= 1e-3 * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

double chebyshev_lebesgue_asymptotic(std::size_t n) {
  return 2.0 / std::numbers::pi *
         (std::log(static_cast<double>(n)) + std::numbers::egamma + std::log(8.0 / std::numbers::pi));
}

double sup_error(const Interpolant& p, const std::function<double(double)>& f, std::size_t samples,
                 double a, double b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
    worst = std::max(worst, std::abs(f(x) - p(x)));
  }
  return worst;
}

void write_sweep(std::ostream& out, const Interpolant& p, const std::function<double(double)>& f,
                 std::size_t samples) {
  csv::Writer w(out);
  w.header({"x", "f", "p", "lebesgue"});
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(samples - 1);
    w.row({x, f(x), p(x), p.lebesgue_function(x)});
  }
}

}  // namespace spectral::interp
