#include "spectral/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spectral/error.hpp"

namespace spectral::orthopoly {

namespace {

constexpr double kPi = std::numbers::pi;

double delta(std::size_t k) { return k == 0 ? 2.0 : 1.0; }

}  // namespace

DensePoly::DensePoly(std::vector<double> coeffs_high_first) : coeffs_(std::move(coeffs_high_first)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double DensePoly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (double c : coeffs_) acc = acc * x + c;
  return acc;
}

ChebSeries::ChebSeries(std::vector<double> v) : v_(std::move(v)) {
  if (v_.empty()) v_.push_back(0.0);
}

ChebSeries ChebSeries::unit(std::size_t k, std::size_t n) {
  if (k > n) throw PreconditionError("ChebSeries::unit: index exceeds degree");
  std::vector<double> v(n + 1, 0.0);
  v[k] = 1.0;
  return ChebSeries(std::move(v));
}

double ChebSeries::operator()(double x) const noexcept {
  // Clenshaw: b_k = v_k + 2x b_{k+1} - b_{k+2}; f = v_0 + x b_1 - b_2.
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = v_.size() - 1; k >= 1; --k) {
    const double b0 = v_[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return v_[0] + x * b1 - b2;
}

DensePoly ChebSeries::to_dense() const {
  const auto polys = cheb_polys(degree());
  std::vector<double> out(v_.size(), 0.0);
  for (std::size_t k = 0; k < v_.size(); ++k) {
    const auto c = polys[k].coeffs();
    // T_k has k + 1 coefficients; align its constant term with out.back().
    const std::size_t offset = out.size() - c.size();
    for (std::size_t i = 0; i < c.size(); ++i) out[offset + i] += v_[k] * c[i];
  }
  return DensePoly(std::move(out));
}

std::vector<DensePoly> cheb_polys(std::size_t n) {
  // Coefficients are built highest-first: T_{j+1} = [2 T_j, 0] - [0, 0, T_{j-1}].
  std::vector<std::vector<double>> c;
  c.reserve(n + 1);
  c.push_back({1.0});
  if (n >= 1) c.push_back({1.0, 0.0});
  for (std::size_t j = 2; j <= n; ++j) {
    std::vector<double> next(j + 1, 0.0);
    for (std::size_t i = 0; i < j; ++i) next[i] = 2.0 * c[j - 1][i];
    for (std::size_t i = 0; i < j - 1; ++i) next[i + 2] -= c[j - 2][i];
    c.push_back(std::move(next));
  }
  std::vector<DensePoly> out;
  out.reserve(c.size());
  for (auto& coeffs : c) out.emplace_back(std::move(coeffs));
  return out;
}

double cheb_eval(std::size_t k, double x) {
  if (!(std::abs(x) <= 1.0 + 1e-14)) {
    throw DomainError("cheb_eval: |x| > 1 (x = " + std::to_string(x) + ")");
  }
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (std::size_t j = 1; j < k; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> cheb_nodes(const NodeFamily& family) {
  std::vector<double> x;
  const std::size_t n = family.n;
  switch (family.kind) {
    case NodeKind::chebyshev_extrema: {
      if (n < 1) throw PreconditionError("cheb_nodes: N >= 1 required");
      // -cos(pi k / N) written as a sine so the set is exactly symmetric.
      x.resize(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        const double m = static_cast<double>(2 * static_cast<long long>(k) - static_cast<long long>(n));
        x[k] = std::sin(kPi * m / (2.0 * static_cast<double>(n)));
      }
      break;
    }
    case NodeKind::chebyshev_zeros: {
      if (n < 1) throw PreconditionError("cheb_nodes: n >= 1 required");
      x.resize(n);
      for (std::size_t k = 1; k <= n; ++k) {
        const double m = static_cast<double>(2 * static_cast<long long>(k) - 1 - static_cast<long long>(n));
        x[k - 1] = std::sin(kPi * m / (2.0 * static_cast<double>(n)));
      }
      break;
    }
    case NodeKind::uniform: {
      if (n < 1) throw PreconditionError("cheb_nodes: N >= 1 required");
      x.resize(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        x[k] = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n);
      }
      break;
    }
    case NodeKind::legendre_like_custom: {
      x = family.custom;
      if (x.size() < 2) throw PreconditionError("cheb_nodes: custom family needs >= 2 nodes");
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < -1.0 || x[i] > 1.0) throw PreconditionError("cheb_nodes: custom node outside [-1, 1]");
        if (i > 0 && !(x[i] > x[i - 1])) {
          throw PreconditionError("cheb_nodes: custom nodes must be strictly increasing");
        }
      }
      break;
    }
  }
  return x;
}

GaussChebyshevRule gauss_chebyshev(std::size_t points) {
  if (points == 0) throw PreconditionError("gauss_chebyshev: at least one point required");
  GaussChebyshevRule rule;
  rule.nodes.resize(points);
  const double q = static_cast<double>(points);
  for (std::size_t j = 1; j <= points; ++j) {
    rule.nodes[j - 1] = std::cos(static_cast<double>(2 * j - 1) * kPi / (2.0 * q));
  }
  rule.weight = kPi / q;
  return rule;
}

double cheb_inner(std::size_t m, std::size_t n, std::size_t quad_points) {
  if (quad_points < m + n + 1) {
    throw PreconditionError("cheb_inner: quad_points must be >= m + n + 1");
  }
  // Using T_k(cos t) = cos(k t) at the Gauss nodes avoids recursion round-off.
  const double q = static_cast<double>(quad_points);
  double sum = 0.0;
  for (std::size_t j = 1; j <= quad_points; ++j) {
    const double t = static_cast<double>(2 * j - 1) * kPi / (2.0 * q);
    sum += std::cos(static_cast<double>(m) * t) * std::cos(static_cast<double>(n) * t);
  }
  return sum * kPi / q;
}

ChebSeries cheb_diff(const ChebSeries& series) {
  const auto v = series.coeffs();
  const std::size_t len = v.size();
  std::vector<double> d(len, 0.0);
  for (std::size_t k = 0; k + 1 < len; ++k) {
    double s = 0.0;
    for (std::size_t j = k + 1; j < len; j += 2) s += static_cast<double>(j) * v[j];
    d[k] = 2.0 / delta(k) * s;
  }
  return ChebSeries(std::move(d));
}

ChebSeries cheb_diff(const ChebSeries& series, unsigned order) {
  std::vector<double> prev(series.coeffs().begin(), series.coeffs().end());
  const std::size_t len = prev.size();
  for (unsigned n = 0; n < order; ++n) {
    // cur[len] and cur[len - 1] (indices N + 1 and N) start at zero.
    std::vector<double> cur(len + 1, 0.0);
    for (std::size_t k = len - 1; k >= 1; --k) {
      cur[k - 1] = (cur[k + 1] + 2.0 * static_cast<double>(k) * prev[k]) / delta(k - 1);
    }
    cur.resize(len);
    prev = std::move(cur);
  }
  return ChebSeries(std::move(prev));
}

ChebSeries cheb_diff2(const ChebSeries& series) {
  const auto v = series.coeffs();
  const std::size_t len = v.size();
  std::vector<double> d(len, 0.0);
  for (std::size_t k = 0; k + 2 < len; ++k) {
    double s = 0.0;
    const double kk = static_cast<double>(k * k);
    for (std::size_t j = k + 2; j < len; j += 2) {
      const double jd = static_cast<double>(j);
      s += jd * (jd * jd - kk) * v[j];
    }
    d[k] = s / delta(k);
  }
  return ChebSeries(std::move(d));
}

std::array<ProductTerm, 2> cheb_product(std::size_t m, std::size_t n) {
  if (m > n) throw PreconditionError("cheb_product: requires n >= m");
  return {ProductTerm{n + m, 0.5}, ProductTerm{n - m, 0.5}};
}

double cheb_compose_check(std::size_t m, std::size_t n, std::size_t samples) {
  if (samples < 2) samples = 2;
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double inner = std::clamp(cheb_eval(n, x), -1.0, 1.0);
    const double lhs = cheb_eval(m, inner);
    const double rhs = cheb_eval(m * n, x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<double> hermite_polys(std::size_t n, double x) {
  std::vector<double> h(n + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = 2.0 * x;
  for (std::size_t k = 1; k < n; ++k) {
    h[k + 1] = 2.0 * x * h[k] - 2.0 * static_cast<double>(k) * h[k - 1];
  }
  return h;
}

Eigen::MatrixXd hermite_funcs(std::size_t n, std::span<const double> x) {
  if (n > 128) throw PreconditionError("hermite_funcs: n <= 128 required");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(x.size()));
  // log sqrt(2^k k!) accumulated term by term.
  std::vector<double> log_norm(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    log_norm[k] = log_norm[k - 1] + 0.5 * (std::log(2.0) + std::log(static_cast<double>(k)));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto h = hermite_polys(n, x[j]);
    const double gauss = -0.5 * x[j] * x[j];
    for (std::size_t k = 0; k <= n; ++k) {
      double value = 0.0;
      if (h[k] != 0.0) {
        value = std::copysign(std::exp(std::log(std::abs(h[k])) + gauss - log_norm[k]), h[k]);
      }
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = value;
    }
  }
  return out;
}

}  // namespace spectral::orthopoly
