#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace spectral::orthopoly {

/// Polynomial in the monomial basis, coefficients highest degree first
/// (the ordering used by polyval-style evaluators).
class DensePoly {
 public:
  DensePoly() : coeffs_{0.0} {}
  explicit DensePoly(std::vector<double> coeffs_high_first);

  [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] double leading() const noexcept { return coeffs_.front(); }

  /// Horner evaluation.
  [[nodiscard]] double operator()(double x) const noexcept;

 private:
  std::vector<double> coeffs_;
};

/// Truncated Chebyshev expansion sum_k v_k T_k(x) on [-1, 1]; coefficients
/// stored lowest degree first.
class ChebSeries {
 public:
  ChebSeries() : v_{0.0} {}
  explicit ChebSeries(std::vector<double> v);

  /// Unit series e_k of length n + 1, i.e. the polynomial T_k.
  static ChebSeries unit(std::size_t k, std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return v_.size(); }
  [[nodiscard]] std::size_t degree() const noexcept { return v_.size() - 1; }
  [[nodiscard]] std::span<const double> coeffs() const noexcept { return v_; }
  [[nodiscard]] double operator[](std::size_t k) const noexcept { return v_[k]; }

  /// Clenshaw evaluation; valid for any real x (the series is a polynomial).
  [[nodiscard]] double operator()(double x) const noexcept;

  /// Monomial form, highest degree first.
  [[nodiscard]] DensePoly to_dense() const;

 private:
  std::vector<double> v_;
};

enum class NodeKind { chebyshev_extrema, chebyshev_zeros, uniform, legendre_like_custom };

/// A one-parameter family of interpolation nodes on [-1, 1].
///
/// For `chebyshev_extrema` and `uniform` the family has n + 1 points; for
/// `chebyshev_zeros` it has n points (the zeros of T_n). The custom family
/// carries caller-supplied nodes verbatim (validated on use).
struct NodeFamily {
  NodeKind kind = NodeKind::chebyshev_extrema;
  std::size_t n = 1;
  std::vector<double> custom;

  static NodeFamily extrema(std::size_t n) { return {NodeKind::chebyshev_extrema, n, {}}; }
  static NodeFamily zeros(std::size_t n) { return {NodeKind::chebyshev_zeros, n, {}}; }
  static NodeFamily uniform(std::size_t n) { return {NodeKind::uniform, n, {}}; }
  static NodeFamily custom_nodes(std::vector<double> nodes) {
    const auto n = nodes.empty() ? 0 : nodes.size() - 1;
    return {NodeKind::legendre_like_custom, n, std::move(nodes)};
  }
};

/// T_0 .. T_n in monomial form, built by the three-term recursion.
[[nodiscard]] std::vector<DensePoly> cheb_polys(std::size_t n);

/// T_k(x) by the three-term recursion. Throws DomainError for |x| > 1 + 1e-14.
[[nodiscard]] double cheb_eval(std::size_t k, double x);

/// Nodes of a family, strictly increasing.
[[nodiscard]] std::vector<double> cheb_nodes(const NodeFamily& family);

/// Gauss-Chebyshev rule for the weight 1/sqrt(1 - x^2): `points` nodes
/// cos((2j - 1) pi / 2q) with equal weights pi / q. Exact to degree 2q - 1.
struct GaussChebyshevRule {
  std::vector<double> nodes;
  double weight = 0.0;
};
[[nodiscard]] GaussChebyshevRule gauss_chebyshev(std::size_t points);

/// <T_m, T_n> in the Chebyshev-weighted inner product, by Gauss-Chebyshev
/// quadrature. Requires quad_points >= m + n + 1.
[[nodiscard]] double cheb_inner(std::size_t m, std::size_t n, std::size_t quad_points);

/// First derivative in coefficient space:
///   v'_k = (2 / delta_k) sum_{j > k, j + k odd} j v_j,  delta_0 = 2, delta_k = 1.
/// The result has the same length as the input; its top coefficient is zero.
[[nodiscard]] ChebSeries cheb_diff(const ChebSeries& series);

/// Order-th derivative by the downward recurrence
///   delta_{k-1} v^{(n)}_{k-1} = v^{(n)}_{k+1} + 2k v^{(n-1)}_k,
/// started from v^{(n)}_N = 0 and v^{(n)}_{N+1} = 0, so the first computed
/// value is v^{(n)}_{N-1} = 2N v^{(n-1)}_N / delta_{N-1}.
[[nodiscard]] ChebSeries cheb_diff(const ChebSeries& series, unsigned order);

/// Closed-form second derivative:
///   v''_k = (1 / delta_k) sum_{j >= k + 2, j + k even} j (j^2 - k^2) v_j.
[[nodiscard]] ChebSeries cheb_diff2(const ChebSeries& series);

struct ProductTerm {
  std::size_t index;
  double weight;
};

/// T_m T_n = 1/2 (T_{n+m} + T_{n-m}). Requires n >= m.
[[nodiscard]] std::array<ProductTerm, 2> cheb_product(std::size_t m, std::size_t n);

/// Max over `samples` uniformly spaced points of |T_m(T_n(x)) - T_{mn}(x)|.
[[nodiscard]] double cheb_compose_check(std::size_t m, std::size_t n, std::size_t samples);

/// Physicists' Hermite polynomials H_0 .. H_n at one point.
[[nodiscard]] std::vector<double> hermite_polys(std::size_t n, double x);

/// Orthonormal Hermite functions H_k(x) exp(-x^2/2) / sqrt(2^k k!), k = 0..n.
/// Rows index k, columns index the sample points. Requires n <= 128.
[[nodiscard]] Eigen::MatrixXd hermite_funcs(std::size_t n, std::span<const double> x);

}  // namespace spectral::orthopoly
