#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace spectral::interp {

/// Barycentric weights w_i = 1 / prod_{j != i} (x_i - x_j), rescaled so that
/// max |w_i| = 1 (the scale cancels in the second barycentric form).
[[nodiscard]] std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Polynomial interpolant of degree n = nodes.size() - 1, evaluated with the
/// second (true) barycentric formula.
class Interpolant {
 public:
  /// Nodes must be pairwise distinct; they are stored sorted ascending.
  Interpolant(std::vector<double> nodes, std::vector<double> fvals);

  [[nodiscard]] std::size_t degree() const noexcept { return nodes_.size() - 1; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return fvals_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }

  [[nodiscard]] double operator()(double x) const noexcept;

  /// sum_i |l_i(x)|
  [[nodiscard]] double lebesgue_function(double x) const noexcept;

 private:
  // Index of a node within 1e-14 of x, or npos.
  [[nodiscard]] std::size_t node_hit(double x) const noexcept;

  std::vector<double> nodes_;
  std::vector<double> fvals_;
  std::vector<double> weights_;
};

[[nodiscard]] Interpolant interpolate(std::vector<double> nodes, std::vector<double> fvals);
[[nodiscard]] Interpolant interpolate(std::vector<double> nodes, const std::function<double(double)>& f);

/// Lebesgue constant max_x sum_i |l_i(x)| over the hull of the nodes.
///
/// Samples density * n^2 uniform points plus every midpoint between nodes,
/// doubling the density until two consecutive estimates agree to a relative
/// 1e-3.
[[nodiscard]] double lebesgue_constant(std::span<const double> nodes, double density = 50.0);

/// (2/pi) (ln N + gamma + ln(8/pi)), the large-N behaviour of the Chebyshev
/// Lebesgue constant.
[[nodiscard]] double chebyshev_lebesgue_asymptotic(std::size_t n);

/// max over `samples` uniform points in [a, b] of |f(x) - p(x)|.
[[nodiscard]] double sup_error(const Interpolant& p, const std::function<double(double)>& f,
                               std::size_t samples = 2001, double a = -1.0, double b = 1.0);

/// CSV sweep `x,f,p,lebesgue` over `samples` uniform points on [-1, 1].
void write_sweep(std::ostream& out, const Interpolant& p, const std::function<double(double)>& f,
                 std::size_t samples);

}  // namespace spectral::interp
