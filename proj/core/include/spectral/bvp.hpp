#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "spectral/orthopoly.hpp"

namespace spectral::bvp {

// Model problem: u'' + u' - 2u + 2 = 0 on [-1, 1], u(-1) = u(1) = 0.

enum class Method { tau, galerkin, collocation };

[[nodiscard]] std::string_view method_name(Method m) noexcept;
/// "tau", "galerkin" or "collocation"; PreconditionError otherwise.
[[nodiscard]] Method parse_method(std::string_view name);

struct BvpSolution {
  Method method = Method::tau;
  orthopoly::ChebSeries coeffs{{0.0}};
  double residual_norm = 0.0;                 // sup |R(x)| on 401 points
  std::pair<double, double> bc_residual{};    // (u(-1), u(1))
  double condition = 0.0;                     // 2-norm condition of the solved system
};

/// Degree-N Chebyshev approximation by the chosen weighted-residual method.
///
/// tau: R orthogonal to T_0..T_{N-2} plus two boundary rows.
/// galerkin: u = sum b_k (T_{k+2} - T_{k mod 2}), R orthogonal to every basis
/// function. collocation: R = 0 at cos(pi k/N), k = 1..N-1, plus boundary rows.
/// Weighted inner products use N + 8 Gauss-Chebyshev points.
///
/// Throws PreconditionError for N < 2 and SingularSystemError (with the
/// condition estimate) when the system is numerically singular.
[[nodiscard]] BvpSolution solve_bvp(Method method, std::size_t n);

/// Residual series R = u'' + u' - 2u + 2 of a trial function.
[[nodiscard]] orthopoly::ChebSeries residual(const orthopoly::ChebSeries& u);

/// Recombined Galerkin basis function T_{k+2} - T_{k mod 2} as a series.
[[nodiscard]] orthopoly::ChebSeries galerkin_basis(std::size_t k);

/// u(x) = 1 - (sinh 2 / sinh 3) e^x - (sinh 1 / sinh 3) e^{-2x}. DomainError
/// for |x| > 1.
[[nodiscard]] double exact_bvp_solution(double x);

/// CSV `x,u_exact,u_tau,u_galerkin,u_collocation` on `points` equispaced x.
void write_comparison(std::ostream& out, std::size_t n, std::size_t points = 401);

}  // namespace spectral::bvp
