#include "spectral/bvp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "spectral/csv.hpp"
#include "spectral/error.hpp"

namespace spectral::bvp {

using orthopoly::ChebSeries;

namespace {

constexpr double kPi = std::numbers::pi;

// Column j holds the Chebyshev coefficients of L T_j, L u = u'' + u' - 2u.
Eigen::MatrixXd operator_matrix(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n + 1);
  Eigen::MatrixXd op(dim, dim);
  for (std::size_t j = 0; j <= n; ++j) {
    const auto e = ChebSeries::unit(j, n);
    const auto d1 = orthopoly::cheb_diff(e);
    const auto d2 = orthopoly::cheb_diff2(e);
    for (std::size_t k = 0; k <= n; ++k) {
      op(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = d2[k] + d1[k] - 2.0 * e[k];
    }
  }
  return op;
}

// T_k(x_q) at the q Gauss-Chebyshev nodes, rows = nodes, cols = k.
Eigen::MatrixXd gauss_vandermonde(std::size_t q, std::size_t n) {
  Eigen::MatrixXd v(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(n + 1));
  for (std::size_t i = 1; i <= q; ++i) {
    const double t = static_cast<double>(2 * i - 1) * kPi / (2.0 * static_cast<double>(q));
    for (std::size_t k = 0; k <= n; ++k) {
      v(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(k)) = std::cos(static_cast<double>(k) * t);
    }
  }
  return v;
}

// Coefficient map b -> a for the recombined basis.
Eigen::MatrixXd galerkin_map(std::size_t n) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n - 1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    p(static_cast<Eigen::Index>(k + 2), static_cast<Eigen::Index>(k)) = 1.0;
    p(static_cast<Eigen::Index>(k % 2), static_cast<Eigen::Index>(k)) = -1.0;
  }
  return p;
}

Eigen::VectorXd solve_checked(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double& condition,
                              const char* label) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(smin > static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() * smax)) {
    throw SingularSystemError(std::string("solve_bvp(") + label + "): singular linear system, condition estimate " +
                                  std::to_string(condition),
                              condition);
  }
  return a.partialPivLu().solve(b);
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::tau: return "tau";
    case Method::galerkin: return "galerkin";
    case Method::collocation: return "collocation";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "tau") return Method::tau;
  if (name == "galerkin") return Method::galerkin;
  if (name == "collocation") return Method::collocation;
  throw PreconditionError("unknown BVP method '" + std::string(name) + "' (tau, galerkin, collocation)");
}

ChebSeries residual(const ChebSeries& u) {
  const auto d1 = orthopoly::cheb_diff(u);
  const auto d2 = orthopoly::cheb_diff2(u);
  std::vector<double> r(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) r[k] = d2[k] + d1[k] - 2.0 * u[k];
  r[0] += 2.0;
  return ChebSeries(std::move(r));
}

ChebSeries galerkin_basis(std::size_t k) {
  std::vector<double> v(k + 3, 0.0);
  v[k + 2] = 1.0;
  v[k % 2] = -1.0;
  return ChebSeries(std::move(v));
}

BvpSolution solve_bvp(Method method, std::size_t n) {
  if (n < 2) throw PreconditionError("solve_bvp: N >= 2 required (got " + std::to_string(n) + ")");
  const auto dim = static_cast<Eigen::Index>(n + 1);
  const Eigen::MatrixXd op = operator_matrix(n);
  const std::size_t q = n + 8;
  const Eigen::MatrixXd vq = gauss_vandermonde(q, n);
  const double w = kPi / static_cast<double>(q);

  BvpSolution sol;
  sol.method = method;
  Eigen::VectorXd a(dim);

  switch (method) {
    case Method::tau: {
      // <L a + 2, T_k>_w for k = 0..N-2, then the two boundary rows.
      Eigen::MatrixXd sys(dim, dim);
      Eigen::VectorXd rhs(dim);
      const Eigen::MatrixXd lq = vq * op;  // L T_j at the nodes
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto r = static_cast<Eigen::Index>(k);
        sys.row(r) = w * (vq.col(r).transpose() * lq);
        rhs(r) = -2.0 * w * vq.col(r).sum();
      }
      for (Eigen::Index j = 0; j < dim; ++j) {
        sys(dim - 2, j) = (j % 2 == 0) ? 1.0 : -1.0;
        sys(dim - 1, j) = 1.0;
      }
      rhs(dim - 2) = 0.0;
      rhs(dim - 1) = 0.0;
      a = solve_checked(sys, rhs, sol.condition, "tau");
      break;
    }
    case Method::galerkin: {
      const Eigen::MatrixXd p = galerkin_map(n);
      const Eigen::MatrixXd phi_q = vq * p;        // phi_k at the nodes
      const Eigen::MatrixXd lphi_q = vq * op * p;  // L phi_k at the nodes
      const Eigen::MatrixXd sys = w * (phi_q.transpose() * lphi_q);
      const Eigen::VectorXd rhs = -2.0 * w * phi_q.colwise().sum().transpose();
      const Eigen::VectorXd b = solve_checked(sys, rhs, sol.condition, "galerkin");
      a = p * b;
      break;
    }
    case Method::collocation: {
      Eigen::MatrixXd sys(dim, dim);
      Eigen::VectorXd rhs(dim);
      for (std::size_t i = 1; i < n; ++i) {
        const double t = kPi * static_cast<double>(i) / static_cast<double>(n);
        Eigen::RowVectorXd tk(dim);
        for (Eigen::Index k = 0; k < dim; ++k) tk(k) = std::cos(static_cast<double>(k) * t);
        sys.row(static_cast<Eigen::Index>(i - 1)) = tk * op;
        rhs(static_cast<Eigen::Index>(i - 1)) = -2.0;
      }
      for (Eigen::Index j = 0; j < dim; ++j) {
        sys(dim - 2, j) = (j % 2 == 0) ? 1.0 : -1.0;
        sys(dim - 1, j) = 1.0;
      }
      rhs(dim - 2) = 0.0;
      rhs(dim - 1) = 0.0;
      a = solve_checked(sys, rhs, sol.condition, "collocation");
      break;
    }
  }

  sol.coeffs = ChebSeries(std::vector<double>(a.data(), a.data() + a.size()));
  sol.bc_residual = {sol.coeffs(-1.0), sol.coeffs(1.0)};
  const auto r = residual(sol.coeffs);
  double worst = 0.0;
  for (std::size_t i = 0; i < 401; ++i) {
    worst = std::max(worst, std::abs(r(-1.0 + 2.0 * static_cast<double>(i) / 400.0)));
  }
  sol.residual_norm = worst;
  return sol;
}

double exact_bvp_solution(double x) {
  if (!(std::abs(x) <= 1.0 + 1e-14)) {
    throw DomainError("exact_bvp_solution: |x| > 1 (x = " + std::to_string(x) + ")");
  }
  const double s3 = std::sinh(3.0);
  return 1.0 - std::sinh(2.0) / s3 * std::exp(x) - std::sinh(1.0) / s3 * std::exp(-2.0 * x);
}

void write_comparison(std::ostream& out, std::size_t n, std::size_t points) {
  if (points < 2) throw PreconditionError("write_comparison: at least two plot points required");
  const auto tau = solve_bvp(Method::tau, n);
  const auto gal = solve_bvp(Method::galerkin, n);
  const auto col = solve_bvp(Method::collocation, n);
  csv::Writer w(out);
  w.header({"x", "u_exact", "u_tau", "u_galerkin", "u_collocation"});
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? 1.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
    w.row({x, exact_bvp_solution(x), tau.coeffs(x), gal.coeffs(x), col.coeffs(x)});
  }
}

}  // namespace spectral::bvp
