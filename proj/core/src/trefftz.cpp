#include "spectral/trefftz.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "spectral/csv.hpp"
#include "spectral/error.hpp"

namespace spectral::trefftz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

double polygon_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

double segment_distance(const Point& x, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double t = std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (x - (a + t * ab)).norm();
}

const SegmentCondition& condition_for(const BoundaryProblem& p, std::size_t segment) {
  if (p.conditions.size() == 1) return p.conditions.front();
  return p.conditions.at(segment);
}

void validate(const BoundaryProblem& p) {
  if (p.conditions.empty()) throw PreconditionError("solve_trefftz: no boundary conditions given");
  if (p.conditions.size() != 1 && p.conditions.size() != p.curve.segments()) {
    throw PreconditionError("solve_trefftz: need one condition per segment (" + std::to_string(p.curve.segments()) +
                            ") or a single condition");
  }
  for (const auto& c : p.conditions) {
    if (!c.data) throw PreconditionError("solve_trefftz: boundary condition without data");
    if (c.alpha == 0.0 && c.beta == 0.0) throw PreconditionError("solve_trefftz: Robin needs (alpha, beta) != (0, 0)");
  }
  if (p.basis.is_fundamental()) {
    for (const auto& q : p.basis.sources()) {
      if (!(p.curve.signed_distance(q) > 1e-12)) {
        throw PreconditionError("solve_trefftz: fundamental-solution source (" + std::to_string(q.x()) + ", " +
                                std::to_string(q.y()) + ") lies inside or on the boundary");
      }
    }
  }
}

// Rows B phi_k(x_i) and data u°(x_i) for the given samples.
void assemble(const BoundaryProblem& p, const BoundarySample& s, Eigen::MatrixXd& a, Eigen::VectorXd& b) {
  const std::size_t k = p.basis.size();
  const std::size_t n = s.points.size();
  a.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  b.resize(static_cast<Eigen::Index>(n));
  std::vector<double> v(k);
  std::vector<double> gx(k);
  std::vector<double> gy(k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = condition_for(p, s.segment[i]);
    const Point& x = s.points[i];
    const Point& nrm = s.normals[i];
    p.basis.values(x, v);
    if (c.beta != 0.0) p.basis.gradients(x, gx, gy);
    for (std::size_t j = 0; j < k; ++j) {
      double row = c.alpha * v[j];
      if (c.beta != 0.0) row += c.beta * (gx[j] * nrm.x() + gy[j] * nrm.y());
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row;
    }
    b(static_cast<Eigen::Index>(i)) = c.data(x, nrm);
  }
}

Eigen::VectorXd truncated_svd_solve(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd, const Eigen::VectorXd& rhs,
                                    double threshold) {
  const auto& s = svd.singularValues();
  Eigen::VectorXd ub = svd.matrixU().transpose() * rhs;
  for (Eigen::Index i = 0; i < s.size(); ++i) ub(i) = s(i) > threshold ? ub(i) / s(i) : 0.0;
  return svd.matrixV() * ub;
}

}  // namespace

BoundaryCurve BoundaryCurve::circle(Point center, double radius, std::size_t segments) {
  if (!(radius > 0.0)) throw PreconditionError("BoundaryCurve::circle: radius must be positive");
  if (segments < 1) throw PreconditionError("BoundaryCurve::circle: at least one segment");
  BoundaryCurve c;
  c.center_ = center;
  c.radius_ = radius;
  c.arcs_ = segments;
  return c;
}

BoundaryCurve BoundaryCurve::polygon(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw PreconditionError("BoundaryCurve::polygon: at least three vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if ((vertices[i] - vertices[(i + 1) % vertices.size()]).norm() == 0.0) {
      throw PreconditionError("BoundaryCurve::polygon: repeated vertex");
    }
  }
  const double area = polygon_area(vertices);
  if (area == 0.0) throw PreconditionError("BoundaryCurve::polygon: degenerate polygon");
  if (area < 0.0) {
    // Reverse orientation, keeping edge i attached to the same pair of vertices.
    std::reverse(vertices.begin(), vertices.end());
    std::rotate(vertices.begin(), vertices.end() - 1, vertices.end());
  }
  BoundaryCurve c;
  c.vertices_ = std::move(vertices);
  c.arcs_ = c.vertices_.size();
  return c;
}

std::size_t BoundaryCurve::segments() const noexcept { return arcs_; }

double BoundaryCurve::length() const noexcept {
  if (is_circle()) return kTwoPi * radius_;
  double len = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) len += (vertices_[(i + 1) % vertices_.size()] - vertices_[i]).norm();
  return len;
}

BoundarySample BoundaryCurve::sample(std::size_t count) const {
  if (count < 1) throw PreconditionError("BoundaryCurve::sample: count >= 1 required");
  BoundarySample s;
  s.points.reserve(count);
  s.normals.reserve(count);
  s.weights.assign(count, length() / static_cast<double>(count));
  s.segment.reserve(count);
  if (is_circle()) {
    for (std::size_t j = 0; j < count; ++j) {
      const double theta = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(count);
      const Point n(std::cos(theta), std::sin(theta));
      s.points.emplace_back(center_ + radius_ * n);
      s.normals.push_back(n);
      s.segment.push_back(std::min(arcs_ - 1, static_cast<std::size_t>(theta / (kTwoPi / static_cast<double>(arcs_)))));
    }
    return s;
  }
  const double total = length();
  std::size_t edge = 0;
  double edge_start = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double target = total * (static_cast<double>(j) + 0.5) / static_cast<double>(count);
    auto edge_len = [&](std::size_t e) { return (vertices_[(e + 1) % vertices_.size()] - vertices_[e]).norm(); };
    while (edge + 1 < vertices_.size() && target > edge_start + edge_len(edge)) {
      edge_start += edge_len(edge);
      ++edge;
    }
    const Point a = vertices_[edge];
    const Point b = vertices_[(edge + 1) % vertices_.size()];
    const double t = std::clamp((target - edge_start) / edge_len(edge), 0.0, 1.0);
    const Point tangent = (b - a).normalized();
    s.points.emplace_back(a + t * (b - a));
    s.normals.emplace_back(tangent.y(), -tangent.x());  // outward for counter-clockwise order
    s.segment.push_back(edge);
  }
  return s;
}

double BoundaryCurve::signed_distance(const Point& x) const {
  if (is_circle()) return (x - center_).norm() - radius_;
  double d = std::numeric_limits<double>::infinity();
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[j];
    d = std::min(d, segment_distance(x, a, b));
    if ((a.y() > x.y()) != (b.y() > x.y()) &&
        x.x() < (b.x() - a.x()) * (x.y() - a.y()) / (b.y() - a.y()) + a.x()) {
      inside = !inside;
    }
  }
  if (d == 0.0) return 0.0;
  return inside ? -d : d;
}

Point BoundaryCurve::centroid() const {
  if (is_circle()) return center_;
  double a = 0.0;
  Point c(0.0, 0.0);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % vertices_.size()];
    const double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  return c / (3.0 * a);
}

double BoundaryCurve::radius() const {
  if (is_circle()) return radius_;
  const Point c = centroid();
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, (v - c).norm());
  return r;
}

SegmentCondition SegmentCondition::dirichlet(std::function<double(const Point&, const Point&)> data) {
  return {BcKind::dirichlet, 1.0, 0.0, std::move(data)};
}

SegmentCondition SegmentCondition::neumann(std::function<double(const Point&, const Point&)> data) {
  return {BcKind::neumann, 0.0, 1.0, std::move(data)};
}

SegmentCondition SegmentCondition::robin(double alpha, double beta,
                                         std::function<double(const Point&, const Point&)> data) {
  if (alpha == 0.0 && beta == 0.0) throw PreconditionError("Robin condition needs (alpha, beta) != (0, 0)");
  return {BcKind::robin, alpha, beta, std::move(data)};
}

Basis Basis::t_complete(std::size_t n_max, Point center, double scale) {
  if (!(scale > 0.0)) throw PreconditionError("Basis::t_complete: scale must be positive");
  Basis b;
  b.n_max_ = n_max;
  b.center_ = center;
  b.scale_ = scale;
  return b;
}

Basis Basis::fundamental(std::vector<Point> sources) {
  if (sources.empty()) throw PreconditionError("Basis::fundamental: at least one source");
  Basis b;
  b.fundamental_ = true;
  b.sources_ = std::move(sources);
  return b;
}

std::size_t Basis::size() const noexcept { return fundamental_ ? sources_.size() : 2 * n_max_ + 1; }

void Basis::values(const Point& x, std::span<double> out) const {
  if (fundamental_) {
    for (std::size_t k = 0; k < sources_.size(); ++k) out[k] = std::log((x - sources_[k]).norm()) / kTwoPi;
    return;
  }
  const std::complex<double> z((x.x() - center_.x()) / scale_, (x.y() - center_.y()) / scale_);
  std::complex<double> zk(1.0, 0.0);
  out[0] = 1.0;
  for (std::size_t k = 1; k <= n_max_; ++k) {
    zk *= z;
    out[2 * k - 1] = zk.real();
    out[2 * k] = zk.imag();
  }
}

void Basis::gradients(const Point& x, std::span<double> out_x, std::span<double> out_y) const {
  if (fundamental_) {
    for (std::size_t k = 0; k < sources_.size(); ++k) {
      const Point d = x - sources_[k];
      const double r2 = d.squaredNorm();
      out_x[k] = d.x() / (kTwoPi * r2);
      out_y[k] = d.y() / (kTwoPi * r2);
    }
    return;
  }
  // d/dx z^k = k z^{k-1} / rho and d/dy z^k = i k z^{k-1} / rho.
  const std::complex<double> z((x.x() - center_.x()) / scale_, (x.y() - center_.y()) / scale_);
  std::complex<double> zkm1(1.0, 0.0);
  out_x[0] = 0.0;
  out_y[0] = 0.0;
  for (std::size_t k = 1; k <= n_max_; ++k) {
    const std::complex<double> d = static_cast<double>(k) * zkm1 / scale_;
    out_x[2 * k - 1] = d.real();
    out_y[2 * k - 1] = -d.imag();
    out_x[2 * k] = d.imag();
    out_y[2 * k] = d.real();
    zkm1 *= z;
  }
}

Eigen::MatrixXd fundamental_basis(std::span<const Point> sources, std::span<const Point> eval_points) {
  Eigen::MatrixXd g(static_cast<Eigen::Index>(eval_points.size()), static_cast<Eigen::Index>(sources.size()));
  for (std::size_t i = 0; i < eval_points.size(); ++i) {
    for (std::size_t k = 0; k < sources.size(); ++k) {
      const double r = (eval_points[i] - sources[k]).norm();
      if (r == 0.0) throw PreconditionError("fundamental_basis: source coincides with an evaluation point");
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = std::log(r) / kTwoPi;
    }
  }
  return g;
}

std::vector<Point> default_sources(const BoundaryCurve& curve, std::size_t count, double dilation) {
  if (!(dilation > 1.0)) throw PreconditionError("default_sources: dilation must exceed 1");
  const Point c = curve.centroid();
  const auto s = curve.sample(count);
  std::vector<Point> q;
  q.reserve(count);
  for (const auto& p : s.points) q.emplace_back(c + dilation * (p - c));
  return q;
}

Method parse_method(std::string_view name) {
  if (name == "collocation") return Method::collocation;
  if (name == "least_squares" || name == "least-squares") return Method::least_squares;
  if (name == "galerkin_boundary" || name == "galerkin") return Method::galerkin_boundary;
  throw PreconditionError("unknown Trefftz method '" + std::string(name) +
                          "' (collocation, least_squares, galerkin_boundary)");
}

double TrefftzSolution::operator()(const Point& x) const {
  std::vector<double> v(basis.size());
  basis.values(x, v);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).dot(coeffs);
}

TrefftzSolution solve_trefftz(const BoundaryProblem& problem, Method method, const SolveOptions& options) {
  validate(problem);
  const std::size_t k = problem.basis.size();
  const std::size_t p = problem.points == 0 ? 2 * k : problem.points;
  if (method == Method::collocation && p < k) {
    throw PreconditionError("solve_trefftz: collocation needs at least as many boundary points (" +
                            std::to_string(p) + ") as basis functions (" + std::to_string(k) + ")");
  }

  const auto samples = problem.curve.sample(p);
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  assemble(problem, samples, a, b);

  Eigen::MatrixXd system = a;
  Eigen::VectorXd rhs = b;
  if (method == Method::galerkin_boundary) {
    const auto fine = problem.curve.sample(8 * p);
    Eigen::MatrixXd af;
    Eigen::VectorXd bf;
    assemble(problem, fine, af, bf);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(fine.weights.data(), static_cast<Eigen::Index>(fine.weights.size()));
    system = af.transpose() * w.asDiagonal() * af;
    rhs = af.transpose() * w.asDiagonal() * bf;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
  const double threshold =
      static_cast<double>(std::max(system.rows(), system.cols())) * std::numeric_limits<double>::epsilon() * smax;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > threshold ? 1 : 0;

  TrefftzSolution sol{problem.basis, {}, 0.0, smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity(), rank};
  if (rank < k) {
    if (!options.allow_regularization) {
      throw SingularSystemError("solve_trefftz: rank-deficient system (rank " + std::to_string(rank) + " of " +
                                    std::to_string(k) + "), condition estimate " + std::to_string(sol.condition),
                                sol.condition);
    }
    sol.coeffs = truncated_svd_solve(svd, rhs, threshold);
  } else if (system.rows() == system.cols()) {
    sol.coeffs = system.partialPivLu().solve(rhs);
  } else {
    sol.coeffs = system.colPivHouseholderQr().solve(rhs);
  }

  sol.boundary_residual = (a * sol.coeffs - b).lpNorm<Eigen::Infinity>();
  return sol;
}

double boundary_residual(const BoundaryProblem& problem, const TrefftzSolution& solution, std::size_t count) {
  const auto samples = problem.curve.sample(count);
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  assemble(problem, samples, a, b);
  return (a * solution.coeffs - b).lpNorm<Eigen::Infinity>();
}

DomainSpec read_domain(std::istream& in) {
  const auto rows = csv::read_rows(in);
  std::vector<Point> vertices;
  std::vector<SegmentCondition> conditions;
  for (const auto& row : rows) {
    if (row.empty()) continue;
    if (row[0] == "x") continue;  // header
    if (row.size() < 6) throw PreconditionError("read_domain: expected x,y,kind,alpha,beta,value");
    const std::string& kind = row[2];
    double vals[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    const std::size_t idx[5] = {0, 1, 3, 4, 5};
    for (int i = 0; i < 5; ++i) {
      if ((i == 2 || i == 3) && kind != "robin") continue;
      try {
        vals[i] = std::stod(row[idx[i]]);
      } catch (const std::exception&) {
        throw PreconditionError("read_domain: bad number '" + row[idx[i]] + "'");
      }
    }
    vertices.emplace_back(vals[0], vals[1]);
    const double value = vals[4];
    auto data = [value](const Point&, const Point&) { return value; };
    if (kind == "dirichlet") {
      conditions.push_back(SegmentCondition::dirichlet(data));
    } else if (kind == "neumann") {
      conditions.push_back(SegmentCondition::neumann(data));
    } else if (kind == "robin") {
      conditions.push_back(SegmentCondition::robin(vals[2], vals[3], data));
    } else {
      throw PreconditionError("read_domain: unknown boundary kind '" + kind + "'");
    }
  }
  const double area = polygon_area(vertices);
  auto curve = BoundaryCurve::polygon(vertices);
  if (area < 0.0) {
    // polygon() reversed the vertex order; edge i of the new order is edge
    // n-1-i of the file.
    std::reverse(conditions.begin(), conditions.end());
  }
  return {std::move(curve), std::move(conditions)};
}

void write_lattice(std::ostream& out, const TrefftzSolution& solution, const BoundaryCurve& curve,
                   std::span<const double> xs, std::span<const double> ys) {
  csv::Writer w(out);
  w.header({"x", "y", "inside", "u"});
  for (double y : ys) {
    for (double x : xs) {
      const Point p(x, y);
      const bool inside = curve.contains(p);
      w.row({x, y, inside ? 1.0 : 0.0, inside ? solution(p) : std::numeric_limits<double>::quiet_NaN()});
    }
  }
}

}  // namespace spectral::trefftz
