#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace spectral::trefftz {

using Point = Eigen::Vector2d;

struct BoundarySample {
  std::vector<Point> points;
  std::vector<Point> normals;       // outward unit normals
  std::vector<double> weights;      // arc length carried by each sample
  std::vector<std::size_t> segment; // segment index of each sample
};

/// Closed boundary: a circle split into equal arcs, or a polygon whose edges
/// are the segments (edge i runs from vertex i to vertex i+1). Polygons are
/// reoriented counter-clockwise.
class BoundaryCurve {
 public:
  static BoundaryCurve circle(Point center, double radius, std::size_t segments = 1);
  static BoundaryCurve polygon(std::vector<Point> vertices);

  [[nodiscard]] std::size_t segments() const noexcept;
  [[nodiscard]] double length() const noexcept;

  /// `count` samples equally spaced in arc length, at the midpoints of equal
  /// arcs so polygon corners are never sampled.
  [[nodiscard]] BoundarySample sample(std::size_t count) const;

  /// Positive outside, negative inside, zero on the curve.
  [[nodiscard]] double signed_distance(const Point& x) const;
  [[nodiscard]] bool contains(const Point& x) const { return signed_distance(x) < 0.0; }

  [[nodiscard]] Point centroid() const;
  /// Largest distance from the centroid to the curve.
  [[nodiscard]] double radius() const;

  [[nodiscard]] bool is_circle() const noexcept { return vertices_.empty(); }
  [[nodiscard]] std::span<const Point> vertices() const noexcept { return vertices_; }

 private:
  BoundaryCurve() = default;

  Point center_{0.0, 0.0};
  double radius_ = 0.0;
  std::size_t arcs_ = 1;
  std::vector<Point> vertices_;
};

enum class BcKind { dirichlet, neumann, robin };

/// alpha u + beta du/dn = data(x, n) on one segment.
struct SegmentCondition {
  BcKind kind = BcKind::dirichlet;
  double alpha = 1.0;
  double beta = 0.0;
  std::function<double(const Point& x, const Point& normal)> data;

  static SegmentCondition dirichlet(std::function<double(const Point&, const Point&)> data);
  static SegmentCondition neumann(std::function<double(const Point&, const Point&)> data);
  /// PreconditionError when alpha = beta = 0.
  static SegmentCondition robin(double alpha, double beta, std::function<double(const Point&, const Point&)> data);
};

/// Harmonic trial functions.
///
/// t_complete: 1, Re z^k, Im z^k for k = 1..n_max with z = (x - c)/rho.
/// fundamental: G(x; Q) = (1/2pi) ln|x - Q| for every source Q.
class Basis {
 public:
  static Basis t_complete(std::size_t n_max, Point center = Point(0.0, 0.0), double scale = 1.0);
  static Basis fundamental(std::vector<Point> sources);

  [[nodiscard]] std::size_t size() const noexcept;
  [[nodiscard]] bool is_fundamental() const noexcept { return fundamental_; }
  [[nodiscard]] std::size_t n_max() const noexcept { return n_max_; }
  [[nodiscard]] std::span<const Point> sources() const noexcept { return sources_; }

  /// All basis values at x (length size()).
  void values(const Point& x, std::span<double> out) const;
  /// All basis gradients at x: out_x and out_y, each of length size().
  void gradients(const Point& x, std::span<double> out_x, std::span<double> out_y) const;

 private:
  Basis() = default;

  bool fundamental_ = false;
  std::size_t n_max_ = 0;
  Point center_{0.0, 0.0};
  double scale_ = 1.0;
  std::vector<Point> sources_;
};

/// Matrix of G(x_i; Q_k) = (1/2pi) ln|x_i - Q_k|; rows are evaluation
/// points. PreconditionError when a source coincides with an evaluation point.
[[nodiscard]] Eigen::MatrixXd fundamental_basis(std::span<const Point> sources, std::span<const Point> eval_points);

/// `count` sources on the boundary dilated by `dilation` about its centroid.
[[nodiscard]] std::vector<Point> default_sources(const BoundaryCurve& curve, std::size_t count,
                                                 double dilation = 1.8);

struct BoundaryProblem {
  BoundaryCurve curve;
  /// One condition per segment, or a single condition used on every segment.
  std::vector<SegmentCondition> conditions;
  Basis basis;
  std::size_t points = 0;  // boundary samples used by the solve
};

enum class Method { collocation, least_squares, galerkin_boundary };

[[nodiscard]] Method parse_method(std::string_view name);

struct SolveOptions {
  /// Solve rank-deficient systems by truncated SVD instead of raising.
  bool allow_regularization = false;
};

struct TrefftzSolution {
  Basis basis;
  Eigen::VectorXd coeffs;
  double boundary_residual = 0.0;  // sup |B u_n - u°| at the solve samples
  double condition = 0.0;          // 2-norm condition of the solved matrix
  std::size_t rank = 0;

  [[nodiscard]] double operator()(const Point& x) const;
};

/// collocation needs points >= basis size: square systems use LU, taller
/// ones a pivoted QR. least_squares uses a pivoted QR of the collocation
/// matrix. galerkin_boundary integrates the residual against B phi_k by the
/// trapezoid rule at 8x the sample density and solves the Gram system by LU.
///
/// Fundamental sources inside or on the boundary raise PreconditionError; a
/// rank-deficient system raises SingularSystemError unless regularization is
/// allowed.
[[nodiscard]] TrefftzSolution solve_trefftz(const BoundaryProblem& problem, Method method,
                                            const SolveOptions& options = {});

/// sup |B u_n - u°| over `count` fresh boundary samples.
[[nodiscard]] double boundary_residual(const BoundaryProblem& problem, const TrefftzSolution& solution,
                                       std::size_t count);

/// Polygon domain read from CSV rows `x,y,kind,alpha,beta,value`: the tag on
/// vertex i applies to the edge from vertex i to vertex i+1 with constant
/// data `value`. kind is dirichlet, neumann or robin; alpha and beta are
/// read for robin only.
struct DomainSpec {
  BoundaryCurve curve;
  std::vector<SegmentCondition> conditions;
};

[[nodiscard]] DomainSpec read_domain(std::istream& in);

/// CSV `x,y,inside,u` on the lattice xs x ys (x fastest).
void write_lattice(std::ostream& out, const TrefftzSolution& solution, const BoundaryCurve& curve,
                   std::span<const double> xs, std::span<const double> ys);

}  // namespace spectral::trefftz
