#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "spectral/error.hpp"
#include "spectral/trefftz.hpp"
#include "support/gen.hpp"

using namespace spectral;
using namespace spectral::trefftz;

namespace {

constexpr double kPi = std::numbers::pi;

// e^x cos y = Re e^z, harmonic but not a polynomial.
double ecos(const Point& p) { return std::exp(p.x()) * std::cos(p.y()); }
Point ecos_grad(const Point& p) { return {std::exp(p.x()) * std::cos(p.y()), -std::exp(p.x()) * std::sin(p.y())}; }

Point random_inside(gen::Rng& r, const BoundaryCurve& c, double margin) {
  for (;;) {
    const Point p(r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0));
    if (c.signed_distance(p) < -margin) return p;
  }
}

BoundaryCurve unit_square() { return BoundaryCurve::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }

}  // namespace

TEST(Curve, CircleAndPolygonGeometry) {
  const auto c = BoundaryCurve::circle({0.5, 0.0}, 2.0, 4);
  EXPECT_EQ(c.segments(), 4u);
  EXPECT_NEAR(c.length(), 4 * kPi, 1e-14);
  EXPECT_NEAR(c.signed_distance({0.5, 0.0}), -2.0, 1e-14);
  EXPECT_NEAR(c.signed_distance({3.5, 0.0}), 1.0, 1e-14);
  // Clockwise input is reoriented.
  const auto sq = BoundaryCurve::polygon({{-1, 1}, {1, 1}, {1, -1}, {-1, -1}});
  EXPECT_NEAR(sq.length(), 8.0, 1e-14);
  EXPECT_TRUE(sq.contains({0.9, -0.9}));
  EXPECT_FALSE(sq.contains({1.1, 0.0}));
  EXPECT_NEAR(sq.radius(), std::sqrt(2.0), 1e-14);
  const auto s = sq.sample(40);
  double w = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    w += s.weights[i];
    const Point& p = s.points[i];
    const Point& n = s.normals[i];
    EXPECT_NEAR(n.norm(), 1.0, 1e-14);
    EXPECT_GT(sq.signed_distance(p + 1e-3 * n), 0.0);  // outward
    EXPECT_LT(std::abs(sq.signed_distance(p)), 1e-14);
  }
  EXPECT_NEAR(w, 8.0, 1e-12);
  EXPECT_THROW((void)SegmentCondition::robin(0.0, 0.0, {}), PreconditionError);
}

TEST(TComplete, DiskReproducesCosTheta) {
  BoundaryProblem p{BoundaryCurve::circle({0, 0}, 1.0), {SegmentCondition::dirichlet([](const Point& x, const Point&) {
                      return x.x();
                    })},
                    Basis::t_complete(8), 40};
  for (auto m : {Method::collocation, Method::least_squares, Method::galerkin_boundary}) {
    const auto s = solve_trefftz(p, m);
    ASSERT_EQ(s.coeffs.size(), 17);
    for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) EXPECT_NEAR(s.coeffs[i], i == 1 ? 1.0 : 0.0, 1e-10) << i;
    EXPECT_GT(s.condition, 0.0);
  }
}

TEST(TComplete, ConstantDatum) {
  BoundaryProblem p{BoundaryCurve::circle({0, 0}, 1.0),
                    {SegmentCondition::dirichlet([](const Point&, const Point&) { return 1.0; })}, Basis::t_complete(6),
                    30};
  const auto s = solve_trefftz(p, Method::least_squares);
  gen::Rng r(81);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(s(random_inside(r, p.curve, 0.0)), 1.0, 1e-12);
}

TEST(TComplete, SquareManufacturedSolution) {
  auto exact = [](const Point& x) { return x.x() * x.x() - x.y() * x.y(); };
  BoundaryProblem p{unit_square(), {SegmentCondition::dirichlet([&](const Point& x, const Point&) { return exact(x); })},
                    Basis::t_complete(8), 36};
  for (auto m : {Method::collocation, Method::least_squares}) {
    const auto s = solve_trefftz(p, m);
    gen::Rng r(82);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto x = random_inside(r, p.curve, 0.0);
      worst = std::max(worst, std::abs(s(x) - exact(x)));
    }
    EXPECT_LE(worst, 1e-8);
  }
}

TEST(TComplete, CollocationExactAtNodes) {
  gen::for_all(10, 83, [](gen::Rng& r) {
    const auto n = r.index(2, 10);
    const double a = r.uniform(-1, 1);
    const double b = r.uniform(-1, 1);
    BoundaryProblem p{BoundaryCurve::circle({r.uniform(-1, 1), r.uniform(-1, 1)}, r.uniform(0.5, 2.0)),
                      {SegmentCondition::dirichlet(
                          [a, b](const Point& x, const Point&) { return std::sin(a * x.x()) + std::cos(b * x.y() + x.x()); })},
                      Basis::t_complete(n), 2 * n + 1};
    // t_complete centred on the curve and scaled by its radius.
    p.basis = Basis::t_complete(n, p.curve.centroid(), p.curve.radius());
    const auto s = solve_trefftz(p, Method::collocation);
    ASSERT_LE(s.boundary_residual, 1e-9);
  });
}

TEST(TComplete, BasisIsHarmonic) {
  const auto basis = Basis::t_complete(8, {0.1, -0.2}, 1.3);
  const auto mfs = Basis::fundamental(default_sources(BoundaryCurve::circle({0, 0}, 1.0), 12));
  gen::Rng r(84);
  const double h = 1e-4;
  for (const auto* b : {&basis, &mfs}) {
    std::vector<double> c(b->size()), e(b->size()), w(b->size()), n(b->size()), s(b->size());
    for (int i = 0; i < 50; ++i) {
      Point x(r.uniform(-0.5, 0.5), r.uniform(-0.5, 0.5));
      b->values(x, c);
      b->values(x + Point(h, 0), e);
      b->values(x - Point(h, 0), w);
      b->values(x + Point(0, h), n);
      b->values(x - Point(0, h), s);
      for (std::size_t k = 0; k < b->size(); ++k) {
        ASSERT_LE(std::abs(e[k] + w[k] + n[k] + s[k] - 4 * c[k]) / (h * h), 1e-6 * (1.0 + std::abs(c[k]))) << k;
      }
    }
  }
}

TEST(TComplete, GradientsMatchDifferences) {
  const auto basis = Basis::t_complete(5, {0.3, 0.1}, 0.8);
  const std::size_t m = basis.size();
  std::vector<double> gx(m), gy(m), a(m), b(m);
  const Point x(0.2, -0.4);
  basis.gradients(x, gx, gy);
  const double h = 1e-6;
  basis.values(x + Point(h, 0), a);
  basis.values(x - Point(h, 0), b);
  for (std::size_t k = 0; k < m; ++k) EXPECT_NEAR(gx[k], (a[k] - b[k]) / (2 * h), 1e-7);
  basis.values(x + Point(0, h), a);
  basis.values(x - Point(0, h), b);
  for (std::size_t k = 0; k < m; ++k) EXPECT_NEAR(gy[k], (a[k] - b[k]) / (2 * h), 1e-7);
}

TEST(TComplete, MaximumPrinciple) {
  BoundaryProblem p{BoundaryCurve::circle({0, 0}, 1.0),
                    {SegmentCondition::dirichlet([](const Point& x, const Point&) { return std::exp(x.x()); })},
                    Basis::t_complete(20), 80};
  const auto s = solve_trefftz(p, Method::least_squares);
  gen::Rng r(85);
  for (int i = 0; i < 200; ++i) {
    const double v = s(random_inside(r, p.curve, 0.0));
    EXPECT_GE(v, std::exp(-1.0) - 1e-6);
    EXPECT_LE(v, std::exp(1.0) + 1e-6);
  }
}

TEST(TComplete, MixedDirichletNeumann) {
  BoundaryProblem p{BoundaryCurve::circle({0, 0}, 1.0, 2),
                    {SegmentCondition::dirichlet([](const Point& x, const Point&) { return ecos(x); }),
                     SegmentCondition::neumann([](const Point& x, const Point& n) { return ecos_grad(x).dot(n); })},
                    Basis::t_complete(16), 64};
  const auto s = solve_trefftz(p, Method::least_squares);
  gen::Rng r(86);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_inside(r, p.curve, 0.0);
    EXPECT_NEAR(s(x), ecos(x), 1e-6);
  }
}

TEST(TComplete, RobinCondition) {
  BoundaryProblem p{unit_square(),
                    {SegmentCondition::robin(1.0, 0.5,
                                             [](const Point& x, const Point& n) { return ecos(x) + 0.5 * ecos_grad(x).dot(n); })},
                    Basis::t_complete(16, {0, 0}, std::sqrt(2.0)), 120};
  const auto s = solve_trefftz(p, Method::least_squares);
  gen::Rng r(87);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_inside(r, p.curve, 0.05);
    EXPECT_NEAR(s(x), ecos(x), 1e-6);
  }
  EXPECT_LE(boundary_residual(p, s, 400), 1e-5);
}

TEST(TComplete, RankDeficientSystemReported) {
  // Two samples cannot determine 17 coefficients.
  BoundaryProblem p{BoundaryCurve::circle({0, 0}, 1.0),
                    {SegmentCondition::dirichlet([](const Point&, const Point&) { return 1.0; })}, Basis::t_complete(8), 2};
  EXPECT_THROW((void)solve_trefftz(p, Method::collocation), PreconditionError);
  // Neumann data on every segment leaves the constant undetermined.
  BoundaryProblem q{BoundaryCurve::circle({0, 0}, 1.0),
                    {SegmentCondition::neumann([](const Point&, const Point&) { return 0.0; })}, Basis::t_complete(4), 30};
  EXPECT_THROW((void)solve_trefftz(q, Method::least_squares), SingularSystemError);
  SolveOptions o;
  o.allow_regularization = true;
  const auto s = solve_trefftz(q, Method::least_squares, o);
  EXPECT_LT(s.rank, 9u);
}

TEST(Fundamental, DiskCosTheta) {
  std::vector<Point> sources;
  for (int k = 0; k < 16; ++k) sources.emplace_back(2 * std::cos(2 * kPi * k / 16), 2 * std::sin(2 * kPi * k / 16));
  BoundaryProblem p{BoundaryCurve::circle({0, 0}, 1.0),
                    {SegmentCondition::dirichlet([](const Point& x, const Point&) { return x.x(); })},
                    Basis::fundamental(sources), 32};
  const auto s = solve_trefftz(p, Method::least_squares);
  // Sixteen sources at radius two reproduce mode 1 up to the aliased modes
  // 15 and 17, of size 1/(15 2^14) + 1/(17 2^16).
  const double alias = 1.0 / (15 * std::pow(2.0, 14)) + 1.0 / (17 * std::pow(2.0, 16));
  EXPECT_LE(boundary_residual(p, s, 400), 1.5 * alias);
  const auto oracle = solve_trefftz({p.curve, p.conditions, Basis::t_complete(8), 32}, Method::least_squares);
  gen::Rng r(88);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_inside(r, p.curve, 0.0);
    EXPECT_NEAR(s(x), oracle(x), 1.5 * alias);
  }
}

TEST(Fundamental, SourcePlacement) {
  const auto c = BoundaryCurve::circle({0, 0}, 1.0);
  for (const auto& q : default_sources(c, 10, 1.8)) EXPECT_NEAR(q.norm(), 1.8, 1e-12);
  auto cond = std::vector{SegmentCondition::dirichlet([](const Point&, const Point&) { return 0.0; })};
  EXPECT_THROW((void)solve_trefftz({c, cond, Basis::fundamental({{1.0, 0.0}, {3.0, 0.0}}), 10}, Method::least_squares),
               PreconditionError);
  EXPECT_THROW((void)solve_trefftz({c, cond, Basis::fundamental({{0.2, 0.0}}), 10}, Method::least_squares),
               PreconditionError);
  const std::vector<Point> q{{0.0, 0.0}};
  EXPECT_THROW((void)fundamental_basis(q, q), PreconditionError);
}

TEST(Fundamental, FarSourceIsNearlyFlat) {
  const std::vector<Point> q{{1000.0, 0.0}};
  std::vector<Point> pts;
  gen::Rng r(89);
  for (int i = 0; i < 100; ++i) pts.emplace_back(r.uniform(-1, 1), r.uniform(-1, 1));
  const auto g = fundamental_basis(q, pts);
  EXPECT_NEAR(g(0, 0), std::log((pts[0] - q[0]).norm()) / (2 * kPi), 1e-15);
  EXPECT_LT((g.maxCoeff() - g.minCoeff()) / std::abs(g.mean()), 1e-3);
}

TEST(Domain, ReadAndSolve) {
  std::istringstream in("x,y,kind,alpha,beta,value\n0,0,dirichlet,,,1\n2,0,neumann,,,0\n2,1,dirichlet,,,1\n0,1,neumann,,,0\n");
  const auto d = read_domain(in);
  EXPECT_EQ(d.curve.segments(), 4u);
  ASSERT_EQ(d.conditions.size(), 4u);
  EXPECT_EQ(d.conditions[1].kind, BcKind::neumann);
  const auto s = solve_trefftz({d.curve, d.conditions, Basis::t_complete(6, d.curve.centroid(), d.curve.radius()), 60},
                               Method::least_squares);
  EXPECT_NEAR(s(Point(1.0, 0.5)), 1.0, 1e-10);
  std::istringstream bad("x,y,kind,alpha,beta,value\n0,0,slip,,,1\n1,0,dirichlet,,,1\n0,1,dirichlet,,,1\n");
  EXPECT_THROW((void)read_domain(bad), PreconditionError);
  EXPECT_EQ(parse_method("least-squares"), Method::least_squares);
  EXPECT_THROW((void)parse_method("bem"), PreconditionError);
}

TEST(Domain, ClockwiseFileKeepsEdgeTags) {
  // Dirichlet u = x on the vertical edges, zero flux on the horizontal ones.
  std::istringstream in("x,y,kind,alpha,beta,value\n0,0,dirichlet,,,0\n0,1,neumann,,,0\n1,1,dirichlet,,,1\n1,0,neumann,,,0\n");
  const auto d = read_domain(in);
  const auto s = solve_trefftz({d.curve, d.conditions, Basis::t_complete(6, d.curve.centroid(), d.curve.radius()), 80},
                               Method::least_squares);
  for (double x : {0.2, 0.5, 0.8}) EXPECT_NEAR(s(Point(x, 0.4)), x, 1e-10);
}

TEST(Domain, LatticeCsv) {
  const auto c = BoundaryCurve::circle({0, 0}, 1.0);
  const auto s = solve_trefftz({c, {SegmentCondition::dirichlet([](const Point&, const Point&) { return 2.0; })},
                                Basis::t_complete(2), 10},
                               Method::least_squares);
  std::ostringstream out;
  const std::vector<double> xs{-2.0, 0.0};
  const std::vector<double> ys{0.0};
  write_lattice(out, s, c, xs, ys);
  const auto text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "x,y,inside,u");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}
