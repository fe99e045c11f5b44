#include <doctest.h>

#include <cmath>
#include <sstream>

#include "orlicz/builtin.hpp"
#include "orlicz/curve.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/util.hpp"

using namespace orlicz;

namespace {

Box box2(double ax, double bx, double ay, double by) {
  Box b;
  b.dim = 2;
  b.lo = {ax, ay, 0.0};
  b.hi = {bx, by, 0.0};
  return b;
}

const Box kUnit = box2(0, 1, 0, 1);
const Box kWindow = box2(-1, 1, 0, 1);

BoxGrid grid2(int nx, int ny, const Box& b = kUnit) { return BoxGrid(2, {nx, ny, 1}, b); }

}  // namespace

TEST_CASE("curve: arc-length parametrization and restriction") {
  Curve c(std::vector<Point>{make_point(0, 0), make_point(0.6, 0.8), make_point(0.6, 0.9)});
  CHECK(c.length() == doctest::Approx(1.1));
  Point mid = c.at(0.5);
  CHECK(mid[0] == doctest::Approx(0.3));
  CHECK(mid[1] == doctest::Approx(0.4));
  Curve sub = c.restricted(0.25, 1.05);
  CHECK(sub.length() == doctest::Approx(0.8));
  CHECK_THROWS_AS(Curve(std::vector<Point>{make_point(0, 0)}), InputError);
  CHECK_THROWS_AS(Curve(std::vector<Point>{make_point(0, 0), make_point(0, 0)}), InputError);
}

TEST_CASE("curve_integral: unit density, zero density, linear density") {
  BoxGrid g = grid2(33, 33);
  Curve vertical(std::vector<Point>{make_point(0.5, 0.0), make_point(0.5, 1.0)});
  CHECK(curve_integral(ScalarField(g, 1.0), vertical, 0.01) == doctest::Approx(1.0));
  CHECK(curve_integral(ScalarField(g, 0.0), vertical, 0.01) == 0.0);
  ScalarField z = ScalarField::from_function(g, [](const Point& p) { return p[1]; });
  CHECK(curve_integral(z, vertical, 0.01) == doctest::Approx(0.5));

  Curve outside(std::vector<Point>{make_point(0.5, 0.0), make_point(0.5, 2.0)});
  CHECK_THROWS_AS(curve_integral(ScalarField(g, 1.0), outside, 0.01), InputError);
  ScalarField neg = ScalarField::from_function(g, [](const Point& p) { return p[0] - 0.5; });
  CHECK_THROWS_AS(curve_integral(neg, vertical, 0.01), InputError);
}

TEST_CASE("curve_integral: +inf propagates from sampled singular columns") {
  BoxGrid g = grid2(65, 33, kWindow);
  ScalarField v = builtin::inv_abs_field(g, 1);
  Curve core(std::vector<Point>{make_point(0.0, 0.0), make_point(0.0, 1.0)});
  CHECK(std::isinf(curve_integral(v, core, 0.01)));
  Curve crossing(std::vector<Point>{make_point(-1.0, 0.2), make_point(1.0, 0.8)});
  CHECK(std::isinf(curve_integral(v, crossing, 0.01)));
  Curve away(std::vector<Point>{make_point(0.5, 0.0), make_point(0.5, 1.0)});
  CHECK(curve_integral(v, away, 0.01) == doctest::Approx(2.0));
}

TEST_CASE("length additivity and reparametrization invariance") {
  BoxGrid g = grid2(65, 65);
  ScalarField u = ScalarField::from_function(g, [](const Point& p) { return 0.3 + p[0] * p[1]; });
  Curve coarse_path(std::vector<Point>{make_point(0.1, 0.1), make_point(0.9, 0.5), make_point(0.2, 0.9)});

  // same image, redundant vertices on each segment
  std::vector<Point> dense_verts;
  for (int seg = 0; seg < 2; ++seg) {
    Point a = coarse_path.vertices()[static_cast<std::size_t>(seg)];
    Point b = coarse_path.vertices()[static_cast<std::size_t>(seg) + 1];
    for (int j = 0; j < 8; ++j) {
      double t = j / 8.0;
      dense_verts.push_back(make_point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])));
    }
  }
  dense_verts.push_back(coarse_path.vertices().back());
  Curve dense_path(dense_verts);

  CHECK(dense_path.length() == doctest::Approx(coarse_path.length()));
  double i1 = curve_integral(u, coarse_path, 1e-3);
  double i2 = curve_integral(u, dense_path, 1e-3);
  CHECK(i1 == doctest::Approx(i2).epsilon(1e-6));
}

TEST_CASE("restriction monotonicity for nonnegative densities") {
  BoxGrid g = grid2(65, 65);
  ScalarField u = ScalarField::from_function(g, [](const Point& p) { return p[0] + p[1]; });
  Curve full(std::vector<Point>{make_point(0.0, 0.1), make_point(1.0, 0.9)});
  double whole = curve_integral(u, full, 1e-3);
  for (auto [a, b] : {std::pair<double, double>{0.0, 0.5}, {0.2, 0.9}, {0.5, 1.0}}) {
    Curve part = full.restricted(a * full.length(), b * full.length());
    CHECK(curve_integral(u, part, 1e-3) <= whole + 1e-9);
  }
}

TEST_CASE("refinement stability: halving the step is second order on the diagonal") {
  BoxGrid g = grid2(129, 129);
  ScalarField u = ScalarField::from_function(g, [](const Point& p) { return p[1] * p[1]; });
  Curve diag(std::vector<Point>{make_point(0.0, 0.0), make_point(1.0, 1.0)});
  double exact = std::sqrt(2.0) / 3.0;
  // step and cell refined together to keep both error terms shrinking
  double e1 = std::abs(curve_integral(u, diag, 1.0 / 16) - exact);
  double e3 = std::abs(curve_integral(u, diag, 1.0 / 64) - exact);
  CHECK(e3 <= e1 / 4.0);
}

TEST_CASE("segment_family: spacing, midpoint rule, and the y=0 member") {
  CurveFamily three = segment_family(2, 3, kUnit);
  REQUIRE(three.size() == 3);
  CHECK(three.curves[0].vertices()[0][0] == doctest::Approx(0.0));
  CHECK(three.curves[1].vertices()[0][0] == doctest::Approx(0.5));
  CHECK(three.curves[2].vertices()[0][0] == doctest::Approx(1.0));
  CHECK(three.curves[1].vertices()[0][1] == doctest::Approx(0.0));
  CHECK(three.curves[1].vertices()[1][1] == doctest::Approx(1.0));

  CurveFamily one = segment_family(1, 1, kUnit);
  REQUIRE(one.size() == 1);
  CHECK(one.curves[0].vertices()[0][1] == doctest::Approx(0.5));  // mid-height horizontal

  CurveFamily wide = segment_family(2, 101, kWindow);
  bool has_zero = false;
  for (const auto& c : wide.curves) has_zero = has_zero || c.vertices()[0][0] == 0.0;
  CHECK(has_zero);
  CHECK(wide.inside(kWindow));
}

TEST_CASE("curves_meeting_set: line mask, empty mask, full mask") {
  BoxGrid g = grid2(129, 65, kWindow);
  CurveFamily fam = segment_family(2, 101, kWindow);
  double step = g.spacing(0) / 2.0;

  ScalarField mask = ScalarField::from_function(
      g, [&](const Point& p) { return std::abs(p[0]) <= g.spacing(0) / 4.0 ? 1.0 : 0.0; });
  CurveFamily hit = curves_meeting_set(fam, mask, step);
  REQUIRE(hit.size() == 1);
  CHECK(hit.curves[0].vertices()[0][0] == doctest::Approx(0.0));

  CHECK(curves_meeting_set(fam, ScalarField(g, 0.0), step).size() == 0);
  CHECK(curves_meeting_set(fam, ScalarField(g, 1.0), step).size() == fam.size());
}

TEST_CASE("curvev1: round trip with separators and malformed input") {
  CurveFamily fam = segment_family(2, 3, kUnit);
  fam.curves.emplace_back(std::vector<Point>{make_point(0.1, 0.2), make_point(0.5, 0.9), make_point(0.9, 0.1)});
  std::ostringstream os;
  write_curvev1(os, fam);
  std::istringstream is(os.str());
  CurveFamily back = read_curvev1(is);
  REQUIRE(back.size() == fam.size());
  for (std::size_t c = 0; c < fam.size(); ++c) {
    REQUIRE(back.curves[c].vertices().size() == fam.curves[c].vertices().size());
    CHECK(back.curves[c].length() == fam.curves[c].length());
  }
  std::istringstream bad("curvev1 2 1\n0 0\n");
  CHECK_THROWS_AS(read_curvev1(bad), InputError);
}
