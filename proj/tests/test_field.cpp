#include <doctest.h>

#include <cmath>
#include <sstream>

#include "orlicz/builtin.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/acsob.hpp"
#include "orlicz/norms.hpp"
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

// closed-form modular of a constant field under ramp: max(c-1,0) * area
double ramp_modular_const(double c, double area) { return std::max(c - 1.0, 0.0) * area; }

}  // namespace

TEST_CASE("grid basics: weights sum to the volume, node indexing is bijective") {
  BoxGrid g = grid2(9, 5, box2(0, 2, -1, 1));
  double total = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    total += g.weight(i);
    CHECK(g.flat(g.unflat(i)) == i);
  }
  CHECK(total == doctest::Approx(4.0));
  CHECK(g.refines_to(grid2(17, 9, box2(0, 2, -1, 1))));
  CHECK_FALSE(g.refines_to(grid2(18, 9, box2(0, 2, -1, 1))));
  CHECK_THROWS_AS(grid2(1, 5), InputError);
}

TEST_CASE("modular: zero field, ramp at 1, constant powers") {
  BoxGrid g = grid2(65, 65);
  for (const auto& phi : {phi_power(2), phi_ramp(), phi_orlicz("tlog")})
    CHECK(modular(phi, ScalarField(g, 0.0)) == 0.0);
  CHECK(modular(phi_ramp(), ScalarField(g, 1.0)) == 0.0);
  for (double c : {0.5, 1.0, 3.0})
    CHECK(modular(phi_power(2), ScalarField(g, c)) == doctest::Approx(c * c).epsilon(1e-12));
  CHECK(modular(phi_ramp(), ScalarField(g, 2.5)) == doctest::Approx(ramp_modular_const(2.5, 1.0)));
}

TEST_CASE("modular: +inf at a positively weighted node is absorbing") {
  BoxGrid g = grid2(5, 5);
  std::vector<double> vals(g.node_count(), 1.0);
  vals[12] = kInf;
  CHECK(std::isinf(modular(phi_power(2), ScalarField(g, vals))));
}

TEST_CASE("modular: grid outside the integrand domain is an input error") {
  PhiFunction ve = phi_variable_exponent(1.5, 3.0, 0, kUnit);
  CHECK_THROWS_AS(modular(ve, ScalarField(grid2(9, 9, kWindow), 1.0)), InputError);
}

TEST_CASE("luxemburg_norm: power(2) and ramp closed forms") {
  BoxGrid g = grid2(65, 65);
  NormResult unit = luxemburg_norm(phi_power(2), ScalarField(g, 1.0));
  CHECK(unit.value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(unit.modular_at_hi <= 1.0);
  CHECK(unit.lambda_lo <= unit.value);

  // ramp: rho(1/lambda) = 1/lambda - 1 <= 1  iff  lambda >= 1/2
  NormResult ramp = luxemburg_norm(phi_ramp(), ScalarField(g, 1.0));
  CHECK(ramp.value == doctest::Approx(0.5).epsilon(1e-7));

  CHECK(luxemburg_norm(phi_power(2), ScalarField(g, 0.0)).value == 0.0);
}

TEST_CASE("luxemburg_norm: the gate witness has zero modular and unit norm") {
  BoxGrid g = grid2(129, 65, kWindow);
  PhiFunction gate = phi_radial_gate();
  ScalarField v = builtin::inv_abs_field(g, 1);
  CHECK(modular(gate, v) == 0.0);
  NormResult nr = luxemburg_norm(gate, v);
  CHECK(nr.value == doctest::Approx(1.0).epsilon(1e-6));
  // just below the norm the gate opens everywhere and the modular jumps
  CHECK(modular(gate, field_scale(v, 1.0 / 0.99)) > 1.0);
}

TEST_CASE("luxemburg_norm: monotone modular along the bisection trace") {
  BoxGrid g = grid2(33, 33);
  ScalarField f = ScalarField::from_function(g, [](const Point& p) { return 0.3 + p[0] * p[1]; });
  for (const auto& phi : {phi_power(2), phi_ramp(), phi_orlicz("exp_minus")}) {
    NormResult nr = luxemburg_norm(phi, f);
    auto trace = nr.trace;
    std::sort(trace.begin(), trace.end());
    for (std::size_t i = 1; i < trace.size(); ++i)
      CHECK(trace[i].second <= trace[i - 1].second + 1e-9 * (1.0 + std::abs(trace[i - 1].second)));
  }
}

TEST_CASE("luxemburg_norm: a non-monotone integrand trips the integrity check") {
  // Plateau levels arranged so the deterministic bisection from
  // [1e-8, 1e8] first meets rho = 1.5 and then rho = 3 at a larger lambda,
  // i.e. the modular increased along lambda.
  PhiFunction bumpy = phi_custom(
      "bumpy",
      [](const Point&, double t) {
        if (t <= 0.34) return 0.0;
        if (t <= 0.5) return 3.0;
        if (t <= 0.9) return 1.5;
        return t;
      },
      false, true, true);
  BoxGrid g(2, {9, 9, 1}, [] {
    Box b;
    b.dim = 2;
    b.lo = {0, 0, 0};
    b.hi = {1, 1, 0};
    return b;
  }());
  CHECK_THROWS_AS(luxemburg_norm(bumpy, ScalarField(g, 1.0)), IntegrityError);
}

TEST_CASE("space membership: witness is a member, +inf under power is not") {
  BoxGrid g = grid2(65, 33, kWindow);
  ScalarField v = builtin::inv_abs_field(g, 1);
  CHECK(space_membership(phi_radial_gate(), v).member());
  CHECK_FALSE(space_membership(phi_power(2), v).member());
  CHECK(space_membership(phi_power(2), ScalarField(g, 3.0)).member());
}

TEST_CASE("holder_check: equality case, zero case, and bilinear products") {
  BoxGrid g = grid2(65, 65);
  ScalarField one(g, 1.0);
  HolderReport eq = holder_check(phi_power(2), one, one);
  CHECK(eq.pass);
  CHECK(eq.lhs == doctest::Approx(1.0));
  CHECK(eq.norm_f == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eq.norm_g_conj == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(eq.lhs - eq.rhs) <= 1e-3);

  HolderReport zero = holder_check(phi_power(2), ScalarField(g, 0.0), one);
  CHECK(zero.pass);
  CHECK(zero.lhs == 0.0);

  ScalarField y = ScalarField::from_function(g, [](const Point& p) { return p[0]; });
  ScalarField z = ScalarField::from_function(g, [](const Point& p) { return p[1]; });
  HolderReport yz = holder_check(phi_power(2), y, z);
  CHECK(yz.pass);
  CHECK(yz.lhs == doctest::Approx(0.25));
  // ||y||_2 = 1/sqrt(3), ||z||_{phi*} with phi*(s)=s^2/4 gives 1/sqrt(12)
  CHECK(yz.rhs == doctest::Approx(2.0 / std::sqrt(36.0)).epsilon(1e-3));

  CHECK_THROWS_AS(holder_check(phi_radial_gate(), one, one), UnsupportedError);
}

TEST_CASE("norm_modular_bounds: small-norm and aDec regimes") {
  BoxGrid g = grid2(65, 65);
  PhiFunction p2 = phi_power(2);

  NormModularReport small = norm_modular_bounds(p2, ScalarField(g, 0.25));
  CHECK(small.small_norm_applicable);
  CHECK(small.norm == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(small.mod == doctest::Approx(0.0625).epsilon(1e-9));
  CHECK(small.small_norm_ok);

  NormModularReport big = norm_modular_bounds(p2, ScalarField(g, 4.0));
  CHECK_FALSE(big.small_norm_applicable);
  CHECK(big.adec_applicable);
  CHECK(big.norm == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(big.adec_ok);  // 4 <= C * max(16, 4)

  NormModularReport zero = norm_modular_bounds(p2, ScalarField(g, 0.0));
  CHECK(zero.norm == 0.0);
  CHECK(zero.mod == 0.0);

  NormModularReport ramp = norm_modular_bounds(phi_ramp(), ScalarField(g, 0.5));
  CHECK_FALSE(ramp.adec_applicable);  // no declared q_dec
  CHECK(!ramp.note.empty());
}

TEST_CASE("unit ball and homogeneity across a small corpus") {
  BoxGrid g = grid2(33, 33);
  std::vector<ScalarField> fields = {ScalarField(g, 0.7),
                                     ScalarField::from_function(g, [](const Point& p) { return p[0] + 0.1; }),
                                     ScalarField::from_function(g, [](const Point& p) { return p[0] * p[1]; })};
  for (const auto& phi : {phi_power(1), phi_power(2), phi_power(3), phi_ramp(), phi_orlicz("tlog")}) {
    for (const auto& f : fields) {
      NormResult nr = luxemburg_norm(phi, f, {1e-9, 1e-8, 1e8});
      if (nr.value <= 0.0 || std::isinf(nr.value)) continue;
      CHECK(modular(phi, field_scale(f, 1.0 / nr.value)) <= 1.0 + 1e-6);
      for (double c : {0.5, 2.0, 10.0}) {
        double nc = luxemburg_norm_value(phi, field_scale(f, c), 1e-9);
        CHECK(nc == doctest::Approx(c * nr.value).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("p-power cross-check: Luxemburg equals the discrete Lp norm") {
  BoxGrid g = grid2(33, 33);
  ScalarField f = ScalarField::from_function(g, [](const Point& p) { return 0.2 + p[0] * p[0] + 0.5 * p[1]; });
  for (double p : {1.0, 2.0, 3.0}) {
    double lux = luxemburg_norm_value(phi_power(p), f, 1e-9);
    double lp = std::pow(quadrature(f, [p](const Point&, double v) { return std::pow(std::abs(v), p); }), 1.0 / p);
    CHECK(lux == doctest::Approx(lp).epsilon(1e-7));
  }
}

TEST_CASE("quadrature refinement on smooth fields is second order") {
  auto integrate = [](int n) {
    BoxGrid g = grid2(n, n);
    ScalarField f = ScalarField::from_function(g, [](const Point& p) { return p[0] * p[0] * p[1]; });
    return quadrature(f, [](const Point&, double v) { return v; });
  };
  double exact = 1.0 / 6.0;
  double e1 = std::abs(integrate(17) - exact);
  double e2 = std::abs(integrate(33) - exact);
  double e3 = std::abs(integrate(65) - exact);
  CHECK(std::log2(e1 / e2) >= 1.8);
  CHECK(std::log2(e2 / e3) >= 1.8);
}

TEST_CASE("one- and three-dimensional grids: quadrature and gradients") {
  // 1-d: trapezoid of x^2 on [0,2]
  Box b1;
  b1.dim = 1;
  b1.lo = {0, 0, 0};
  b1.hi = {2, 0, 0};
  BoxGrid g1(1, {129, 1, 1}, b1);
  ScalarField f1 = ScalarField::from_function(g1, [](const Point& p) { return p[0] * p[0]; });
  double q1 = quadrature(f1, [](const Point&, double v) { return v; });
  CHECK(q1 == doctest::Approx(8.0 / 3.0).epsilon(1e-4));
  CHECK(luxemburg_norm_value(phi_power(1), f1) == doctest::Approx(q1).epsilon(1e-6));

  // 3-d: volume and an exact-linear gradient
  Box b3;
  b3.dim = 3;
  b3.lo = {0, 0, 0};
  b3.hi = {1, 2, 1};
  BoxGrid g3(3, {9, 17, 9}, b3);
  ScalarField one3(g3, 1.0);
  CHECK(quadrature(one3, [](const Point&, double v) { return v; }) == doctest::Approx(2.0));
  ScalarField lin3 = ScalarField::from_function(g3, [](const Point& p) { return p[0] + 2.0 * p[1] - p[2]; });
  GradientField gr = gradient(lin3);
  REQUIRE(gr.partials.size() == 3);
  for (std::size_t i = 0; i < g3.node_count(); ++i) {
    CHECK(gr.partials[0].at(i) == doctest::Approx(1.0));
    CHECK(gr.partials[1].at(i) == doctest::Approx(2.0));
    CHECK(gr.partials[2].at(i) == doctest::Approx(-1.0));
    CHECK(gr.magnitude.at(i) == doctest::Approx(std::sqrt(6.0)));
  }

  // 3-d curve integral of a linear density along a box diagonal
  ScalarField u3 = ScalarField::from_function(g3, [](const Point& p) { return p[2]; });
  Curve diag(std::vector<Point>{make_point(0, 0, 0), make_point(1, 2, 1)});
  CHECK(curve_integral(u3, diag, 0.01) == doctest::Approx(std::sqrt(6.0) / 2.0).epsilon(1e-6));

  // 1-d fieldv1 round trip
  std::ostringstream os;
  write_fieldv1(os, f1);
  std::istringstream is(os.str());
  ScalarField back = read_fieldv1(is);
  CHECK(back.grid().same_layout(g1));
  CHECK(back.at(64) == f1.at(64));
}

TEST_CASE("fieldv1: 17-digit round trip including inf, and malformed input") {
  BoxGrid g = grid2(5, 3, box2(-1, 1, 0, 1));
  std::vector<double> vals(g.node_count());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::sqrt(2.0) * (static_cast<double>(i) - 4.5) / 7.0;
  vals[7] = kInf;
  ScalarField f(g, vals);

  std::ostringstream os;
  write_fieldv1(os, f);
  std::istringstream is(os.str());
  ScalarField back = read_fieldv1(is);
  REQUIRE(back.grid().same_layout(g));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (std::isinf(vals[i])) CHECK(std::isinf(back.at(i)));
    else CHECK(back.at(i) == vals[i]);  // bit-exact
  }

  std::istringstream bad1("fieldv2 2 2 2 0 1 0 1 1 2 3 4");
  CHECK_THROWS_AS(read_fieldv1(bad1), InputError);
  std::istringstream bad2("fieldv1 2 2 2 0 1 0 1 1 2 3");
  CHECK_THROWS_AS(read_fieldv1(bad2), InputError);
  std::istringstream bad3("fieldv1 2 2 2 0 1 0 1 1 2 3 oops");
  CHECK_THROWS_AS(read_fieldv1(bad3), InputError);
}

TEST_CASE("bilinear sampling: exact on nodes, zero-weight stencil skips inf") {
  BoxGrid g = grid2(5, 5, kWindow);
  ScalarField v = builtin::inv_abs_field(g, 1);
  // on-node sample next to the singular column: the inf neighbor has weight 0
  CHECK(v.sample(make_point(0.5, 0.5)) == doctest::Approx(2.0));
  CHECK(std::isinf(v.sample(make_point(0.0, 0.5))));
  CHECK(std::isinf(v.sample(make_point(0.1, 0.5))));  // strictly inside the inf-adjacent cell
  CHECK_THROWS_AS(v.sample(make_point(3.0, 0.5)), InputError);
}
