#include <doctest.h>

#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/phi.hpp"
#include "orlicz/util.hpp"

using namespace orlicz;

namespace {

const Box kUnit = [] {
  Box b;
  b.dim = 2;
  b.lo = {0.0, 0.0, 0.0};
  b.hi = {1.0, 1.0, 0.0};
  return b;
}();

const Box kWindow = [] {
  Box b;
  b.dim = 2;
  b.lo = {-1.0, 0.0, 0.0};
  b.hi = {1.0, 1.0, 0.0};
  return b;
}();

// independent oracle: first t on a dense grid with phi(x,t) >= tau
double scan_left_inverse(const PhiFunction& phi, const Point& x, double tau, double t_hi = 64.0) {
  const int n = 4'000'000;
  for (int i = 0; i <= n; ++i) {
    double t = t_hi * i / n;
    if (phi.eval(x, t) >= tau) return t;
  }
  return kInf;
}

// independent oracle: dense-scan Fenchel value
double scan_conjugate(const PhiFunction& phi, const Point& x, double s, double t_hi = 64.0) {
  const int n = 2'000'000;
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    double t = t_hi * i / n;
    double v = phi.eval(x, t);
    if (!std::isinf(v)) best = std::max(best, s * t - v);
  }
  return best;
}

std::vector<PhiFunction> corpus_phis() {
  return {phi_power(1), phi_power(2), phi_power(3), phi_ramp(), phi_orlicz("exp_minus"), phi_orlicz("tlog"),
          phi_variable_exponent(1.5, 3.0, 0, kUnit),
          phi_double_phase(1.5, 3.0, [](const Point& x) { return std::abs(x[0]); }, "abs1"), phi_radial_gate()};
}

}  // namespace

TEST_CASE("eval: closed forms and the gate branches") {
  Point x = make_point(0.3, 0.4);
  CHECK(eval_phi(phi_power(2), x, 3.0) == doctest::Approx(9.0));

  PhiFunction ramp = phi_ramp();
  CHECK(eval_phi(ramp, x, 0.5) == 0.0);
  CHECK(eval_phi(ramp, x, 2.0) == doctest::Approx(1.0));

  PhiFunction gate = phi_radial_gate();
  Point half = make_point(0.5, 0.7);
  CHECK(eval_phi(gate, half, 1.0) == 0.0);  // 1 <= |0.5|^-1 = 2
  CHECK(eval_phi(gate, half, 3.0) == doctest::Approx(3.0));
  Point on_line = make_point(0.0, 0.7);
  CHECK(eval_phi(gate, on_line, 1e9) == 0.0);  // threshold +inf on the singular line
  CHECK(eval_phi(gate, on_line, kInf) == 0.0);

  CHECK(std::isinf(eval_phi(phi_power(2), x, kInf)));
  CHECK_THROWS_AS(eval_phi(phi_power(2), x, -1.0), InputError);
}

TEST_CASE("eval: domain box is enforced") {
  PhiFunction ve = phi_variable_exponent(1.5, 3.0, 0, kUnit);
  CHECK(eval_phi(ve, make_point(0.0, 0.5), 2.0) == doctest::Approx(std::pow(2.0, 1.5)));
  CHECK(eval_phi(ve, make_point(1.0, 0.5), 2.0) == doctest::Approx(8.0));
  CHECK_THROWS_AS(eval_phi(ve, make_point(2.0, 0.5), 1.0), InputError);
}

TEST_CASE("weak Phi-function axioms hold on the corpus samples") {
  SampleSpec spec = SampleSpec::for_box(kUnit);
  for (const auto& phi : corpus_phis()) {
    CAPTURE(phi.name);
    BoxGrid xs(2, {9, 9, 1}, phi.name == "radial_gate" ? kWindow : kUnit);
    for (std::size_t i = 0; i < xs.node_count(); ++i) {
      Point x = xs.node(i);
      CHECK(phi.eval(x, 0.0) == 0.0);
      double prev = 0.0;
      for (double t : {1e-4, 1e-2, 0.5, 1.0, 2.0, 8.0, 64.0, 1e4}) {
        double v = phi.eval(x, t);
        CHECK(v >= prev);
        prev = v;
      }
      if (x[0] != 0.0 || phi.name != "radial_gate") CHECK(phi.eval(x, 1e9) > 1e6);
    }
    if (phi.name != "radial_gate") {
      double L = sampled_ainc_constant(phi, 1.0, spec);
      CHECK(L <= 1.0 + 1e-9);  // every corpus member has an increasing phi/t
    }
  }
}

TEST_CASE("left_inverse: trivial and closed-form cases") {
  Point x = make_point(0.5, 0.5);
  CHECK(left_inverse(phi_power(2), x, 4.0, 1e-9) == doctest::Approx(2.0).epsilon(1e-7));
  for (const auto& phi : corpus_phis()) CHECK(left_inverse(phi, make_point(0.25, 0.5), 0.0, 1e-9) == 0.0);

  // ramp, tau = 0.5: dense-scan oracle pins 1.5
  double oracle = scan_left_inverse(phi_ramp(), x, 0.5);
  CHECK(oracle == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(left_inverse(phi_ramp(), x, 0.5, 1e-9) == doctest::Approx(1.5).epsilon(1e-7));
}

TEST_CASE("left_inverse: power(p) inverts to tau^(1/p)") {
  for (double p : {1.0, 2.0, 3.0}) {
    PhiFunction phi = phi_power(p);
    for (double tau : {1e-3, 0.1, 1.0, 7.0, 1e3}) {
      double got = left_inverse(phi, make_point(0.1, 0.9), tau, 1e-10);
      CHECK(got == doctest::Approx(std::pow(tau, 1.0 / p)).epsilon(1e-6));
    }
  }
}

TEST_CASE("left_inverse: monotone consistency and +inf on unreachable targets") {
  double tol = 1e-8;
  for (const auto& phi : corpus_phis()) {
    Point x = make_point(0.25, 0.5);
    for (double tau : {0.05, 0.7, 3.0, 40.0}) {
      double t = left_inverse(phi, x, tau, tol);
      if (!std::isinf(t)) CHECK(phi.eval(x, t + 2 * tol) >= tau);
    }
  }
  // the gated line never reaches any positive level
  CHECK(std::isinf(left_inverse(phi_radial_gate(), make_point(0.0, 0.5), 0.5, 1e-9)));
}

TEST_CASE("left_inverse: non-monotone integrand is rejected") {
  PhiFunction bad = phi_custom(
      "broken", [](const Point&, double t) { return t <= 1.0 ? t : (t <= 2.0 ? 2.0 - t : t); }, false, true, true);
  CHECK_THROWS_AS(left_inverse(bad, make_point(0.5, 0.5), 10.0, 1e-9), IntegrityError);
}

TEST_CASE("conjugate: grid-scan oracle values") {
  Point x = make_point(0.5, 0.5);
  // power(2), s=2: sup(2t - t^2) = 1 at t = 1
  CHECK(scan_conjugate(phi_power(2), x, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(conjugate_phi(phi_power(2), x, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  // any phi at s = 0
  for (const auto& phi : corpus_phis()) CHECK(conjugate_phi(phi, make_point(0.25, 0.5), 0.0) == 0.0);
  // ramp, s = 0.5: sup(0.5 t - max(t-1,0)) = 0.5 at t = 1
  CHECK(scan_conjugate(phi_ramp(), x, 0.5) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(conjugate_phi(phi_ramp(), x, 0.5) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("conjugate: closed form of power(p) matches the numeric route") {
  for (double p : {1.5, 2.0, 3.0}) {
    PhiFunction phi = phi_power(p);
    PhiFunction conj = phi_conjugate(phi);
    double pp = p / (p - 1.0);
    double coeff = (p - 1.0) * std::pow(p, -pp);
    for (double s : {0.1, 0.7, 2.0, 11.0}) {
      double closed = coeff * std::pow(s, pp);
      CHECK(conjugate_phi(phi, make_point(0.5, 0.5), s) == doctest::Approx(closed).epsilon(1e-8));
      CHECK(conj.eval(make_point(0.5, 0.5), s) == doctest::Approx(closed).epsilon(1e-8));
    }
  }
}

TEST_CASE("conjugate: tabulated wrapper stays close to the direct scan") {
  PhiFunction phi = phi_orlicz("tlog");
  PhiFunction conj = phi_conjugate(phi);
  for (double s : {0.05, 0.3, 1.0, 3.0, 20.0}) {
    double direct = conjugate_phi(phi, make_point(0.5, 0.5), s);
    CHECK(conj.eval(make_point(0.5, 0.5), s) == doctest::Approx(direct).epsilon(2e-3));
  }
}

TEST_CASE("check_condition: weakA0 on ramp, powers and the gate") {
  SampleSpec unit = SampleSpec::for_box(kUnit);
  ConditionSpec weak;
  weak.kind = ConditionKind::weakA0;

  auto p2 = check_condition(phi_power(2), weak, unit);
  CHECK(p2.verdict == Verdict::pass);
  CHECK(*p2.beta == doctest::Approx(1.0));

  auto ramp = check_condition(phi_ramp(), weak, unit);
  CHECK(ramp.verdict == Verdict::pass);
  CHECK(*ramp.beta == doctest::Approx(2.0));

  SampleSpec window = SampleSpec::for_box(kWindow);
  auto gate = check_condition(phi_radial_gate(), weak, window);
  CHECK(gate.verdict == Verdict::fail);
  REQUIRE(gate.counterexample_x.has_value());
  // every candidate fails at points with |y| < 1/beta; the witness must be one
  CHECK(phi_radial_gate().eval(*gate.counterexample_x, *gate.counterexample_t) < 1.0);
}

TEST_CASE("check_condition: A0 and A1 sanity") {
  SampleSpec unit = SampleSpec::for_box(kUnit);
  ConditionSpec a0;
  a0.kind = ConditionKind::A0;
  auto rep = check_condition(phi_power(2), a0, unit);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(*rep.beta < 1.0);
  CHECK(check_condition(phi_ramp(), a0, unit).verdict == Verdict::pass);
  CHECK(check_condition(phi_radial_gate(), a0, SampleSpec::for_box(kWindow)).verdict == Verdict::fail);

  ConditionSpec a1;
  a1.kind = ConditionKind::A1;
  CHECK(check_condition(phi_power(2), a1, unit).verdict == Verdict::pass);
  CHECK(check_condition(phi_orlicz("tlog"), a1, unit).verdict == Verdict::pass);
}

TEST_CASE("check_condition: A2 is explicitly unsupported") {
  ConditionSpec a2;
  a2.kind = ConditionKind::A2;
  CHECK_THROWS_AS(check_condition(phi_power(2), a2, SampleSpec::for_box(kUnit)), UnsupportedError);
}

TEST_CASE("check_condition: aInc/aDec witnesses and certified failures") {
  SampleSpec unit = SampleSpec::for_box(kUnit);
  ConditionSpec inc;
  inc.kind = ConditionKind::aInc;
  inc.exponent = 2.0;
  auto rep = check_condition(phi_power(2), inc, unit);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(*rep.L == doctest::Approx(1.0));

  inc.exponent = 3.0;  // t^2 / t^3 decays: sampled constant blows past the cap
  CHECK(check_condition(phi_power(2), inc, unit).verdict == Verdict::indeterminate);

  ConditionSpec dec;
  dec.kind = ConditionKind::aDec;
  dec.exponent = 2.0;
  CHECK(check_condition(phi_power(2), dec, unit).verdict == Verdict::pass);
  // ramp/t^q vanishes on (0,1] and later turns positive: certified violation
  auto ramp_dec = check_condition(phi_ramp(), dec, unit);
  CHECK(ramp_dec.verdict == Verdict::fail);
  CHECK(ramp_dec.counterexample_x.has_value());
}

TEST_CASE("remark-style rescaling: weakA0 with delta < 1 lifts to delta = 1") {
  SampleSpec unit = SampleSpec::for_box(kUnit);
  for (const auto& phi : {phi_ramp(), phi_double_phase(1.5, 3.0, [](const Point& x) { return std::abs(x[0]); },
                                                       "abs1")}) {
    CAPTURE(phi.name);
    ConditionSpec weak_delta;
    weak_delta.kind = ConditionKind::weakA0;
    weak_delta.delta = 0.25;
    auto rep = check_condition(phi, weak_delta, unit);
    REQUIRE(rep.verdict == Verdict::pass);
    double a = sampled_ainc_constant(phi, 1.0, unit);
    double beta_lifted = a * *rep.beta / weak_delta.delta;
    auto lifted = check_weak_a0_at(phi, beta_lifted, 1.0, unit);
    CHECK(lifted.verdict == Verdict::pass);
  }
}

TEST_CASE("check_equivalence: reflexive, scaled, and a genuine failure") {
  SampleSpec unit = SampleSpec::for_box(kUnit);
  unit.t_lo = 1e-3;
  unit.t_hi = 1e3;
  for (const auto& phi : corpus_phis()) {
    auto spec = phi.name == "radial_gate" ? SampleSpec::for_box(kWindow) : unit;
    spec.t_lo = 1e-3;
    spec.t_hi = 1e3;
    auto rep = check_equivalence(phi, phi, 1.0, spec);
    CAPTURE(phi.name);
    CHECK(rep.verdict == Verdict::pass);
  }
  CHECK(check_equivalence(phi_power(2), phi_scaled_power(2.0, 2.0), 2.0, unit).verdict == Verdict::pass);
  // symmetry of the sandwich at the same L
  CHECK(check_equivalence(phi_scaled_power(2.0, 2.0), phi_power(2), 2.0, unit).verdict == Verdict::pass);
  for (double L : {1.0, 2.0, 5.0}) {
    auto rep = check_equivalence(phi_power(2), phi_power(3), L, unit);
    CHECK(rep.verdict == Verdict::fail);
    CHECK(rep.counterexample_t.has_value());
  }
}

TEST_CASE("parse_phi round-trips the descriptor family") {
  CHECK(parse_phi("power:2", kUnit).eval(make_point(0.1, 0.1), 3.0) == doctest::Approx(9.0));
  CHECK(parse_phi("ramp", kUnit).eval(make_point(0.1, 0.1), 2.0) == doctest::Approx(1.0));
  CHECK(parse_phi("radial_gate", kWindow).eval(make_point(0.5, 0.1), 3.0) == doctest::Approx(3.0));
  CHECK(parse_phi("scaled_power:2:2", kUnit).eval(make_point(0.1, 0.1), 2.0) == doctest::Approx(8.0));
  CHECK(parse_phi("orlicz:exp_minus", kUnit).eval(make_point(0.1, 0.1), 1.0) == doctest::Approx(std::expm1(1.0)));
  CHECK(parse_phi("varexp:1.5:3:1", kUnit).eval(make_point(0.0, 0.5), 4.0) == doctest::Approx(8.0));
  CHECK(parse_phi("double_phase:1.5:3:const0.5", kUnit).eval(make_point(0.1, 0.1), 1.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_phi("power", kUnit), InputError);
  CHECK_THROWS_AS(parse_phi("nope:1", kUnit), InputError);
}
