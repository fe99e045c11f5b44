#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/grid.hpp"

namespace orlicz {

// Pointwise integrand phi(x,t): non-decreasing in t, phi(x,0)=0,
// phi(x,t) -> inf as t -> inf, with t |-> phi(x,t)/t almost increasing.
// Structural facts (convexity, growth exponents) are declared, not detected.
struct PhiFunction {
  std::string name = "custom";
  bool is_convex = false;
  bool is_left_continuous = false;
  bool x_independent = false;
  std::optional<double> p_inc;    // known (aInc)_p exponent
  std::optional<double> q_dec;    // known (aDec)_q exponent
  std::optional<double> L_const;  // known almost-increasing constant
  std::optional<Box> domain;      // restrict x when set

  std::function<double(const Point&, double)> fn;

  // t may be +inf; returns a value in [0, +inf].
  double eval(const Point& x, double t) const;
};

PhiFunction phi_power(double p);
PhiFunction phi_scaled_power(double c, double p);  // c * t^p
PhiFunction phi_ramp();                            // max(t-1, 0)
// Gate integrand: 0 while t <= |x_1|^{-1}, t above. On the singular line
// x_1 = 0 the threshold is +inf, so the gate never opens there.
PhiFunction phi_radial_gate();
PhiFunction phi_orlicz(const std::string& profile);  // "exp_minus" | "tlog"
PhiFunction phi_variable_exponent(double p_min, double p_max, int axis, const Box& box);
// t^p + a(x) t^q with a(x) >= 0.
PhiFunction phi_double_phase(double p, double q, const std::function<double(const Point&)>& a,
                             const std::string& a_label = "custom");
PhiFunction phi_custom(std::string name, std::function<double(const Point&, double)> fn, bool convex,
                       bool left_continuous, bool x_independent);

// Parse a compact descriptor: "power:2", "ramp", "radial_gate",
// "scaled_power:2:2", "orlicz:exp_minus", "varexp:1.5:3:1",
// "double_phase:1.5:3:abs1" / ":const0.5". Axis arguments are 1-based.
PhiFunction parse_phi(const std::string& descriptor, const Box& box);

double eval_phi(const PhiFunction& phi, const Point& x, double t);

// inf{ t >= 0 : phi(x,t) >= tau }, located by doubling bracket + bisection.
// Returns +inf when no t <= t_max reaches tau.
double left_inverse(const PhiFunction& phi, const Point& x, double tau, double tol, double t_max = 1e8);

// sup_{0<=t<=t_max} (s*t - phi(x,t)), clipped at 0. Dense scan; ternary
// refinement when phi is convex.
double conjugate_phi(const PhiFunction& phi, const Point& x, double s, double t_max = 1e4);

// Conjugate packaged as an integrand, usable in modulars/norms. For
// x-independent phi a tabulated 1-d interpolant is built eagerly.
PhiFunction phi_conjugate(const PhiFunction& phi, double t_max = 1e4);

enum class ConditionKind { A0, weakA0, A1, A2, aInc, aDec };

struct ConditionSpec {
  ConditionKind kind = ConditionKind::weakA0;
  double delta = 1.0;     // weakA0 threshold phi(x,beta) >= delta
  double exponent = 1.0;  // p for aInc, q for aDec
};

struct SampleSpec {
  Box box;
  std::array<int, 3> x_counts{33, 33, 33};
  int t_count = 65;
  double t_lo = 1e-4;
  double t_hi = 1e4;
  std::vector<double> beta_candidates;  // defaults to 129 dyadic values
  double L_cap = 1e3;                   // above this an aInc/aDec scan is inconclusive
  std::vector<Box> balls;               // axis-aligned sub-boxes for (A1)
  int a1_t_count = 17;

  static SampleSpec for_box(const Box& box);
};

enum class Verdict { pass, fail, indeterminate };

struct ConditionReport {
  std::string condition;
  Verdict verdict = Verdict::indeterminate;
  std::optional<double> beta;  // witness constant when pass
  std::optional<double> L;     // witness almost-monotonicity constant
  std::optional<Point> counterexample_x;
  std::optional<Point> counterexample_y;  // second point for (A1)
  std::optional<double> counterexample_t;
  std::string sample_summary;
  std::string note;

  bool passed() const { return verdict == Verdict::pass; }
};

std::string verdict_name(Verdict v);

ConditionReport check_condition(const PhiFunction& phi, const ConditionSpec& cond, const SampleSpec& samples);

// Verify a specific beta instead of scanning the candidate set.
ConditionReport check_weak_a0_at(const PhiFunction& phi, double beta, double delta, const SampleSpec& samples);

// Sandwich psi(x,t/L) <= phi(x,t) <= psi(x,Lt) over the sample set.
ConditionReport check_equivalence(const PhiFunction& phi, const PhiFunction& psi, double L,
                                  const SampleSpec& samples);

// Smallest constant making phi(x,t)/t^p almost increasing over the samples.
double sampled_ainc_constant(const PhiFunction& phi, double p, const SampleSpec& samples);

std::vector<double> default_beta_candidates();

}  // namespace orlicz
