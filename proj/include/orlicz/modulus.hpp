#pragma once

#include <string>
#include <vector>

#include "orlicz/curve.hpp"
#include "orlicz/norms.hpp"

namespace orlicz {

struct ModulusOptions {
  int iterations = 5000;       // subgradient iterations per solve
  int inner_iterations = 1200; // per feasibility probe in the norm route
  double step_coeff = 0.1;     // alpha_k = step_coeff * (1 + max u0) / sqrt(k)
  double curve_step = 0.0;     // arc sampling step; 0 -> half min cell
  double feas_eps = 1e-3;      // modular(u/tau) <= 1 + feas_eps declares tau feasible
  double bisect_rel = 1e-2;    // relative width target of the outer bisection
};

struct ModulusResult {
  double norm_estimate = 0.0;
  double norm_lo = 0.0;  // largest tau seen infeasible (norm route)
  double norm_hi = 0.0;
  double modular_estimate = 0.0;
  ScalarField density;            // admissible witness achieving the estimate
  std::vector<double> residuals;  // per-curve integral - 1 of the density
  int iterations = 0;
  double final_step = 0.0;
  std::string note;
};

// Minimize the discrete modular over nonnegative grid densities subject to
// per-curve line-integral constraints >= 1 (projected subgradient with
// per-violated-constraint multiplicative lifts). The returned density is
// rescaled to exact admissibility, so the estimate is a certified discrete
// upper bound.
ModulusResult estimate_modulus_modular(const PhiFunction& phi, const CurveFamily& family, const BoxGrid& grid,
                                       const ModulusOptions& opts = {});

// Outer bisection on the norm level tau; inner feasibility asks for an
// admissible u with modular(u/tau) <= 1, solved by the same machinery with
// the rescaled integrand.
ModulusResult estimate_modulus_norm(const PhiFunction& phi, const CurveFamily& family, const BoxGrid& grid,
                                    const ModulusOptions& opts = {});

struct WitnessThresholds {
  double growth_factor = 4.0;
  double abs_threshold = 1e3;
  double coarse_step = 0.0;  // 0 -> min cell
  double fine_step = 0.0;    // 0 -> min cell / 4
};

struct WitnessCurveCheck {
  double coarse_integral = 0.0;
  double fine_integral = 0.0;
  bool certified = false;
};

struct WitnessReport {
  MembershipReport membership;
  std::vector<WitnessCurveCheck> per_curve;
  bool all_certified = false;
  std::string verdict;  // "certified-at-scale" | "not-certified"
};

// Checks the witness route to exceptionality: v in L^phi at desk scale and
// divergence-certified integrals on every curve of the family.
WitnessReport verify_exceptional_witness(const ScalarField& v, const CurveFamily& family, const PhiFunction& phi,
                                         const WitnessThresholds& thresholds = {});

struct NestedFamilyPair {
  CurveFamily sub;
  CurveFamily full;
};

struct WitnessUnionCase {
  PhiFunction phi;
  ScalarField v1, v2;
  CurveFamily f1, f2;
};

struct ModulusPropertiesReport {
  struct MonotoneCheck {
    double est_sub = 0.0;
    double est_full = 0.0;
    bool ok = false;
  };
  struct UnionCheck {
    bool v1_ok = false, v2_ok = false, sum_ok = false;
    double norm_sum_ratio = 0.0;  // ||v1+v2|| / (||v1|| + ||v2||)
    bool ok = false;
  };
  std::vector<MonotoneCheck> monotone;
  std::vector<UnionCheck> unions;
  bool all_ok = true;
};

// Inclusion monotonicity of the estimates on nested pairs plus
// summed-witness certification of unions of exceptional families.
ModulusPropertiesReport check_modulus_properties(const PhiFunction& phi, const std::vector<NestedFamilyPair>& nested,
                                                 const std::vector<WitnessUnionCase>& unions, const BoxGrid& grid,
                                                 const ModulusOptions& opts = {}, double tol = 0.05);

}  // namespace orlicz
