#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/field.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

// Trapezoid quadrature of x |-> phi(x, |f(x)|). A +inf integrand value at a
// positively weighted node makes the result +inf.
double modular(const PhiFunction& phi, const ScalarField& f);

// Quadrature of x |-> g(x, f(x)) with the same weighting.
double quadrature(const ScalarField& f, const std::function<double(const Point&, double)>& g);

struct NormResult {
  double value = 0.0;      // smallest verified-feasible lambda (or 0 / +inf)
  double lambda_lo = 0.0;  // largest lambda seen infeasible
  double lambda_hi = 0.0;  // value again, kept for bracket reporting
  double modular_at_hi = 0.0;
  int iterations = 0;
  std::vector<std::pair<double, double>> trace;  // (lambda, modular) visited
};

struct NormOptions {
  double tol = 1e-8;  // relative bracket width target
  double lambda_min = 1e-8;
  double lambda_max = 1e8;
};

// inf{ lambda > 0 : modular(f/lambda) <= 1 } by bracketing bisection.
// Returns 0 when feasible all the way down to lambda_min, +inf when nothing
// up to lambda_max is feasible.
NormResult luxemburg_norm(const PhiFunction& phi, const ScalarField& f, const NormOptions& opts = {});
double luxemburg_norm_value(const PhiFunction& phi, const ScalarField& f, double tol = 1e-8);

struct MembershipReport {
  double norm = 0.0;
  bool norm_finite = false;
  bool small_scale_vanishes = false;  // modular(lambda f) -> 0 as lambda -> 0
  double last_lambda = 0.0;
  double last_modular = 0.0;
  bool member() const { return norm_finite && small_scale_vanishes; }
};

// Operational L^phi membership: finite Luxemburg norm plus vanishing modular
// along lambda = 1, 1/2, 1/4, ...
MembershipReport space_membership(const PhiFunction& phi, const ScalarField& f, double vanish_eps = 1e-9,
                                  double lambda_min = 1e-8);

struct HolderReport {
  double lhs = 0.0;  // integral of |f| |g|
  double rhs = 0.0;  // 2 ||f||_phi ||g||_phi*
  double norm_f = 0.0;
  double norm_g_conj = 0.0;
  bool pass = false;
};

HolderReport holder_check(const PhiFunction& phi, const ScalarField& f, const ScalarField& g, double tol = 1e-6,
                          double conj_t_max = 1e4);

struct NormModularReport {
  double norm = 0.0;
  double mod = 0.0;
  // modular <= C * norm, applicable when norm < 1
  bool small_norm_applicable = false;
  double small_norm_constant = 0.0;
  bool small_norm_ok = true;
  // norm <= C * max(modular, modular^(1/q)), needs a declared q_dec
  bool adec_applicable = false;
  double adec_constant = 0.0;
  bool adec_ok = true;
  std::string note;
};

NormModularReport norm_modular_bounds(const PhiFunction& phi, const ScalarField& f, double tol = 1e-8);

}  // namespace orlicz
