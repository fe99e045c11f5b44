#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/modulus.hpp"

namespace orlicz {

// One axis-parallel grid line: the slice axis, the transverse lattice
// index, and the node values read along the line.
struct LineSlice {
  int axis = 1;  // 1-based
  std::array<int, 3> transverse_idx{0, 0, 0};
  Point transverse_coord;  // slice-axis slot carries the line's start
  std::vector<double> values;
};

LineSlice extract_slice(const ScalarField& f, int axis, const std::array<int, 3>& transverse_idx);

enum class SliceVerdict { ac_at_scale, nac, indeterminate };

std::string slice_verdict_name(SliceVerdict v);

struct SliceCheck {
  std::array<int, 3> transverse_idx{0, 0, 0};  // coarse lattice index, slice axis slot zero
  double max_inc_coarse = 0.0;
  double max_inc_fine = 0.0;
  SliceVerdict verdict = SliceVerdict::indeterminate;
};

struct AxisSliceReport {
  int axis = 1;  // 1-based
  std::vector<SliceCheck> slices;
  double nac_fraction = 0.0;
  double ac_fraction = 0.0;
  double indeterminate_fraction = 0.0;
};

struct ACReport {
  std::vector<AxisSliceReport> axes;
  double max_nac_fraction() const;
};

// Two-resolution absolute-continuity surrogate on axis-parallel grid lines.
// A slice is NAC when its largest single-step increment exceeds the
// effective tolerance and fails to shrink by 1.5x from resolution h to h/2;
// persistent jumps survive refinement, Lipschitz kinks do not.
// `fine` must refine `coarse` (every cell split in two).
ACReport acl_check(const ScalarField& coarse, const ScalarField& fine, double jump_tol);

struct GradientField {
  std::vector<ScalarField> partials;
  ScalarField magnitude;
};

// Central differences inside, one-sided (3-point where possible) at faces.
GradientField gradient(const ScalarField& u);

struct SobolevReport {
  MembershipReport u_membership;
  MembershipReport grad_membership;
  ACReport acl;
  bool acl_ok = false;
  double u_norm = 0.0;
  double grad_norm = 0.0;
  double w_norm = 0.0;  // ||u|| + ||grad u||
  bool acl_route = false;
  std::string note;
};

SobolevReport sobolev_report(const PhiFunction& phi, const ScalarField& coarse, const ScalarField& fine,
                             double jump_tol, double tol = 1e-8, double nac_fraction_tol = 0.005);

struct AccThresholds {
  double jump_tol = 1e-9;
  WitnessThresholds witness;
  bool estimate_when_violated = true;
  ModulusOptions modulus_opts;
};

struct CurveFlagCheck {
  double max_inc_coarse = 0.0;
  double max_inc_fine = 0.0;
  bool flagged = false;
};

struct AccReport {
  std::vector<CurveFlagCheck> curves;
  std::vector<std::size_t> flagged;
  std::string verdict;  // "vacuously-ACC" | "ACC-certified-at-scale" | "ACC-violated-at-scale"
  std::optional<WitnessReport> witness_report;
  std::optional<double> flagged_modulus_estimate;
};

// Flags curves where u∘gamma shows a persistent jump under arc-step
// refinement; a supplied witness is then checked on the flagged sub-family.
AccReport acc_check(const ScalarField& coarse, const ScalarField& fine, const CurveFamily& family,
                    const ScalarField* witness, const PhiFunction& phi, const AccThresholds& thresholds = {});

struct FugledeOptions {
  int max_k = 16;
  double norm_tol = 1e-8;
  double bound_slack = 1e-7;  // relative slack against 2^{-k}, absorbs bisection bias
  double integral_step = 0.0;  // 0 -> min cell / 2
  WitnessThresholds divergence;
  double triangle_constant = 1.0;
};

struct FugledeReport {
  std::vector<double> norms;  // per supplied field
  struct Selected {
    int k = 0;
    std::size_t index = 0;
    double norm = 0.0;
  };
  std::vector<Selected> selected;
  int achieved_k = 0;
  std::string note;  // set when the geometric bound ran out of indices
  struct CauchyRow {
    int j = 0;
    double tail_norm = 0.0;
    double bound = 0.0;
    bool ok = false;
  };
  std::vector<CauchyRow> cauchy;
  std::vector<std::vector<double>> curve_integrals;  // [selected k][curve]
  std::vector<std::size_t> flagged;
  WitnessReport majorant_report;  // majorant w on the flagged sub-family
  double w_min_flagged_integral = 0.0;
  ScalarField majorant;
  ScalarField pointwise_liminf;  // nodewise min over the tail half of the input
};

// Greedy-first-fit selection of a subsequence with ||v_k|| <= 2^{-k},
// telescoping majorant partial sums, per-curve integral decay, and the
// flagged candidate-exceptional sub-family with its w/m certificate.
FugledeReport fuglede_subsequence(const PhiFunction& phi, const std::vector<ScalarField>& seq,
                                  const CurveFamily& family, const FugledeOptions& opts = {});

}  // namespace orlicz
