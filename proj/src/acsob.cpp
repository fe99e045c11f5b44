#include "orlicz/acsob.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/util.hpp"

namespace orlicz {

std::string slice_verdict_name(SliceVerdict v) {
  switch (v) {
    case SliceVerdict::ac_at_scale: return "AC-at-scale";
    case SliceVerdict::nac: return "NAC";
    default: return "indeterminate";
  }
}

LineSlice extract_slice(const ScalarField& f, int axis, const std::array<int, 3>& transverse_idx) {
  const BoxGrid& g = f.grid();
  if (axis < 1 || axis > g.dim()) throw InputError("extract_slice: bad axis");
  int k = axis - 1;
  LineSlice slice;
  slice.axis = axis;
  slice.transverse_idx = transverse_idx;
  slice.transverse_idx[static_cast<std::size_t>(k)] = 0;
  for (int j = 0; j < g.dim(); ++j) {
    if (j == k) continue;
    if (transverse_idx[static_cast<std::size_t>(j)] < 0 || transverse_idx[static_cast<std::size_t>(j)] >= g.count(j))
      throw InputError("extract_slice: transverse index out of range");
  }
  slice.transverse_coord = g.node(slice.transverse_idx);
  std::array<int, 3> idx = slice.transverse_idx;
  slice.values.resize(static_cast<std::size_t>(g.count(k)));
  for (int i = 0; i < g.count(k); ++i) {
    idx[static_cast<std::size_t>(k)] = i;
    slice.values[static_cast<std::size_t>(i)] = f.at(g.flat(idx));
  }
  return slice;
}

double ACReport::max_nac_fraction() const {
  double m = 0.0;
  for (const auto& ax : axes) m = std::max(m, ax.nac_fraction);
  return m;
}

namespace {

struct IncrementStats {
  double max_inc = 0.0;
  double median_inc = 0.0;
};

IncrementStats line_increments(const std::vector<double>& vals) {
  IncrementStats st;
  if (vals.size() < 2) return st;
  std::vector<double> incs(vals.size() - 1);
  for (std::size_t i = 1; i < vals.size(); ++i) {
    double a = vals[i - 1], b = vals[i];
    double d = (std::isinf(a) && std::isinf(b)) ? 0.0 : std::abs(b - a);
    incs[i - 1] = d;
    st.max_inc = std::max(st.max_inc, d);
  }
  std::nth_element(incs.begin(), incs.begin() + static_cast<long>(incs.size() / 2), incs.end());
  st.median_inc = incs[incs.size() / 2];
  return st;
}

// Persistent-jump verdict: NAC wins over AC when both predicates hold, since
// a genuine jump satisfies the AC bound trivially (fine max <= coarse max).
SliceVerdict judge(const IncrementStats& coarse, const IncrementStats& fine, double jump_tol) {
  double tol_eff = std::max(jump_tol, 10.0 * fine.median_inc);
  if (std::isinf(fine.max_inc)) return SliceVerdict::nac;
  if (fine.max_inc > tol_eff && 1.5 * fine.max_inc > coarse.max_inc) return SliceVerdict::nac;
  if (fine.max_inc <= std::max(tol_eff, coarse.max_inc)) return SliceVerdict::ac_at_scale;
  return SliceVerdict::indeterminate;
}

std::vector<double> sample_along(const ScalarField& f, const Curve& gamma, double step) {
  int pieces = std::max(1, static_cast<int>(std::ceil(gamma.length() / step)));
  std::vector<double> vals(static_cast<std::size_t>(pieces) + 1);
  for (int i = 0; i <= pieces; ++i)
    vals[static_cast<std::size_t>(i)] = f.sample(gamma.at(gamma.length() * i / pieces));
  return vals;
}

}  // namespace

ACReport acl_check(const ScalarField& coarse, const ScalarField& fine, double jump_tol) {
  if (!coarse.grid().refines_to(fine.grid()))
    throw InputError("acl_check: second field must sample the same box at half the cell size");
  ACReport rep;
  const BoxGrid& g = coarse.grid();
  int dim = g.dim();
  for (int axis = 0; axis < dim; ++axis) {
    AxisSliceReport ax;
    ax.axis = axis + 1;
    // enumerate transverse lattice indices (the slice axis slot stays 0)
    std::array<int, 3> t{0, 0, 0};
    std::vector<int> others;
    for (int k = 0; k < dim; ++k)
      if (k != axis) others.push_back(k);
    std::size_t total = 1;
    for (int k : others) total *= static_cast<std::size_t>(g.count(k));
    for (std::size_t flat_t = 0; flat_t < total; ++flat_t) {
      std::size_t rem = flat_t;
      for (auto it = others.rbegin(); it != others.rend(); ++it) {
        auto c = static_cast<std::size_t>(g.count(*it));
        t[static_cast<std::size_t>(*it)] = static_cast<int>(rem % c);
        rem /= c;
      }
      std::array<int, 3> t_fine = t;
      for (int k : others) t_fine[static_cast<std::size_t>(k)] *= 2;

      SliceCheck check;
      check.transverse_idx = t;
      auto cs = line_increments(extract_slice(coarse, axis + 1, t).values);
      auto fs = line_increments(extract_slice(fine, axis + 1, t_fine).values);
      check.max_inc_coarse = cs.max_inc;
      check.max_inc_fine = fs.max_inc;
      check.verdict = judge(cs, fs, jump_tol);
      ax.slices.push_back(check);
    }
    std::size_t nac = 0, ac = 0, ind = 0;
    for (const auto& s : ax.slices) {
      if (s.verdict == SliceVerdict::nac) ++nac;
      else if (s.verdict == SliceVerdict::ac_at_scale) ++ac;
      else ++ind;
    }
    double n = static_cast<double>(ax.slices.size());
    ax.nac_fraction = static_cast<double>(nac) / n;
    ax.ac_fraction = static_cast<double>(ac) / n;
    ax.indeterminate_fraction = static_cast<double>(ind) / n;
    rep.axes.push_back(std::move(ax));
  }
  return rep;
}

GradientField gradient(const ScalarField& u) {
  if (u.has_infinite()) throw InputError("gradient: field must be finite-valued");
  const BoxGrid& g = u.grid();
  int dim = g.dim();
  GradientField out;
  out.partials.reserve(static_cast<std::size_t>(dim));
  std::vector<std::vector<double>> parts(static_cast<std::size_t>(dim),
                                         std::vector<double>(g.node_count(), 0.0));
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    auto idx = g.unflat(i);
    for (int k = 0; k < dim; ++k) {
      auto ks = static_cast<std::size_t>(k);
      double h = g.spacing(k);
      int m = g.count(k);
      int pos = idx[ks];
      auto val_at = [&](int j) {
        auto jdx = idx;
        jdx[ks] = j;
        return u.at(g.flat(jdx));
      };
      double d;
      if (pos > 0 && pos < m - 1) {
        d = (val_at(pos + 1) - val_at(pos - 1)) / (2.0 * h);
      } else if (m >= 3) {
        if (pos == 0)
          d = (-3.0 * val_at(0) + 4.0 * val_at(1) - val_at(2)) / (2.0 * h);
        else
          d = (3.0 * val_at(m - 1) - 4.0 * val_at(m - 2) + val_at(m - 3)) / (2.0 * h);
      } else {
        d = (val_at(1) - val_at(0)) / h;
      }
      parts[ks][i] = d;
    }
  }
  std::vector<double> mag(g.node_count(), 0.0);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += parts[static_cast<std::size_t>(k)][i] * parts[static_cast<std::size_t>(k)][i];
    mag[i] = std::sqrt(s);
  }
  for (int k = 0; k < dim; ++k) out.partials.emplace_back(g, std::move(parts[static_cast<std::size_t>(k)]));
  out.magnitude = ScalarField(g, std::move(mag));
  return out;
}

SobolevReport sobolev_report(const PhiFunction& phi, const ScalarField& coarse, const ScalarField& fine,
                             double jump_tol, double tol, double nac_fraction_tol) {
  SobolevReport rep;
  rep.u_membership = space_membership(phi, fine);
  GradientField grad = gradient(fine);
  rep.grad_membership = space_membership(phi, grad.magnitude);
  rep.acl = acl_check(coarse, fine, jump_tol);
  rep.acl_ok = rep.acl.max_nac_fraction() <= nac_fraction_tol;
  rep.u_norm = luxemburg_norm_value(phi, fine, tol);
  rep.grad_norm = luxemburg_norm_value(phi, grad.magnitude, tol);
  rep.w_norm = rep.u_norm + rep.grad_norm;
  rep.acl_route = rep.u_membership.member() && rep.grad_membership.member() && rep.acl_ok;
  if (!rep.acl_route)
    rep.note = rep.acl_ok ? "membership failed; not established via the ACL route"
                          : "NAC slice fraction too large; not established via the ACL route";
  return rep;
}

AccReport acc_check(const ScalarField& coarse, const ScalarField& fine, const CurveFamily& family,
                    const ScalarField* witness, const PhiFunction& phi, const AccThresholds& thresholds) {
  if (!coarse.grid().refines_to(fine.grid()))
    throw InputError("acc_check: second field must sample the same box at half the cell size");
  AccReport rep;
  double h = kInf;
  for (int k = 0; k < coarse.grid().dim(); ++k) h = std::min(h, coarse.grid().spacing(k));
  CurveFamily flagged_family;
  flagged_family.provenance = family.provenance + " | NAC-flagged";
  for (std::size_t c = 0; c < family.curves.size(); ++c) {
    const Curve& gamma = family.curves[c];
    CurveFlagCheck check;
    auto cs = line_increments(sample_along(coarse, gamma, h));
    auto fs = line_increments(sample_along(fine, gamma, h / 2.0));
    check.max_inc_coarse = cs.max_inc;
    check.max_inc_fine = fs.max_inc;
    check.flagged = judge(cs, fs, thresholds.jump_tol) == SliceVerdict::nac;
    if (check.flagged) {
      rep.flagged.push_back(c);
      flagged_family.curves.push_back(gamma);
    }
    rep.curves.push_back(check);
  }

  if (rep.flagged.empty()) {
    rep.verdict = "vacuously-ACC";
    return rep;
  }
  if (witness) {
    rep.witness_report = verify_exceptional_witness(*witness, flagged_family, phi, thresholds.witness);
    if (rep.witness_report->all_certified) {
      rep.verdict = "ACC-certified-at-scale";
      return rep;
    }
  }
  rep.verdict = "ACC-violated-at-scale";
  if (thresholds.estimate_when_violated && phi.is_convex) {
    rep.flagged_modulus_estimate =
        estimate_modulus_norm(phi, flagged_family, fine.grid(), thresholds.modulus_opts).norm_estimate;
  }
  return rep;
}

FugledeReport fuglede_subsequence(const PhiFunction& phi, const std::vector<ScalarField>& seq,
                                  const CurveFamily& family, const FugledeOptions& opts) {
  if (seq.empty()) throw InputError("fuglede_subsequence: empty sequence");
  const BoxGrid& grid = seq.front().grid();
  for (const auto& f : seq) {
    if (!f.grid().same_layout(grid)) throw InputError("fuglede_subsequence: mixed grids in the sequence");
    if (f.kind() != FieldKind::nonneg) throw InputError("fuglede_subsequence: fields must be nonnegative");
  }
  FugledeReport rep;
  NormOptions nopts;
  nopts.tol = opts.norm_tol;
  rep.norms.reserve(seq.size());
  for (const auto& f : seq) rep.norms.push_back(luxemburg_norm(phi, f, nopts).value);

  // greedy first fit against the geometric bound
  std::size_t next = 0;
  for (int k = 1; k <= opts.max_k; ++k) {
    double bound = std::pow(2.0, -k);
    std::size_t pick = seq.size();
    for (std::size_t i = next; i < seq.size(); ++i) {
      if (rep.norms[i] <= bound * (1.0 + opts.bound_slack)) {
        pick = i;
        break;
      }
    }
    if (pick == seq.size()) {
      rep.note = "geometric bound 2^-" + std::to_string(k) + " unattained within the sequence; partial tail reported";
      break;
    }
    rep.selected.push_back({k, pick, rep.norms[pick]});
    rep.achieved_k = k;
    next = pick + 1;
  }

  std::size_t K = rep.selected.size();
  double h = kInf;
  for (int k = 0; k < grid.dim(); ++k) h = std::min(h, grid.spacing(k));
  double step = opts.integral_step > 0.0 ? opts.integral_step : 0.5 * h;

  // telescoping tails ||w_K - w_j|| built by summing, never subtracting
  for (std::size_t j = 1; j + 1 <= K; ++j) {
    ScalarField tail = seq[rep.selected[j].index];
    for (std::size_t k = j + 1; k < K; ++k) tail = field_sum(tail, seq[rep.selected[k].index]);
    FugledeReport::CauchyRow row;
    row.j = static_cast<int>(j);
    row.tail_norm = luxemburg_norm(phi, tail, nopts).value;
    row.bound = std::pow(2.0, -static_cast<double>(j)) * opts.triangle_constant;
    row.ok = row.tail_norm < row.bound;
    rep.cauchy.push_back(row);
  }

  rep.curve_integrals.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    rep.curve_integrals[k].reserve(family.size());
    for (const Curve& gamma : family.curves)
      rep.curve_integrals[k].push_back(curve_integral(seq[rep.selected[k].index], gamma, step));
  }

  // majorant w and the divergence-flagged sub-family
  ScalarField w(grid, 0.0);
  for (const auto& sel : rep.selected) w = field_sum(w, seq[sel.index]);
  rep.majorant = w;
  WitnessThresholds div = opts.divergence;
  CurveFamily flagged_family;
  flagged_family.provenance = family.provenance + " | w-divergent";
  double coarse_step = div.coarse_step > 0.0 ? div.coarse_step : h;
  double fine_step = div.fine_step > 0.0 ? div.fine_step : h / 4.0;
  for (std::size_t c = 0; c < family.curves.size(); ++c) {
    double ic = curve_integral(w, family.curves[c], coarse_step);
    double iff = curve_integral(w, family.curves[c], fine_step);
    if (iff >= div.growth_factor * ic && iff >= div.abs_threshold) {
      rep.flagged.push_back(c);
      flagged_family.curves.push_back(family.curves[c]);
    }
  }
  rep.majorant_report = verify_exceptional_witness(w, flagged_family, phi, div);
  rep.w_min_flagged_integral = kInf;
  for (const auto& check : rep.majorant_report.per_curve)
    rep.w_min_flagged_integral = std::min(rep.w_min_flagged_integral, check.fine_integral);
  if (rep.majorant_report.per_curve.empty()) rep.w_min_flagged_integral = 0.0;

  // nodewise liminf surrogate: min over the tail half of the supplied sequence
  std::size_t tail_start = seq.size() / 2;
  std::vector<double> liminf(grid.node_count(), kInf);
  for (std::size_t i = tail_start; i < seq.size(); ++i)
    for (std::size_t nidx = 0; nidx < liminf.size(); ++nidx) liminf[nidx] = std::min(liminf[nidx], seq[i].at(nidx));
  rep.pointwise_liminf = ScalarField(grid, std::move(liminf));
  return rep;
}

}  // namespace orlicz
