#include "orlicz/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/util.hpp"

namespace orlicz {

namespace {

// Sparse row: discrete line integral along one curve as a linear form in the
// node values, sum(coeff_i * u_i) == curve_integral(interp u).
struct Row {
  std::vector<std::size_t> idx;
  std::vector<double> coeff;
  double length = 0.0;   // row applied to u == 1
  double sq_norm = 0.0;  // for the additive fallback projection
};

struct Constraints {
  std::vector<Row> rows;
  double min_length = 0.0;
};

void accumulate_stencil(const BoxGrid& grid, const Point& p, double w, std::map<std::size_t, double>& into) {
  int dim = grid.dim();
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int k = 0; k < dim; ++k) {
    auto ks = static_cast<std::size_t>(k);
    double t = (p[k] - grid.box().lo[ks]) / grid.spacing(k);
    int cell = static_cast<int>(std::floor(t));
    cell = std::clamp(cell, 0, grid.count(k) - 2);
    base[ks] = cell;
    frac[ks] = std::clamp(t - cell, 0.0, 1.0);
  }
  for (int c = 0; c < (1 << dim); ++c) {
    double cw = w;
    std::array<int, 3> idx = base;
    for (int k = 0; k < dim; ++k) {
      auto ks = static_cast<std::size_t>(k);
      if (c & (1 << k)) {
        cw *= frac[ks];
        idx[ks] += 1;
      } else {
        cw *= 1.0 - frac[ks];
      }
    }
    if (cw != 0.0) into[grid.flat(idx)] += cw;
  }
}

Constraints build_constraints(const CurveFamily& family, const BoxGrid& grid, double step) {
  if (!family.inside(grid.box())) throw InputError("modulus: a curve leaves the density grid box");
  Constraints cs;
  cs.rows.reserve(family.size());
  cs.min_length = kInf;
  for (const Curve& gamma : family.curves) {
    std::map<std::size_t, double> acc;
    const auto& verts = gamma.vertices();
    for (std::size_t i = 1; i < verts.size(); ++i) {
      double seg = 0.0;
      for (int k = 0; k < verts[i].dim; ++k) {
        double d = verts[i][k] - verts[i - 1][k];
        seg += d * d;
      }
      seg = std::sqrt(seg);
      int pieces = std::max(1, static_cast<int>(std::ceil(seg / step)));
      double ds = seg / pieces;
      for (int j = 0; j <= pieces; ++j) {
        Point p = verts[i - 1];
        double t = static_cast<double>(j) / pieces;
        for (int k = 0; k < p.dim; ++k) p[k] = verts[i - 1][k] + t * (verts[i][k] - verts[i - 1][k]);
        double w = (j == 0 || j == pieces) ? 0.5 * ds : ds;
        accumulate_stencil(grid, p, w, acc);
      }
    }
    Row row;
    row.idx.reserve(acc.size());
    row.coeff.reserve(acc.size());
    for (const auto& [i, c] : acc) {
      row.idx.push_back(i);
      row.coeff.push_back(c);
      row.length += c;
      row.sq_norm += c * c;
    }
    if (row.length <= 0.0) throw InputError("modulus: curve has no quadrature coverage on this grid");
    cs.min_length = std::min(cs.min_length, row.length);
    cs.rows.push_back(std::move(row));
  }
  return cs;
}

double row_dot(const Row& row, const std::vector<double>& u) {
  double s = 0.0;
  for (std::size_t j = 0; j < row.idx.size(); ++j) s += row.coeff[j] * u[row.idx[j]];
  return s;
}

// Numeric subgradient of t -> phi(x,t); any value in the subdifferential is
// acceptable for the solver.
double phi_slope(const PhiFunction& phi, const Point& x, double t) {
  double h = 1e-6 * (1.0 + t);
  double lo = t > h ? t - h : 0.0;
  double f1 = phi.eval(x, t + h);
  double f0 = phi.eval(x, lo);
  if (std::isinf(f1) || std::isinf(f0)) return 0.0;
  return (f1 - f0) / (t + h - lo);
}

struct SolveState {
  std::vector<double> best_u;
  double best_objective = kInf;
  int iterations = 0;
  double final_step = 0.0;
};

// Projected subgradient with diminishing step c/sqrt(k); tracks the best
// exactly-rescaled feasible iterate. `stop_below` allows feasibility probes
// to exit as soon as the target is beaten.
SolveState solve_min_modular(const PhiFunction& phi, const Constraints& cs, const BoxGrid& grid, int iterations,
                             double step_coeff, double stop_below = -1.0,
                             const std::vector<double>* warm_start = nullptr) {
  std::size_t n = grid.node_count();
  std::vector<Point> nodes(n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = grid.node(i);
    weights[i] = grid.weight(i);
  }

  std::vector<double> obj_terms(n);
  auto objective = [&](const std::vector<double>& u) {
    for (std::size_t i = 0; i < n; ++i) obj_terms[i] = ext_mul(weights[i], phi.eval(nodes[i], u[i]));
    return pairwise_sum(obj_terms);
  };

  double u0 = cs.rows.empty() ? 0.0 : 1.0 / cs.min_length;
  std::vector<double> u(n, u0);
  if (warm_start && warm_start->size() == n) u = *warm_start;

  SolveState st;
  if (cs.rows.empty()) {
    st.best_u = u;
    st.best_objective = objective(u);
    return st;
  }

  std::vector<double> scaled(n);
  auto consider = [&](const std::vector<double>& cand) {
    double m = kInf;
    for (const Row& row : cs.rows) m = std::min(m, row_dot(row, cand));
    if (!(m > 0.0)) return;
    for (std::size_t i = 0; i < n; ++i) scaled[i] = cand[i] / m;
    double obj = objective(scaled);
    if (obj < st.best_objective) {
      st.best_objective = obj;
      st.best_u = scaled;
    }
  };

  consider(u);
  double c = step_coeff * (1.0 + u0);
  for (int k = 1; k <= iterations; ++k) {
    if (stop_below >= 0.0 && st.best_objective <= stop_below) break;
    double alpha = c / std::sqrt(static_cast<double>(k));
    st.final_step = alpha;
    st.iterations = k;
    for (std::size_t i = 0; i < n; ++i) {
      double g = phi_slope(phi, nodes[i], u[i]);
      u[i] -= alpha * g;
      if (u[i] < 0.0) u[i] = 0.0;
    }
    // restore violated constraints, multiplicative lift per curve stencil
    for (const Row& row : cs.rows) {
      double r = row_dot(row, u);
      if (r >= 1.0) continue;
      if (r > 0.0) {
        double s = 1.0 / r;
        for (std::size_t j = 0; j < row.idx.size(); ++j) u[row.idx[j]] *= s;
      } else {
        double corr = 1.0 / row.sq_norm;
        for (std::size_t j = 0; j < row.idx.size(); ++j) u[row.idx[j]] += corr * row.coeff[j];
      }
    }
    consider(u);
  }
  return st;
}

std::vector<double> residuals_of(const Constraints& cs, const std::vector<double>& u) {
  std::vector<double> res(cs.rows.size());
  for (std::size_t j = 0; j < cs.rows.size(); ++j) res[j] = row_dot(cs.rows[j], u) - 1.0;
  return res;
}

double auto_step(const BoxGrid& grid, double requested) {
  if (requested > 0.0) return requested;
  double h = kInf;
  for (int k = 0; k < grid.dim(); ++k) h = std::min(h, grid.spacing(k));
  return 0.5 * h;
}

PhiFunction rescaled_phi(const PhiFunction& phi, double tau) {
  PhiFunction out = phi;
  auto base = phi.fn;
  out.fn = [base, tau](const Point& x, double t) { return base(x, t / tau); };
  return out;
}

}  // namespace

ModulusResult estimate_modulus_modular(const PhiFunction& phi, const CurveFamily& family, const BoxGrid& grid,
                                       const ModulusOptions& opts) {
  if (!phi.is_convex) throw UnsupportedError("estimate_modulus_modular: integrand must be declared convex");
  ModulusResult res;
  if (family.curves.empty()) {
    res.density = ScalarField(grid, 0.0);
    res.note = "empty family: u == 0 is vacuously admissible";
    return res;
  }
  Constraints cs = build_constraints(family, grid, auto_step(grid, opts.curve_step));
  SolveState st = solve_min_modular(phi, cs, grid, opts.iterations, opts.step_coeff);
  res.modular_estimate = st.best_objective;
  res.density = ScalarField(grid, std::move(st.best_u));
  res.residuals = residuals_of(cs, res.density.values());
  res.iterations = st.iterations;
  res.final_step = st.final_step;
  res.norm_estimate = luxemburg_norm_value(phi, res.density);
  res.norm_hi = res.norm_estimate;
  res.note = "estimate of the sampled family; upper bound by admissible witness";
  return res;
}

ModulusResult estimate_modulus_norm(const PhiFunction& phi, const CurveFamily& family, const BoxGrid& grid,
                                    const ModulusOptions& opts) {
  if (!phi.is_convex) throw UnsupportedError("estimate_modulus_norm: integrand must be declared convex");
  ModulusResult res;
  if (family.curves.empty()) {
    res.density = ScalarField(grid, 0.0);
    res.note = "empty family: norm modulus 0";
    return res;
  }
  Constraints cs = build_constraints(family, grid, auto_step(grid, opts.curve_step));

  ScalarField u0(grid, 1.0 / cs.min_length);
  double tau_hi = luxemburg_norm_value(phi, u0);
  if (std::isinf(tau_hi) || tau_hi <= 0.0) {
    // no representable admissible function with finite norm
    res.norm_estimate = kInf;
    res.norm_lo = 0.0;
    res.norm_hi = kInf;
    res.density = u0;
    res.note = "bracket exhaustion: no admissible density with finite norm";
    return res;
  }

  double threshold = 1.0 + opts.feas_eps;
  std::vector<double> best_density;
  double feasible_tau = tau_hi;

  // every probe is warm-started from the best admissible density seen so
  // far: only the scale of the objective changes with tau, so the shape
  // carries over and boundary infeasibility gets declared sharply
  std::vector<double> carry;
  auto probe = [&](double tau) {
    SolveState st = solve_min_modular(rescaled_phi(phi, tau), cs, grid, opts.inner_iterations, opts.step_coeff,
                                      threshold, carry.empty() ? nullptr : &carry);
    res.iterations += st.iterations;
    carry = st.best_u;
    if (st.best_objective <= threshold) {
      best_density = st.best_u;
      feasible_tau = tau;
      return true;
    }
    return false;
  };

  if (!probe(tau_hi)) {
    // the unit-ball bound should have made tau_hi feasible; widen once
    tau_hi *= 2.0;
    if (!probe(tau_hi)) {
      res.norm_estimate = kInf;
      res.norm_lo = tau_hi;
      res.norm_hi = kInf;
      res.density = u0;
      res.note = "bracket exhaustion in the outer bisection";
      return res;
    }
  }

  double lo = 0.0;
  double hi = feasible_tau;
  double abs_floor = 1e-9 * hi;
  for (int it = 0; it < 200 && hi - lo > opts.bisect_rel * hi + abs_floor; ++it) {
    double mid = 0.5 * (lo + hi);
    if (probe(mid))
      hi = mid;
    else
      lo = mid;
  }

  res.norm_estimate = hi;
  res.norm_lo = lo;
  res.norm_hi = hi;
  res.density = ScalarField(grid, std::move(best_density));
  res.residuals = residuals_of(cs, res.density.values());
  res.modular_estimate = modular(phi, res.density);
  res.note = "estimate of the sampled family; tau bracket from outer bisection";
  return res;
}

WitnessReport verify_exceptional_witness(const ScalarField& v, const CurveFamily& family, const PhiFunction& phi,
                                         const WitnessThresholds& thresholds) {
  if (v.kind() != FieldKind::nonneg) throw InputError("verify_exceptional_witness: witness must be nonnegative");
  WitnessReport rep;
  rep.membership = space_membership(phi, v);
  double h = kInf;
  for (int k = 0; k < v.grid().dim(); ++k) h = std::min(h, v.grid().spacing(k));
  double coarse = thresholds.coarse_step > 0.0 ? thresholds.coarse_step : h;
  double fine = thresholds.fine_step > 0.0 ? thresholds.fine_step : h / 4.0;
  rep.all_certified = rep.membership.member();
  for (const Curve& gamma : family.curves) {
    WitnessCurveCheck check;
    check.coarse_integral = curve_integral(v, gamma, coarse);
    check.fine_integral = curve_integral(v, gamma, fine);
    check.certified = check.fine_integral >= thresholds.growth_factor * check.coarse_integral &&
                      check.fine_integral >= thresholds.abs_threshold;
    if (!check.certified) rep.all_certified = false;
    rep.per_curve.push_back(check);
  }
  rep.verdict = rep.all_certified ? "certified-at-scale" : "not-certified";
  return rep;
}

ModulusPropertiesReport check_modulus_properties(const PhiFunction& phi, const std::vector<NestedFamilyPair>& nested,
                                                 const std::vector<WitnessUnionCase>& unions, const BoxGrid& grid,
                                                 const ModulusOptions& opts, double tol) {
  ModulusPropertiesReport rep;
  for (const auto& pair : nested) {
    ModulusPropertiesReport::MonotoneCheck check;
    check.est_sub = estimate_modulus_norm(phi, pair.sub, grid, opts).norm_estimate;
    check.est_full = estimate_modulus_norm(phi, pair.full, grid, opts).norm_estimate;
    check.ok = check.est_sub <= check.est_full + tol;
    if (!check.ok) rep.all_ok = false;
    rep.monotone.push_back(check);
  }
  for (const auto& uc : unions) {
    ModulusPropertiesReport::UnionCheck check;
    check.v1_ok = verify_exceptional_witness(uc.v1, uc.f1, uc.phi).all_certified;
    check.v2_ok = verify_exceptional_witness(uc.v2, uc.f2, uc.phi).all_certified;
    ScalarField sum = field_sum(uc.v1, uc.v2);
    CurveFamily both = family_union(uc.f1, uc.f2);
    check.sum_ok = verify_exceptional_witness(sum, both, uc.phi).all_certified;
    double n1 = luxemburg_norm_value(uc.phi, uc.v1);
    double n2 = luxemburg_norm_value(uc.phi, uc.v2);
    double ns = luxemburg_norm_value(uc.phi, sum);
    check.norm_sum_ratio = (n1 + n2) > 0.0 ? ns / (n1 + n2) : 0.0;
    check.ok = check.v1_ok && check.v2_ok && check.sum_ok;
    if (!check.ok) rep.all_ok = false;
    rep.unions.push_back(check);
  }
  return rep;
}

}  // namespace orlicz
