#include "orlicz/norms.hpp"

#include <atomic>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/util.hpp"

namespace orlicz {

double quadrature(const ScalarField& f, const std::function<double(const Point&, double)>& g) {
  const BoxGrid& grid = f.grid();
  std::size_t n = grid.node_count();
  std::vector<double> terms(n);
  std::atomic<bool> hit_inf{false};
  parallel_fill(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double w = grid.weight(i);
      double v = g(grid.node(i), f.at(i));
      if (std::isinf(v) && w > 0.0) {
        hit_inf.store(true, std::memory_order_relaxed);
        terms[i] = 0.0;
      } else {
        terms[i] = ext_mul(w, v);
      }
    }
  });
  if (hit_inf.load()) return kInf;
  return pairwise_sum(terms);
}

double modular(const PhiFunction& phi, const ScalarField& f) {
  if (phi.domain && (!phi.domain->contains(f.grid().node(0)) || !phi.domain->contains(f.grid().node(f.grid().node_count() - 1))))
    throw InputError("modular: field grid extends outside the integrand domain");
  return quadrature(f, [&phi](const Point& x, double v) { return phi.eval(x, std::abs(v)); });
}

NormResult luxemburg_norm(const PhiFunction& phi, const ScalarField& f, const NormOptions& opts) {
  if (!(opts.tol > 0.0)) throw InputError("luxemburg_norm: tol must be > 0");
  NormResult res;
  auto rho = [&](double lambda) {
    double m = quadrature(f, [&](const Point& x, double v) { return phi.eval(x, std::abs(v) / lambda); });
    res.trace.emplace_back(lambda, m);
    ++res.iterations;
    return m;
  };

  bool all_zero = true;
  for (double v : f.values())
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero) {
    res.value = 0.0;
    res.lambda_lo = 0.0;
    res.lambda_hi = 0.0;
    return res;
  }

  double hi = opts.lambda_max;
  double rho_hi = rho(hi);
  if (rho_hi > 1.0) {
    res.value = kInf;
    res.lambda_lo = hi;
    res.lambda_hi = kInf;
    res.modular_at_hi = rho_hi;
    return res;
  }
  double lo = opts.lambda_min;
  double rho_lo = rho(lo);
  if (rho_lo <= 1.0) {
    res.value = 0.0;
    res.lambda_lo = 0.0;
    res.lambda_hi = lo;
    res.modular_at_hi = rho_lo;
    return res;
  }

  // rho is non-increasing in lambda; bisect the feasibility boundary.
  double rho_at_hi = rho_hi;
  while (hi - lo > opts.tol * hi) {
    double mid = 0.5 * (lo + hi);
    double m = rho(mid);
    if (m > rho_lo + 1e-9 * (1.0 + rho_lo) && !std::isinf(rho_lo))
      throw IntegrityError("luxemburg_norm: modular increased with lambda (integrand violates monotonicity)");
    if (m <= 1.0) {
      hi = mid;
      rho_at_hi = m;
    } else {
      lo = mid;
      rho_lo = m;
    }
  }
  res.value = hi;
  res.lambda_lo = lo;
  res.lambda_hi = hi;
  res.modular_at_hi = rho_at_hi;
  return res;
}

double luxemburg_norm_value(const PhiFunction& phi, const ScalarField& f, double tol) {
  NormOptions opts;
  opts.tol = tol;
  return luxemburg_norm(phi, f, opts).value;
}

MembershipReport space_membership(const PhiFunction& phi, const ScalarField& f, double vanish_eps,
                                  double lambda_min) {
  MembershipReport rep;
  NormResult nr = luxemburg_norm(phi, f);
  rep.norm = nr.value;
  rep.norm_finite = !std::isinf(nr.value);
  double lambda = 1.0;
  while (lambda >= lambda_min) {
    double m = modular(phi, field_scale(f, lambda));
    rep.last_lambda = lambda;
    rep.last_modular = m;
    if (m <= vanish_eps) {
      rep.small_scale_vanishes = true;
      break;
    }
    lambda *= 0.5;
  }
  return rep;
}

HolderReport holder_check(const PhiFunction& phi, const ScalarField& f, const ScalarField& g, double tol,
                          double conj_t_max) {
  if (!f.grid().same_layout(g.grid())) throw InputError("holder_check: fields on different grids");
  if (!phi.is_convex) throw UnsupportedError("holder_check: integrand must be declared convex for the conjugate pairing");
  HolderReport rep;
  const BoxGrid& grid = f.grid();
  std::vector<double> terms(grid.node_count());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = grid.weight(i) * std::abs(f.at(i)) * std::abs(g.at(i));
  rep.lhs = pairwise_sum(terms);
  rep.norm_f = luxemburg_norm_value(phi, f);
  PhiFunction conj = phi_conjugate(phi, conj_t_max);
  rep.norm_g_conj = luxemburg_norm_value(conj, g);
  rep.rhs = 2.0 * rep.norm_f * rep.norm_g_conj;
  rep.pass = rep.lhs <= rep.rhs + tol;
  return rep;
}

NormModularReport norm_modular_bounds(const PhiFunction& phi, const ScalarField& f, double tol) {
  NormModularReport rep;
  rep.norm = luxemburg_norm_value(phi, f, tol);
  rep.mod = modular(phi, f);
  double L = phi.L_const.value_or(1.0);

  if (rep.norm < 1.0) {
    rep.small_norm_applicable = true;
    if (rep.norm > 0.0) {
      rep.small_norm_constant = rep.mod / rep.norm;
      rep.small_norm_ok = rep.mod <= L * rep.norm + 1e-9;
    } else {
      rep.small_norm_constant = 0.0;
      rep.small_norm_ok = rep.mod <= 1e-12;
    }
  }

  if (phi.q_dec) {
    rep.adec_applicable = true;
    double q = *phi.q_dec;
    double bound = std::max(rep.mod, std::pow(rep.mod, 1.0 / q));
    if (bound > 0.0) {
      rep.adec_constant = rep.norm / bound;
      rep.adec_ok = rep.norm <= 4.0 * std::max(1.0, L) * bound + 1e-9;
    } else {
      rep.adec_constant = 0.0;
      rep.adec_ok = rep.norm <= 1e-9;
    }
  } else {
    rep.note = "no declared (aDec) exponent; norm-vs-modular upper bound skipped";
  }
  return rep;
}

}  // namespace orlicz
