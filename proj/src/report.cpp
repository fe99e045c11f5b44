#include "orlicz/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

Json ext_json(double v) {
  if (std::isinf(v)) return Json("inf");
  return Json(v);
}

Json to_json(const Point& p) {
  Json arr = Json::array();
  for (int k = 0; k < p.dim; ++k) arr.push_back(p[k]);
  return arr;
}

Json to_json(const NormResult& r) {
  Json j;
  j["value"] = ext_json(r.value);
  j["lambda_lo"] = ext_json(r.lambda_lo);
  j["lambda_hi"] = ext_json(r.lambda_hi);
  j["modular_at_hi"] = ext_json(r.modular_at_hi);
  j["iterations"] = r.iterations;
  return j;
}

Json to_json(const MembershipReport& r) {
  Json j;
  j["norm"] = ext_json(r.norm);
  j["norm_finite"] = r.norm_finite;
  j["small_scale_vanishes"] = r.small_scale_vanishes;
  j["member"] = r.member();
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = r.condition;
  j["verdict"] = verdict_name(r.verdict);
  if (r.beta) j["beta"] = *r.beta;
  if (r.L) j["L"] = *r.L;
  if (r.counterexample_x) j["counterexample_x"] = to_json(*r.counterexample_x);
  if (r.counterexample_y) j["counterexample_y"] = to_json(*r.counterexample_y);
  if (r.counterexample_t) j["counterexample_t"] = *r.counterexample_t;
  j["samples"] = r.sample_summary;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const HolderReport& r) {
  Json j;
  j["lhs"] = ext_json(r.lhs);
  j["rhs"] = ext_json(r.rhs);
  j["norm_f"] = ext_json(r.norm_f);
  j["norm_g_conjugate"] = ext_json(r.norm_g_conj);
  j["pass"] = r.pass;
  return j;
}

Json to_json(const NormModularReport& r) {
  Json j;
  j["norm"] = ext_json(r.norm);
  j["modular"] = ext_json(r.mod);
  j["small_norm_applicable"] = r.small_norm_applicable;
  if (r.small_norm_applicable) {
    j["small_norm_constant"] = r.small_norm_constant;
    j["small_norm_ok"] = r.small_norm_ok;
  }
  j["adec_applicable"] = r.adec_applicable;
  if (r.adec_applicable) {
    j["adec_constant"] = r.adec_constant;
    j["adec_ok"] = r.adec_ok;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const ModulusResult& r, bool include_density) {
  Json j;
  j["norm_estimate"] = ext_json(r.norm_estimate);
  j["norm_bracket"] = Json::array({ext_json(r.norm_lo), ext_json(r.norm_hi)});
  j["modular_estimate"] = ext_json(r.modular_estimate);
  double min_res = 0.0;
  if (!r.residuals.empty()) {
    min_res = r.residuals.front();
    for (double v : r.residuals) min_res = std::min(min_res, v);
  }
  j["min_residual"] = min_res;
  j["iterations"] = r.iterations;
  j["final_step"] = r.final_step;
  j["note"] = r.note;
  if (include_density) {
    std::ostringstream os;
    write_fieldv1(os, r.density);
    j["density_fieldv1"] = os.str();
  }
  return j;
}

Json to_json(const WitnessReport& r) {
  Json j;
  j["membership"] = to_json(r.membership);
  j["curves"] = Json::array();
  for (const auto& c : r.per_curve) {
    Json cj;
    cj["coarse"] = ext_json(c.coarse_integral);
    cj["fine"] = ext_json(c.fine_integral);
    cj["certified"] = c.certified;
    j["curves"].push_back(cj);
  }
  j["all_certified"] = r.all_certified;
  j["verdict"] = r.verdict;
  return j;
}

Json to_json(const ModulusPropertiesReport& r) {
  Json j;
  j["monotone"] = Json::array();
  for (const auto& m : r.monotone) {
    Json mj;
    mj["sub"] = ext_json(m.est_sub);
    mj["full"] = ext_json(m.est_full);
    mj["ok"] = m.ok;
    j["monotone"].push_back(mj);
  }
  j["unions"] = Json::array();
  for (const auto& u : r.unions) {
    Json uj;
    uj["v1_ok"] = u.v1_ok;
    uj["v2_ok"] = u.v2_ok;
    uj["sum_ok"] = u.sum_ok;
    uj["norm_sum_ratio"] = u.norm_sum_ratio;
    uj["ok"] = u.ok;
    j["unions"].push_back(uj);
  }
  j["all_ok"] = r.all_ok;
  return j;
}

Json to_json(const ACReport& r, bool per_slice) {
  Json j = Json::array();
  for (const auto& ax : r.axes) {
    Json aj;
    aj["axis"] = ax.axis;
    aj["nac_fraction"] = ax.nac_fraction;
    aj["ac_fraction"] = ax.ac_fraction;
    aj["indeterminate_fraction"] = ax.indeterminate_fraction;
    if (per_slice) {
      aj["slices"] = Json::array();
      for (const auto& s : ax.slices) {
        Json sj;
        sj["transverse"] = Json::array({s.transverse_idx[0], s.transverse_idx[1], s.transverse_idx[2]});
        sj["max_inc_coarse"] = ext_json(s.max_inc_coarse);
        sj["max_inc_fine"] = ext_json(s.max_inc_fine);
        sj["verdict"] = slice_verdict_name(s.verdict);
        aj["slices"].push_back(sj);
      }
    }
    j.push_back(aj);
  }
  return j;
}

Json to_json(const SobolevReport& r) {
  Json j;
  j["u_membership"] = to_json(r.u_membership);
  j["grad_membership"] = to_json(r.grad_membership);
  j["acl"] = to_json(r.acl);
  j["acl_ok"] = r.acl_ok;
  j["u_norm"] = ext_json(r.u_norm);
  j["grad_norm"] = ext_json(r.grad_norm);
  j["w_norm"] = ext_json(r.w_norm);
  j["acl_route"] = r.acl_route;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const AccReport& r) {
  Json j;
  j["flagged"] = Json(r.flagged);
  j["verdict"] = r.verdict;
  if (r.witness_report) j["witness"] = to_json(*r.witness_report);
  if (r.flagged_modulus_estimate) j["flagged_modulus_estimate"] = ext_json(*r.flagged_modulus_estimate);
  return j;
}

Json to_json(const FugledeReport& r) {
  Json j;
  j["norms"] = Json::array();
  for (double v : r.norms) j["norms"].push_back(ext_json(v));
  j["selected"] = Json::array();
  for (const auto& s : r.selected) {
    Json sj;
    sj["k"] = s.k;
    sj["index"] = s.index;
    sj["norm"] = ext_json(s.norm);
    j["selected"].push_back(sj);
  }
  j["achieved_k"] = r.achieved_k;
  if (!r.note.empty()) j["note"] = r.note;
  j["cauchy"] = Json::array();
  for (const auto& c : r.cauchy) {
    Json cj;
    cj["j"] = c.j;
    cj["tail_norm"] = ext_json(c.tail_norm);
    cj["bound"] = c.bound;
    cj["ok"] = c.ok;
    j["cauchy"].push_back(cj);
  }
  j["flagged"] = Json(r.flagged);
  j["majorant"] = to_json(r.majorant_report);
  j["w_min_flagged_integral"] = ext_json(r.w_min_flagged_integral);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open for writing: " + path);
  os << content;
}

}  // namespace orlicz
