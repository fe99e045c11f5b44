#include "orlicz/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "orlicz/acsob.hpp"
#include "orlicz/builtin.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/util.hpp"

namespace orlicz {

namespace {

struct Entry {
  int line = 0;
  std::string key;
  std::string value;
};

struct Section {
  int line = 0;
  std::string kind;
  std::string name;
  std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

[[noreturn]] void die(int line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

double num(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    die(line, "expected a number, got '" + s + "'");
  }
}

std::vector<Section> parse_sections(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') die(line, "unterminated section header");
      auto inner = tokens_of(s.substr(1, s.size() - 2));
      if (inner.empty()) die(line, "empty section header");
      Section sec;
      sec.line = line;
      sec.kind = inner[0];
      if (inner.size() > 1) sec.name = inner[1];
      if (inner.size() > 2) die(line, "section header has too many tokens");
      sections.push_back(std::move(sec));
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) die(line, "expected 'key = value'");
    if (sections.empty()) die(line, "entry before any section header");
    Entry e;
    e.line = line;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    if (e.key.empty()) die(line, "empty key");
    sections.back().entries.push_back(std::move(e));
  }
  return sections;
}

std::map<std::string, std::string> stage_params(const std::vector<std::string>& toks, int line) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos) die(line, "stage parameter '" + toks[i] + "' is not k=v");
    out[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return out;
}

struct Env {
  std::map<std::string, BoxGrid> grids;
  std::map<std::string, PhiFunction> phis;
  std::map<std::string, ScalarField> fields;
  std::map<std::string, CurveFamily> families;
  std::string base_dir;

  const BoxGrid& grid(const std::string& name, int line) const {
    auto it = grids.find(name);
    if (it == grids.end()) die(line, "unknown grid '" + name + "'");
    return it->second;
  }
  const PhiFunction& phi(const std::string& name, int line) const {
    auto it = phis.find(name);
    if (it == phis.end()) die(line, "unknown phi '" + name + "'");
    return it->second;
  }
  const ScalarField& field(const std::string& name, int line) const {
    auto it = fields.find(name);
    if (it == fields.end()) die(line, "unknown field '" + name + "'");
    return it->second;
  }
  const CurveFamily& family(const std::string& name, int line) const {
    auto it = families.find(name);
    if (it == families.end()) die(line, "unknown curve family '" + name + "'");
    return it->second;
  }
  std::string resolve(const std::string& path) const {
    if (path.empty() || path.front() == '/') return path;
    return base_dir + "/" + path;
  }
};

Box parse_box(const std::vector<std::string>& toks, int dim, int line) {
  if (static_cast<int>(toks.size()) != 2 * dim) die(line, "box needs 2*dim numbers");
  Box box;
  box.dim = dim;
  for (int k = 0; k < dim; ++k) {
    auto ks = static_cast<std::size_t>(k);
    box.lo[ks] = num(toks[static_cast<std::size_t>(2 * k)], line);
    box.hi[ks] = num(toks[static_cast<std::size_t>(2 * k + 1)], line);
  }
  return box;
}

ScalarField make_generated_field(const std::vector<std::string>& toks, const BoxGrid& grid, const Env& env,
                                 int line) {
  if (toks.empty()) die(line, "empty generator");
  const std::string& kind = toks[0];
  auto want = [&](std::size_t n) {
    if (toks.size() != n + 1) die(line, "generator '" + kind + "' expects " + std::to_string(n) + " argument(s)");
  };
  auto axis_of = [&](const std::string& s) {
    int a = static_cast<int>(num(s, line));
    if (a < 1 || a > grid.dim()) die(line, "axis out of range");
    return a - 1;
  };
  if (kind == "const") {
    want(1);
    return ScalarField(grid, num(toks[1], line));
  }
  if (kind == "coord") {
    want(1);
    int k = axis_of(toks[1]);
    return ScalarField::from_function(grid, [k](const Point& p) { return p[k]; });
  }
  if (kind == "abs") {
    want(1);
    int k = axis_of(toks[1]);
    return ScalarField::from_function(grid, [k](const Point& p) { return std::abs(p[k]); });
  }
  if (kind == "abs_pow") {
    want(2);
    int k = axis_of(toks[1]);
    double e = num(toks[2], line);
    return ScalarField::from_function(grid, [k, e](const Point& p) { return std::pow(std::abs(p[k]), e); });
  }
  if (kind == "product") {
    if (toks.size() != static_cast<std::size_t>(grid.dim()) + 1) die(line, "product needs one exponent per axis");
    std::vector<double> es;
    for (int k = 0; k < grid.dim(); ++k) es.push_back(num(toks[static_cast<std::size_t>(k) + 1], line));
    return ScalarField::from_function(grid, [es](const Point& p) {
      double v = 1.0;
      for (std::size_t k = 0; k < es.size(); ++k) v *= std::pow(p[static_cast<int>(k)], es[k]);
      return v;
    });
  }
  if (kind == "affine") {
    if (toks.size() != static_cast<std::size_t>(grid.dim()) + 2) die(line, "affine needs 1+dim coefficients");
    double c0 = num(toks[1], line);
    std::vector<double> cs;
    for (int k = 0; k < grid.dim(); ++k) cs.push_back(num(toks[static_cast<std::size_t>(k) + 2], line));
    return ScalarField::from_function(grid, [c0, cs](const Point& p) {
      double v = c0;
      for (std::size_t k = 0; k < cs.size(); ++k) v += cs[k] * p[static_cast<int>(k)];
      return v;
    });
  }
  if (kind == "step_y") {
    want(3);
    double vn = num(toks[1], line), vz = num(toks[2], line), vp = num(toks[3], line);
    return ScalarField::from_function(grid, [vn, vz, vp](const Point& p) {
      if (p[0] < 0.0) return vn;
      if (p[0] > 0.0) return vp;
      return vz;
    });
  }
  if (kind == "inv_abs") {
    want(1);
    int k = axis_of(toks[1]);
    return ScalarField::from_function(grid, [k](const Point& p) {
      double a = std::abs(p[k]);
      return a == 0.0 ? kInf : 1.0 / a;
    });
  }
  if (kind == "strip") {
    want(3);
    int k = axis_of(toks[1]);
    double amp = num(toks[2], line), width = num(toks[3], line);
    return ScalarField::from_function(
        grid, [k, amp, width](const Point& p) { return std::abs(p[k]) <= width / 2.0 ? amp : 0.0; });
  }
  if (kind == "gate_strip") {
    want(3);
    int k = axis_of(toks[1]);
    double amp = num(toks[2], line), width = num(toks[3], line);
    return ScalarField::from_function(grid, [k, amp, width](const Point& p) {
      double a = std::abs(p[k]);
      if (a == 0.0) return kInf;
      return a <= width / 2.0 ? amp / a : 0.0;
    });
  }
  if (kind == "mask_line") {
    want(2);
    int k = axis_of(toks[1]);
    double value = num(toks[2], line);
    double tol = grid.spacing(k) / 4.0;
    return ScalarField::from_function(
        grid, [k, value, tol](const Point& p) { return std::abs(p[k] - value) <= tol ? 1.0 : 0.0; });
  }
  if (kind == "expcube") {
    want(0);
    return ScalarField::from_function(grid, [](const Point& p) { return std::exp(p[0]) * p[1] * p[1] * p[1]; });
  }
  if (kind == "sum") {
    want(2);
    return field_sum(env.field(toks[1], line), env.field(toks[2], line));
  }
  if (kind == "scale") {
    want(2);
    return field_scale(env.field(toks[1], line), num(toks[2], line));
  }
  die(line, "unknown field generator '" + kind + "'");
}

Curve parse_curve_tokens(const std::vector<std::string>& toks, int line) {
  // flat coordinate list for a 2-d polyline: x0 y0 x1 y1 [...]
  if (toks.size() < 4 || toks.size() % 2 != 0) die(line, "polyline needs an even list of >=4 coordinates");
  std::vector<Point> verts;
  for (std::size_t i = 0; i < toks.size(); i += 2)
    verts.push_back(make_point(num(toks[i], line), num(toks[i + 1], line)));
  return Curve(std::move(verts));
}

CurveFamily make_generated_family(const std::vector<std::string>& toks, const Box& box, int line) {
  if (toks.empty()) die(line, "empty curves generator");
  const std::string& kind = toks[0];
  if (kind == "segments") {
    if (toks.size() != 3) die(line, "segments needs: axis count");
    return segment_family(static_cast<int>(num(toks[1], line)), static_cast<int>(num(toks[2], line)), box);
  }
  if (kind == "segments_span") {
    if (toks.size() != 5) die(line, "segments_span needs: axis count lo hi");
    return segment_family_span(static_cast<int>(num(toks[1], line)), static_cast<int>(num(toks[2], line)), box,
                               num(toks[3], line), num(toks[4], line));
  }
  if (kind == "polyline") {
    CurveFamily fam;
    fam.provenance = "polyline";
    fam.curves.push_back(parse_curve_tokens({toks.begin() + 1, toks.end()}, line));
    return fam;
  }
  die(line, "unknown curves generator '" + kind + "'");
}

struct ParamReader {
  const std::map<std::string, std::string>& p;
  int line;

  bool has(const std::string& k) const { return p.count(k) > 0; }
  std::string str(const std::string& k) const {
    auto it = p.find(k);
    if (it == p.end()) die(line, "missing stage parameter '" + k + "'");
    return it->second;
  }
  std::string str_or(const std::string& k, const std::string& dflt) const {
    auto it = p.find(k);
    return it == p.end() ? dflt : it->second;
  }
  double val(const std::string& k) const { return num(str(k), line); }
  double val_or(const std::string& k, double dflt) const {
    auto it = p.find(k);
    return it == p.end() ? dflt : num(it->second, line);
  }
  int int_or(const std::string& k, int dflt) const { return static_cast<int>(val_or(k, dflt)); }
};

class Runner {
 public:
  Runner(const std::string& text, const std::string& base_dir) : text_(text) { env_.base_dir = base_dir; }

  ScenarioResult run() {
    auto sections = parse_sections(text_);
    const Section* pipeline = nullptr;
    for (const auto& sec : sections) {
      if (sec.kind == "scenario") {
        for (const auto& e : sec.entries)
          if (e.key == "name") name_ = e.value;
      } else if (sec.kind == "grid") {
        load_grid(sec);
      } else if (sec.kind == "phi") {
        load_phi(sec);
      } else if (sec.kind == "field") {
        load_field(sec);
      } else if (sec.kind == "curves") {
        load_curves(sec);
      } else if (sec.kind == "pipeline") {
        pipeline = &sec;
      } else if (sec.kind == "output") {
        for (const auto& e : sec.entries)
          if (e.key == "report") result_.report_path = e.value;
      } else {
        die(sec.line, "unknown section kind '" + sec.kind + "'");
      }
    }
    result_.report["scenario"] = name_;
    result_.report["stages"] = Json::array();
    if (pipeline) {
      for (const auto& e : pipeline->entries) {
        if (e.key != "stage") die(e.line, "pipeline entries must be 'stage = ...'");
        run_stage(e);
      }
    }
    result_.report["failures"] = Json(result_.failures);
    result_.report["ok"] = result_.failures.empty();
    result_.exit_code = result_.failures.empty() ? 0 : 1;
    return std::move(result_);
  }

 private:
  void load_grid(const Section& sec) {
    if (sec.name.empty()) die(sec.line, "grid section needs a name");
    int dim = 0;
    std::vector<std::string> nodes, box_toks;
    for (const auto& e : sec.entries) {
      if (e.key == "dim") dim = static_cast<int>(num(e.value, e.line));
      else if (e.key == "nodes") nodes = tokens_of(e.value);
      else if (e.key == "box") box_toks = tokens_of(e.value);
      else die(e.line, "unknown grid key '" + e.key + "'");
    }
    if (dim < 1 || dim > 3) die(sec.line, "grid needs dim in {1,2,3}");
    if (static_cast<int>(nodes.size()) != dim) die(sec.line, "grid needs one node count per axis");
    std::array<int, 3> counts{1, 1, 1};
    for (int k = 0; k < dim; ++k) counts[static_cast<std::size_t>(k)] = static_cast<int>(num(nodes[static_cast<std::size_t>(k)], sec.line));
    Box box = parse_box(box_toks, dim, sec.line);
    env_.grids.emplace(sec.name, BoxGrid(dim, counts, box));
  }

  void load_phi(const Section& sec) {
    if (sec.name.empty()) die(sec.line, "phi section needs a name");
    std::string descriptor;
    Box box;
    box.dim = 2;
    for (const auto& e : sec.entries) {
      if (e.key == "descriptor") descriptor = e.value;
      else if (e.key == "grid") box = env_.grid(e.value, e.line).box();
      else if (e.key == "box") box = parse_box(tokens_of(e.value), box.dim, e.line);
      else die(e.line, "unknown phi key '" + e.key + "'");
    }
    if (descriptor.empty()) die(sec.line, "phi section needs a descriptor");
    env_.phis.emplace(sec.name, parse_phi(descriptor, box));
  }

  void load_field(const Section& sec) {
    if (sec.name.empty()) die(sec.line, "field section needs a name");
    std::string gen, file, gridname;
    int genline = sec.line;
    for (const auto& e : sec.entries) {
      if (e.key == "generator") {
        gen = e.value;
        genline = e.line;
      } else if (e.key == "file") {
        file = e.value;
      } else if (e.key == "grid") {
        gridname = e.value;
      } else {
        die(e.line, "unknown field key '" + e.key + "'");
      }
    }
    if (!file.empty()) {
      env_.fields.emplace(sec.name, read_fieldv1_file(env_.resolve(file)));
      return;
    }
    if (gen.empty() || gridname.empty()) die(sec.line, "field section needs grid+generator or file");
    env_.fields.emplace(sec.name,
                        make_generated_field(tokens_of(gen), env_.grid(gridname, genline), env_, genline));
  }

  void load_curves(const Section& sec) {
    if (sec.name.empty()) die(sec.line, "curves section needs a name");
    CurveFamily fam;
    bool have = false;
    Box box;
    bool have_box = false;
    for (const auto& e : sec.entries) {
      if (e.key == "grid") {
        box = env_.grid(e.value, e.line).box();
        have_box = true;
      } else if (e.key == "box") {
        box = parse_box(tokens_of(e.value), 2, e.line);
        have_box = true;
      } else if (e.key == "generator") {
        if (!have_box) die(e.line, "curves generator needs a grid or box declared first");
        fam = make_generated_family(tokens_of(e.value), box, e.line);
        have = true;
      } else if (e.key == "add") {
        auto toks = tokens_of(e.value);
        if (toks.empty() || toks[0] != "polyline") die(e.line, "add expects a polyline");
        fam.curves.push_back(parse_curve_tokens({toks.begin() + 1, toks.end()}, e.line));
        have = true;
      } else if (e.key == "file") {
        fam = read_curvev1_file(env_.resolve(e.value));
        have = true;
      } else {
        die(e.line, "unknown curves key '" + e.key + "'");
      }
    }
    if (!have) die(sec.line, "curves section defines no curves");
    env_.families.emplace(sec.name, std::move(fam));
  }

  void expect_value(const ParamReader& pr, const std::string& stage, double got) {
    if (pr.has("expect")) {
      double want = pr.val("expect");
      double tol = pr.val_or("expect_tol", 0.0);
      if (!(std::abs(got - want) <= tol))
        fail(stage + ": got " + std::to_string(got) + ", expected " + std::to_string(want) + " +- " +
             std::to_string(tol));
    }
    if (pr.has("expect_min") && !(got >= pr.val("expect_min")))
      fail(stage + ": got " + std::to_string(got) + " < expect_min " + pr.str("expect_min"));
    if (pr.has("expect_max") && !(got <= pr.val("expect_max")))
      fail(stage + ": got " + std::to_string(got) + " > expect_max " + pr.str("expect_max"));
  }

  void fail(const std::string& msg) { result_.failures.push_back(msg); }

  ModulusOptions modulus_opts(const ParamReader& pr) {
    ModulusOptions opts;
    opts.iterations = pr.int_or("iters", opts.iterations);
    opts.inner_iterations = pr.int_or("inner_iters", opts.inner_iterations);
    opts.step_coeff = pr.val_or("step_coeff", opts.step_coeff);
    opts.curve_step = pr.val_or("curve_step", opts.curve_step);
    opts.feas_eps = pr.val_or("feas_eps", opts.feas_eps);
    opts.bisect_rel = pr.val_or("bisect_rel", opts.bisect_rel);
    return opts;
  }

  void run_stage(const Entry& e) {
    auto toks = tokens_of(e.value);
    if (toks.empty()) die(e.line, "empty stage");
    const std::string& kind = toks[0];
    auto params = stage_params(toks, e.line);
    ParamReader pr{params, e.line};
    Json stage;
    stage["stage"] = kind;
    const std::string label = "stage " + std::to_string(result_.report["stages"].size() + 1) + " (" + kind + ")";

    if (kind == "modular") {
      double v = modular(env_.phi(pr.str("phi"), e.line), env_.field(pr.str("field"), e.line));
      stage["value"] = ext_json(v);
      expect_value(pr, label, v);
    } else if (kind == "norm") {
      NormOptions nopts;
      nopts.tol = pr.val_or("tol", 1e-8);
      NormResult r = luxemburg_norm(env_.phi(pr.str("phi"), e.line), env_.field(pr.str("field"), e.line), nopts);
      stage["result"] = to_json(r);
      expect_value(pr, label, r.value);
    } else if (kind == "membership") {
      auto r = space_membership(env_.phi(pr.str("phi"), e.line), env_.field(pr.str("field"), e.line));
      stage["result"] = to_json(r);
      if (pr.has("expect")) {
        bool want = pr.str("expect") == "member";
        if (r.member() != want) fail(label + ": membership mismatch");
      }
    } else if (kind == "holder") {
      auto r = holder_check(env_.phi(pr.str("phi"), e.line), env_.field(pr.str("f"), e.line),
                            env_.field(pr.str("g"), e.line), pr.val_or("tol", 1e-6));
      stage["result"] = to_json(r);
      if (pr.has("expect") && pr.str("expect") == "pass" && !r.pass) fail(label + ": inequality violated");
    } else if (kind == "bounds") {
      auto r = norm_modular_bounds(env_.phi(pr.str("phi"), e.line), env_.field(pr.str("field"), e.line));
      stage["result"] = to_json(r);
      if (!(r.small_norm_ok && r.adec_ok)) fail(label + ": qualitative ordering violated");
    } else if (kind == "condition") {
      const PhiFunction& phi = env_.phi(pr.str("phi"), e.line);
      SampleSpec spec = SampleSpec::for_box(env_.grid(pr.str("grid"), e.line).box());
      ConditionSpec cond;
      std::string cname = pr.str("cond");
      if (cname == "weakA0") cond.kind = ConditionKind::weakA0;
      else if (cname == "A0") cond.kind = ConditionKind::A0;
      else if (cname == "A1") cond.kind = ConditionKind::A1;
      else if (cname == "A2") cond.kind = ConditionKind::A2;
      else if (cname == "aInc") cond.kind = ConditionKind::aInc;
      else if (cname == "aDec") cond.kind = ConditionKind::aDec;
      else die(e.line, "unknown condition '" + cname + "'");
      cond.delta = pr.val_or("delta", 1.0);
      cond.exponent = pr.val_or("exponent", 1.0);
      auto r = check_condition(phi, cond, spec);
      stage["result"] = to_json(r);
      if (pr.has("expect") && verdict_name(r.verdict) != pr.str("expect"))
        fail(label + ": verdict " + verdict_name(r.verdict) + ", expected " + pr.str("expect"));
      if (pr.has("expect_beta")) {
        double want = pr.val("expect_beta");
        if (!r.beta || std::abs(*r.beta - want) > pr.val_or("expect_beta_tol", 1e-9))
          fail(label + ": witness beta mismatch");
      }
    } else if (kind == "equivalence") {
      auto r = check_equivalence(env_.phi(pr.str("phi"), e.line), env_.phi(pr.str("psi"), e.line), pr.val("L"),
                                 SampleSpec::for_box(env_.grid(pr.str("grid"), e.line).box()));
      stage["result"] = to_json(r);
      if (pr.has("expect") && verdict_name(r.verdict) != pr.str("expect"))
        fail(label + ": verdict " + verdict_name(r.verdict) + ", expected " + pr.str("expect"));
    } else if (kind == "curve_integral") {
      const CurveFamily& fam = env_.family(pr.str("curves"), e.line);
      std::size_t idx = static_cast<std::size_t>(pr.int_or("index", 0));
      if (idx >= fam.size()) die(e.line, "curve index out of range");
      double v = curve_integral(env_.field(pr.str("field"), e.line), fam.curves[idx], pr.val_or("step", 0.01));
      stage["value"] = ext_json(v);
      expect_value(pr, label, v);
    } else if (kind == "meeting") {
      const CurveFamily& fam = env_.family(pr.str("curves"), e.line);
      const ScalarField& mask = env_.field(pr.str("mask"), e.line);
      double step = pr.val_or("step", 0.5 * mask.grid().spacing(0));
      CurveFamily sub = curves_meeting_set(fam, mask, step);
      stage["count"] = sub.size();
      if (pr.has("expect_count") && static_cast<int>(sub.size()) != pr.int_or("expect_count", -1))
        fail(label + ": meeting-set size " + std::to_string(sub.size()));
      env_.families["__last_meeting"] = sub;
      if (pr.has("out")) env_.families[pr.str("out")] = std::move(sub);
    } else if (kind == "modulus_modular" || kind == "modulus_norm") {
      const PhiFunction& phi = env_.phi(pr.str("phi"), e.line);
      const CurveFamily& fam = env_.family(pr.str("curves"), e.line);
      const BoxGrid& grid = env_.grid(pr.str("grid"), e.line);
      ModulusOptions opts = modulus_opts(pr);
      ModulusResult r = kind == "modulus_modular" ? estimate_modulus_modular(phi, fam, grid, opts)
                                                  : estimate_modulus_norm(phi, fam, grid, opts);
      stage["result"] = to_json(r);
      if (pr.has("density_out")) write_fieldv1_file(env_.resolve(pr.str("density_out")), r.density);
      expect_value(pr, label, kind == "modulus_modular" ? r.modular_estimate : r.norm_estimate);
    } else if (kind == "witness") {
      WitnessThresholds thr;
      thr.growth_factor = pr.val_or("growth", thr.growth_factor);
      thr.abs_threshold = pr.val_or("abs", thr.abs_threshold);
      auto r = verify_exceptional_witness(env_.field(pr.str("v"), e.line), env_.family(pr.str("curves"), e.line),
                                          env_.phi(pr.str("phi"), e.line), thr);
      stage["result"] = to_json(r);
      if (pr.has("expect") && r.verdict != pr.str("expect"))
        fail(label + ": verdict " + r.verdict + ", expected " + pr.str("expect"));
    } else if (kind == "acl") {
      auto r = acl_check(env_.field(pr.str("field"), e.line), env_.field(pr.str("field_fine"), e.line),
                         pr.val_or("jump_tol", 1e-9));
      stage["result"] = to_json(r, pr.has("csv_out"));
      if (pr.has("csv_out")) write_slice_csv(env_.resolve(pr.str("csv_out")), r);
      if (pr.has("axis")) {
        std::size_t ax = static_cast<std::size_t>(pr.int_or("axis", 1)) - 1;
        if (ax >= r.axes.size()) die(e.line, "axis out of range");
        if (pr.has("expect_nac_min") && !(r.axes[ax].nac_fraction >= pr.val("expect_nac_min")))
          fail(label + ": NAC fraction " + std::to_string(r.axes[ax].nac_fraction));
        if (pr.has("expect_ac_min") && !(r.axes[ax].ac_fraction >= pr.val("expect_ac_min")))
          fail(label + ": AC fraction " + std::to_string(r.axes[ax].ac_fraction));
      }
    } else if (kind == "gradient") {
      GradientField g = gradient(env_.field(pr.str("field"), e.line));
      stage["axes"] = static_cast<int>(g.partials.size());
      if (pr.has("out")) env_.fields[pr.str("out")] = g.magnitude;
    } else if (kind == "sobolev") {
      auto r = sobolev_report(env_.phi(pr.str("phi"), e.line), env_.field(pr.str("field"), e.line),
                              env_.field(pr.str("field_fine"), e.line), pr.val_or("jump_tol", 1e-9));
      stage["result"] = to_json(r);
      if (pr.has("expect_route")) {
        bool want = pr.str("expect_route") == "established";
        if (r.acl_route != want) fail(label + ": ACL-route mismatch");
      }
      if (pr.has("expect_w_norm")) {
        if (std::abs(r.w_norm - pr.val("expect_w_norm")) > pr.val_or("expect_tol", 1e-3))
          fail(label + ": W-norm " + std::to_string(r.w_norm));
      }
    } else if (kind == "acc") {
      AccThresholds thr;
      thr.jump_tol = pr.val_or("jump_tol", 1e-9);
      const ScalarField* witness = nullptr;
      if (pr.has("witness")) witness = &env_.field(pr.str("witness"), e.line);
      auto r = acc_check(env_.field(pr.str("field"), e.line), env_.field(pr.str("field_fine"), e.line),
                         env_.family(pr.str("curves"), e.line), witness, env_.phi(pr.str("phi"), e.line), thr);
      stage["result"] = to_json(r);
      if (pr.has("expect") && r.verdict != pr.str("expect"))
        fail(label + ": verdict " + r.verdict + ", expected " + pr.str("expect"));
    } else if (kind == "fuglede") {
      std::vector<ScalarField> seq;
      std::string names = pr.str("seq");
      std::string cur;
      for (char c : names + ",") {
        if (c == ',') {
          if (!cur.empty()) seq.push_back(env_.field(cur, e.line));
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      FugledeOptions fopts;
      fopts.max_k = pr.int_or("max_k", fopts.max_k);
      auto r = fuglede_subsequence(env_.phi(pr.str("phi"), e.line), seq, env_.family(pr.str("curves"), e.line),
                                   fopts);
      stage["result"] = to_json(r);
      if (pr.has("expect_achieved_min") && r.achieved_k < pr.int_or("expect_achieved_min", 0))
        fail(label + ": achieved k " + std::to_string(r.achieved_k));
    } else if (kind == "criterion") {
      int index = pr.int_or("index", 0);
      auto r = builtin::run_criterion(index);
      stage["criterion"] = r.index;
      stage["name"] = r.name;
      stage["pass"] = r.pass;
      stage["details"] = Json(r.details);
      stage["data"] = r.data;
      if (!r.pass) fail(label + ": criterion " + std::to_string(index) + " failed");
    } else if (kind == "write_field") {
      write_fieldv1_file(env_.resolve(pr.str("path")), env_.field(pr.str("field"), e.line));
      stage["path"] = pr.str("path");
    } else if (kind == "write_curves") {
      write_curvev1_file(env_.resolve(pr.str("path")), env_.family(pr.str("curves"), e.line));
      stage["path"] = pr.str("path");
    } else {
      die(e.line, "unknown stage kind '" + kind + "'");
    }
    result_.report["stages"].push_back(std::move(stage));
  }

  static void write_slice_csv(const std::string& path, const ACReport& rep) {
    std::ostringstream os;
    os << "axis,transverse_i,transverse_j,max_inc_coarse,max_inc_fine,verdict\n";
    for (const auto& ax : rep.axes)
      for (const auto& s : ax.slices)
        os << ax.axis << "," << s.transverse_idx[0] << "," << s.transverse_idx[1] << "," << s.max_inc_coarse << ","
           << s.max_inc_fine << "," << slice_verdict_name(s.verdict) << "\n";
    write_text_file(path, os.str());
  }

  std::string text_;
  std::string name_ = "unnamed";
  Env env_;
  ScenarioResult result_;
};

}  // namespace

ScenarioResult run_scenario_text(const std::string& config_text, const std::string& base_dir) {
  Runner runner(config_text, base_dir);
  return runner.run();
}

ScenarioResult run_scenario_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open scenario config: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  std::string dir = ".";
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return run_scenario_text(buf.str(), dir);
}

}  // namespace orlicz
