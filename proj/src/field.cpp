#include "orlicz/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/util.hpp"

namespace orlicz {

ScalarField::ScalarField(BoxGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.node_count())
    throw InputError("ScalarField: value count " + std::to_string(values_.size()) +
                     " does not match node count " + std::to_string(grid_.node_count()));
  refresh_flags();
}

ScalarField::ScalarField(BoxGrid grid, double constant)
    : grid_(std::move(grid)), values_(grid_.node_count(), constant) {
  refresh_flags();
}

ScalarField ScalarField::from_function(const BoxGrid& grid, const std::function<double(const Point&)>& f) {
  std::vector<double> vals(grid.node_count());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f(grid.node(i));
  return ScalarField(grid, std::move(vals));
}

void ScalarField::refresh_flags() {
  bool neg = false, inf = false;
  for (double v : values_) {
    if (std::isnan(v)) throw InputError("ScalarField: NaN value");
    if (v < 0.0) neg = true;
    if (std::isinf(v)) {
      if (v < 0.0) throw InputError("ScalarField: -inf is not a legal value");
      inf = true;
    }
  }
  kind_ = neg ? FieldKind::signed_values : FieldKind::nonneg;
  has_inf_ = inf;
}

double ScalarField::sample(const Point& p) const {
  if (!grid_.box().contains(p, 1e-9)) throw InputError("ScalarField::sample: point outside grid box");
  int dim = grid_.dim();
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int k = 0; k < dim; ++k) {
    auto ks = static_cast<std::size_t>(k);
    double t = (p[k] - grid_.box().lo[ks]) / grid_.spacing(k);
    int cell = static_cast<int>(std::floor(t));
    if (cell < 0) cell = 0;
    if (cell > grid_.count(k) - 2) cell = grid_.count(k) - 2;
    base[ks] = cell;
    double fr = t - cell;
    if (fr < 0.0) fr = 0.0;
    if (fr > 1.0) fr = 1.0;
    frac[ks] = fr;
  }
  double acc = 0.0;
  int corners = 1 << dim;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::array<int, 3> idx = base;
    for (int k = 0; k < dim; ++k) {
      auto ks = static_cast<std::size_t>(k);
      if (c & (1 << k)) {
        w *= frac[ks];
        idx[ks] += 1;
      } else {
        w *= 1.0 - frac[ks];
      }
    }
    if (w == 0.0) continue;  // 0*inf = 0 convention
    double v = values_[grid_.flat(idx)];
    if (std::isinf(v)) return kInf;
    acc += w * v;
  }
  return acc;
}

ScalarField ScalarField::restricted_abs() const {
  std::vector<double> vals(values_.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::abs(values_[i]);
  return ScalarField(grid_, std::move(vals));
}

ScalarField field_sum(const ScalarField& a, const ScalarField& b) {
  if (!a.grid().same_layout(b.grid())) throw InputError("field_sum: grid mismatch");
  std::vector<double> vals(a.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double x = a.at(i), y = b.at(i);
    vals[i] = (std::isinf(x) || std::isinf(y)) ? kInf : x + y;
  }
  return ScalarField(a.grid(), std::move(vals));
}

ScalarField field_scale(const ScalarField& a, double c) {
  if (c < 0.0 && a.has_infinite()) throw InputError("field_scale: negative scale of +inf field");
  std::vector<double> vals(a.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = c == 0.0 ? 0.0 : c * a.at(i);
  return ScalarField(a.grid(), std::move(vals));
}

static void format_value(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << "inf";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

void write_fieldv1(std::ostream& os, const ScalarField& f) {
  const BoxGrid& g = f.grid();
  os << "fieldv1 " << g.dim();
  for (int k = 0; k < g.dim(); ++k) os << " " << g.count(k);
  for (int k = 0; k < g.dim(); ++k) {
    auto ks = static_cast<std::size_t>(k);
    os << " ";
    format_value(os, g.box().lo[ks]);
    os << " ";
    format_value(os, g.box().hi[ks]);
  }
  os << "\n";
  std::size_t per_line = static_cast<std::size_t>(g.count(g.dim() - 1));
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    format_value(os, f.at(i));
    os << ((i + 1) % per_line == 0 ? "\n" : " ");
  }
}

void write_fieldv1_file(const std::string& path, const ScalarField& f) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open for writing: " + path);
  write_fieldv1(os, f);
}

static double parse_value(const std::string& tok) {
  if (tok == "inf") return kInf;
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw InputError("fieldv1: bad value token '" + tok + "'");
  }
  if (pos != tok.size()) throw InputError("fieldv1: bad value token '" + tok + "'");
  return v;
}

ScalarField read_fieldv1(std::istream& is) {
  std::string magic;
  is >> magic;
  if (magic != "fieldv1") throw InputError("fieldv1: bad magic '" + magic + "'");
  int dim = 0;
  if (!(is >> dim) || dim < 1 || dim > 3) throw InputError("fieldv1: bad dimension");
  std::array<int, 3> counts{1, 1, 1};
  for (int k = 0; k < dim; ++k)
    if (!(is >> counts[static_cast<std::size_t>(k)])) throw InputError("fieldv1: missing node counts");
  Box box;
  box.dim = dim;
  for (int k = 0; k < dim; ++k) {
    auto ks = static_cast<std::size_t>(k);
    if (!(is >> box.lo[ks] >> box.hi[ks])) throw InputError("fieldv1: missing extents");
  }
  BoxGrid grid(dim, counts, box);
  std::vector<double> vals;
  vals.reserve(grid.node_count());
  std::string tok;
  while (vals.size() < grid.node_count() && (is >> tok)) vals.push_back(parse_value(tok));
  if (vals.size() != grid.node_count()) throw InputError("fieldv1: truncated value list");
  return ScalarField(std::move(grid), std::move(vals));
}

ScalarField read_fieldv1_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open: " + path);
  return read_fieldv1(is);
}

}  // namespace orlicz
