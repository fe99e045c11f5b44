#include "orlicz/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orlicz/errors.hpp"
#include "orlicz/util.hpp"

namespace orlicz {

namespace {

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim; ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

Point lerp(const Point& a, const Point& b, double t) {
  Point p = a;
  for (int k = 0; k < a.dim; ++k) p[k] = a[k] + t * (b[k] - a[k]);
  return p;
}

}  // namespace

Curve::Curve(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InputError("Curve: need at least 2 vertices");
  cumulative_.resize(vertices_.size());
  cumulative_[0] = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i].dim != vertices_[0].dim) throw InputError("Curve: mixed vertex dimensions");
    double d = dist(vertices_[i - 1], vertices_[i]);
    if (d <= 0.0) throw InputError("Curve: consecutive vertices must be distinct");
    cumulative_[i] = cumulative_[i - 1] + d;
  }
}

Point Curve::at(double s) const {
  if (s <= 0.0) return vertices_.front();
  if (s >= length()) return vertices_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t j = static_cast<std::size_t>(it - cumulative_.begin());
  double seg = cumulative_[j] - cumulative_[j - 1];
  double t = (s - cumulative_[j - 1]) / seg;
  return lerp(vertices_[j - 1], vertices_[j], t);
}

Curve Curve::restricted(double s0, double s1) const {
  if (!(s0 < s1)) throw InputError("Curve::restricted: need s0 < s1");
  s0 = std::max(0.0, s0);
  s1 = std::min(length(), s1);
  std::vector<Point> verts;
  verts.push_back(at(s0));
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (cumulative_[i] > s0 + 1e-14 && cumulative_[i] < s1 - 1e-14) verts.push_back(vertices_[i]);
  verts.push_back(at(s1));
  return Curve(std::move(verts));
}

bool CurveFamily::inside(const Box& box, double eps) const {
  for (const Curve& c : curves)
    for (const Point& v : c.vertices())
      if (!box.contains(v, eps)) return false;
  return true;
}

double curve_integral(const ScalarField& u, const Curve& gamma, double step) {
  if (!(step > 0.0)) throw InputError("curve_integral: step must be > 0");
  if (u.kind() != FieldKind::nonneg) throw InputError("curve_integral: field must be nonnegative");
  const Box& box = u.grid().box();
  for (const Point& v : gamma.vertices())
    if (!box.contains(v, 1e-9)) throw InputError("curve_integral: curve exits the grid box");

  // Per-segment trapezoid keeps the vertices as sample points.
  const auto& verts = gamma.vertices();
  double total = 0.0;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    double seg = dist(verts[i - 1], verts[i]);
    int pieces = std::max(1, static_cast<int>(std::ceil(seg / step)));
    double ds = seg / pieces;
    double prev = u.sample(verts[i - 1]);
    for (int j = 1; j <= pieces; ++j) {
      Point p = lerp(verts[i - 1], verts[i], static_cast<double>(j) / pieces);
      double cur = u.sample(p);
      if (std::isinf(prev) || std::isinf(cur)) return kInf;
      total += 0.5 * ds * (prev + cur);
      prev = cur;
    }
  }
  return total;
}

CurveFamily segment_family(int axis, int count, const Box& box) {
  auto ks = static_cast<std::size_t>(axis - 1);
  return segment_family_span(axis, count, box, box.lo[ks], box.hi[ks]);
}

CurveFamily segment_family_span(int axis, int count, const Box& box, double span_lo, double span_hi) {
  if (axis < 1 || axis > box.dim) throw InputError("segment_family: bad axis");
  if (count < 1) throw InputError("segment_family: count must be >= 1");
  if (box.dim != 2) throw InputError("segment_family: implemented for 2-d boxes");
  if (!(span_lo < span_hi)) throw InputError("segment_family: empty span");
  int k = axis - 1;
  int kt = 1 - k;  // transverse axis
  auto kts = static_cast<std::size_t>(kt);
  CurveFamily fam;
  std::ostringstream prov;
  prov << "segments axis=" << axis << " count=" << count << " span=[" << span_lo << "," << span_hi << "]";
  fam.provenance = prov.str();
  for (int i = 0; i < count; ++i) {
    double frac = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
    double trans = box.lo[kts] + frac * (box.hi[kts] - box.lo[kts]);
    Point a, b;
    a.dim = b.dim = 2;
    a[kt] = b[kt] = trans;
    a[k] = span_lo;
    b[k] = span_hi;
    fam.curves.emplace_back(std::vector<Point>{a, b});
  }
  return fam;
}

CurveFamily curves_meeting_set(const CurveFamily& family, const ScalarField& mask, double step) {
  if (!(step > 0.0)) throw InputError("curves_meeting_set: step must be > 0");
  const BoxGrid& grid = mask.grid();
  int dim = grid.dim();
  auto cell_hit = [&](const Point& p) -> bool {
    std::array<int, 3> base{0, 0, 0};
    for (int k = 0; k < dim; ++k) {
      auto ks = static_cast<std::size_t>(k);
      double t = (p[k] - grid.box().lo[ks]) / grid.spacing(k);
      int cell = static_cast<int>(std::floor(t));
      base[ks] = std::clamp(cell, 0, grid.count(k) - 2);
    }
    for (int c = 0; c < (1 << dim); ++c) {
      std::array<int, 3> idx = base;
      for (int k = 0; k < dim; ++k)
        if (c & (1 << k)) idx[static_cast<std::size_t>(k)] += 1;
      if (mask.at(grid.flat(idx)) != 0.0) return true;
    }
    return false;
  };

  CurveFamily out;
  out.provenance = family.provenance + " | meeting mask";
  for (const Curve& gamma : family.curves) {
    bool hit = false;
    const auto& verts = gamma.vertices();
    for (std::size_t i = 1; i < verts.size() && !hit; ++i) {
      double seg = dist(verts[i - 1], verts[i]);
      int pieces = std::max(1, static_cast<int>(std::ceil(seg / step)));
      for (int j = 0; j <= pieces; ++j) {
        if (cell_hit(lerp(verts[i - 1], verts[i], static_cast<double>(j) / pieces))) {
          hit = true;
          break;
        }
      }
    }
    if (hit) out.curves.push_back(gamma);
  }
  return out;
}

CurveFamily family_union(const CurveFamily& a, const CurveFamily& b) {
  CurveFamily out = a;
  out.provenance = a.provenance + " + " + b.provenance;
  out.curves.insert(out.curves.end(), b.curves.begin(), b.curves.end());
  return out;
}

void write_curvev1(std::ostream& os, const CurveFamily& family) {
  char buf[40];
  for (std::size_t c = 0; c < family.curves.size(); ++c) {
    if (c) os << "---\n";
    const Curve& gamma = family.curves[c];
    os << "curvev1 " << gamma.dim() << " " << gamma.vertices().size() << "\n";
    for (const Point& v : gamma.vertices()) {
      for (int k = 0; k < gamma.dim(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", v[k]);
        os << (k ? " " : "") << buf;
      }
      os << "\n";
    }
  }
}

void write_curvev1_file(const std::string& path, const CurveFamily& family) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open for writing: " + path);
  write_curvev1(os, family);
}

CurveFamily read_curvev1(std::istream& is) {
  CurveFamily fam;
  fam.provenance = "file";
  std::string tok;
  while (is >> tok) {
    if (tok == "---") continue;
    if (tok != "curvev1") throw InputError("curvev1: bad magic '" + tok + "'");
    int dim = 0;
    std::size_t nverts = 0;
    if (!(is >> dim >> nverts) || dim < 1 || dim > 3 || nverts < 2)
      throw InputError("curvev1: bad header");
    std::vector<Point> verts(nverts);
    for (std::size_t i = 0; i < nverts; ++i) {
      verts[i].dim = dim;
      for (int k = 0; k < dim; ++k)
        if (!(is >> verts[i][k])) throw InputError("curvev1: truncated vertex list");
    }
    fam.curves.emplace_back(std::move(verts));
  }
  return fam;
}

CurveFamily read_curvev1_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open: " + path);
  return read_curvev1(is);
}

}  // namespace orlicz
