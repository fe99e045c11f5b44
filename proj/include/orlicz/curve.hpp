#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "orlicz/field.hpp"
#include "orlicz/grid.hpp"

namespace orlicz {

// Rectifiable curve as a polyline, parametrized by arc length on
// [0, length()].
class Curve {
 public:
  Curve() = default;
  explicit Curve(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  int dim() const { return vertices_.empty() ? 0 : vertices_.front().dim; }

  // Point at arc-length parameter s in [0, length()].
  Point at(double s) const;

  Curve restricted(double s0, double s1) const;

 private:
  std::vector<Point> vertices_;
  std::vector<double> cumulative_;  // arc length at each vertex, starts at 0
};

struct CurveFamily {
  std::vector<Curve> curves;
  std::string provenance;

  std::size_t size() const { return curves.size(); }
  bool inside(const Box& box, double eps = 1e-9) const;
};

// Composite trapezoid of the interpolated field along the curve at arc
// spacing <= step (vertices are always sample points). Returns +inf as soon
// as a sample is +inf.
double curve_integral(const ScalarField& u, const Curve& gamma, double step);

// N full-extent segments parallel to `axis` (1-based), at uniformly spaced
// transverse positions; N == 1 uses the transverse midpoint.
CurveFamily segment_family(int axis, int count, const Box& box);

// Segments parallel to `axis` spanning [span_lo, span_hi] along it.
CurveFamily segment_family_span(int axis, int count, const Box& box, double span_lo, double span_hi);

// Sub-family of curves whose sampled image enters a cell with a masked
// corner node (mask values != 0).
CurveFamily curves_meeting_set(const CurveFamily& family, const ScalarField& mask, double step);

CurveFamily family_union(const CurveFamily& a, const CurveFamily& b);

// curvev1 text format: per curve `curvev1 n V` then V points (n coords each);
// curves separated by `---` lines.
void write_curvev1(std::ostream& os, const CurveFamily& family);
void write_curvev1_file(const std::string& path, const CurveFamily& family);
CurveFamily read_curvev1(std::istream& is);
CurveFamily read_curvev1_file(const std::string& path);

}  // namespace orlicz
