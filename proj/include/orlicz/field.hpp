#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "orlicz/grid.hpp"

namespace orlicz {

enum class FieldKind { nonneg, signed_values };

// Node-sampled scalar function on a BoxGrid. Values live in (-inf, +inf];
// +inf marks singular nodes.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(BoxGrid grid, std::vector<double> values);
  ScalarField(BoxGrid grid, double constant);

  static ScalarField from_function(const BoxGrid& grid, const std::function<double(const Point&)>& f);

  const BoxGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double at(std::size_t flat) const { return values_[flat]; }
  FieldKind kind() const { return kind_; }
  bool has_infinite() const { return has_inf_; }

  // Multilinear interpolation at p. Stencil nodes with zero weight are
  // skipped, so a +inf node contributes only when its weight is positive.
  double sample(const Point& p) const;

  ScalarField restricted_abs() const;  // |f|, nodewise

  void refresh_flags();

 private:
  BoxGrid grid_;
  std::vector<double> values_;
  FieldKind kind_ = FieldKind::nonneg;
  bool has_inf_ = false;
};

// Nodewise sum treating +inf absorbingly (never produces inf - inf).
ScalarField field_sum(const ScalarField& a, const ScalarField& b);
ScalarField field_scale(const ScalarField& a, double c);

// fieldv1 text format:
//   fieldv1 n m_1..m_n a_1 b_1 .. a_n b_n
//   v v v ... (row-major, axis 1 slowest; `inf` for +infinity)
// Finite values are printed with 17 significant digits and round-trip
// bit-exactly.
void write_fieldv1(std::ostream& os, const ScalarField& f);
void write_fieldv1_file(const std::string& path, const ScalarField& f);
ScalarField read_fieldv1(std::istream& is);
ScalarField read_fieldv1_file(const std::string& path);

}  // namespace orlicz
