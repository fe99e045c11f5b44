#include "orlicz/grid.hpp"

#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

Point make_point(double a) {
  Point p;
  p.dim = 1;
  p.x = {a, 0.0, 0.0};
  return p;
}

Point make_point(double a, double b) {
  Point p;
  p.dim = 2;
  p.x = {a, b, 0.0};
  return p;
}

Point make_point(double a, double b, double c) {
  Point p;
  p.dim = 3;
  p.x = {a, b, c};
  return p;
}

bool Box::contains(const Point& p, double eps) const {
  for (int k = 0; k < dim; ++k) {
    if (p[k] < lo[static_cast<std::size_t>(k)] - eps) return false;
    if (p[k] > hi[static_cast<std::size_t>(k)] + eps) return false;
  }
  return true;
}

double Box::volume() const {
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)];
  return v;
}

BoxGrid::BoxGrid(int dim, std::array<int, 3> counts, const Box& box)
    : dim_(dim), counts_(counts), box_(box) {
  if (dim < 1 || dim > 3) throw InputError("BoxGrid: dimension must be 1, 2 or 3");
  if (box.dim != dim) throw InputError("BoxGrid: box dimension mismatch");
  total_ = 1;
  for (int k = 0; k < dim_; ++k) {
    auto ks = static_cast<std::size_t>(k);
    if (counts_[ks] < 2) throw InputError("BoxGrid: need at least 2 nodes per axis");
    if (!(box.lo[ks] < box.hi[ks])) throw InputError("BoxGrid: empty extent on axis " + std::to_string(k + 1));
    spacing_[ks] = (box.hi[ks] - box.lo[ks]) / (counts_[ks] - 1);
    total_ *= static_cast<std::size_t>(counts_[ks]);
  }
  for (int k = dim_; k < 3; ++k) counts_[static_cast<std::size_t>(k)] = 1;
}

std::size_t BoxGrid::flat(const std::array<int, 3>& idx) const {
  std::size_t f = 0;
  for (int k = 0; k < dim_; ++k) f = f * static_cast<std::size_t>(counts_[static_cast<std::size_t>(k)]) + static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
  return f;
}

std::array<int, 3> BoxGrid::unflat(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int k = dim_ - 1; k >= 0; --k) {
    auto c = static_cast<std::size_t>(counts_[static_cast<std::size_t>(k)]);
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % c);
    flat /= c;
  }
  return idx;
}

Point BoxGrid::node(const std::array<int, 3>& idx) const {
  Point p;
  p.dim = dim_;
  for (int k = 0; k < dim_; ++k) {
    auto ks = static_cast<std::size_t>(k);
    p[k] = box_.lo[ks] + idx[ks] * spacing_[ks];
  }
  return p;
}

Point BoxGrid::node(std::size_t flat) const { return node(unflat(flat)); }

double BoxGrid::weight(std::size_t flat) const {
  auto idx = unflat(flat);
  double w = 1.0;
  for (int k = 0; k < dim_; ++k) {
    auto ks = static_cast<std::size_t>(k);
    double wk = spacing_[ks];
    if (idx[ks] == 0 || idx[ks] == counts_[ks] - 1) wk *= 0.5;
    w *= wk;
  }
  return w;
}

bool BoxGrid::refines_to(const BoxGrid& fine) const {
  if (fine.dim_ != dim_) return false;
  for (int k = 0; k < dim_; ++k) {
    auto ks = static_cast<std::size_t>(k);
    if (fine.counts_[ks] != 2 * (counts_[ks] - 1) + 1) return false;
    if (std::abs(fine.box_.lo[ks] - box_.lo[ks]) > 1e-12) return false;
    if (std::abs(fine.box_.hi[ks] - box_.hi[ks]) > 1e-12) return false;
  }
  return true;
}

bool BoxGrid::same_layout(const BoxGrid& other) const {
  if (other.dim_ != dim_) return false;
  for (int k = 0; k < dim_; ++k) {
    auto ks = static_cast<std::size_t>(k);
    if (other.counts_[ks] != counts_[ks]) return false;
    if (std::abs(other.box_.lo[ks] - box_.lo[ks]) > 1e-12) return false;
    if (std::abs(other.box_.hi[ks] - box_.hi[ks]) > 1e-12) return false;
  }
  return true;
}

std::string BoxGrid::describe() const {
  std::ostringstream os;
  os << dim_ << "d ";
  for (int k = 0; k < dim_; ++k) {
    if (k) os << "x";
    os << counts_[static_cast<std::size_t>(k)];
  }
  os << " on [";
  for (int k = 0; k < dim_; ++k) {
    auto ks = static_cast<std::size_t>(k);
    if (k) os << "]x[";
    os << box_.lo[ks] << "," << box_.hi[ks];
  }
  os << "]";
  return os.str();
}

}  // namespace orlicz
