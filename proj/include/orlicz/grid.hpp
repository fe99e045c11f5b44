#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace orlicz {

// A point in R^n, n <= 3. Unused coordinates stay zero.
struct Point {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  int dim = 2;

  double operator[](int k) const { return x[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return x[static_cast<std::size_t>(k)]; }
};

Point make_point(double a);
Point make_point(double a, double b);
Point make_point(double a, double b, double c);

struct Box {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  int dim = 2;

  bool contains(const Point& p, double eps = 1e-12) const;
  double volume() const;
};

// Uniform tensor grid over a box. Nodes along axis k sit at
// lo[k] + i * spacing(k), i = 0..count(k)-1. Flat indices are row-major with
// axis 0 slowest.
class BoxGrid {
 public:
  BoxGrid() = default;
  BoxGrid(int dim, std::array<int, 3> counts, const Box& box);

  int dim() const { return dim_; }
  const Box& box() const { return box_; }
  int count(int axis) const { return counts_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  std::size_t node_count() const { return total_; }

  std::size_t flat(const std::array<int, 3>& idx) const;
  std::array<int, 3> unflat(std::size_t flat) const;
  Point node(std::size_t flat) const;
  Point node(const std::array<int, 3>& idx) const;

  // Trapezoid weight of a node: product over axes of h_k, halved at faces.
  double weight(std::size_t flat) const;

  // True when `other` is this grid with every cell split in two per axis.
  bool refines_to(const BoxGrid& fine) const;

  bool same_layout(const BoxGrid& other) const;
  std::string describe() const;

 private:
  int dim_ = 0;
  std::array<int, 3> counts_{1, 1, 1};
  std::array<double, 3> spacing_{0.0, 0.0, 0.0};
  Box box_;
  std::size_t total_ = 0;
};

}  // namespace orlicz
