// Origin-symmetric convex bodies: cubes δI^n, balls δB^n and products of them.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace pdw {

enum class Shape { cube, ball, product };

std::string to_string(Shape shape);
Shape shape_from_string(const std::string& name);

class Domain {
 public:
  /// δI^n = [-δ, δ]^n.
  static Domain cube(int dim, double halfwidth);
  /// δB^n, the closed Euclidean ball of radius δ.
  static Domain ball(int dim, double radius);
  /// D_1 × ... × D_k; nested products are flattened.
  static Domain product(std::vector<Domain> factors);

  int dim() const { return dim_; }
  Shape shape() const { return shape_; }
  /// Half-width (cube) or radius (ball); throws for products.
  double delta() const;
  /// Factors of a product; a single-element list {*this} otherwise.
  std::vector<Domain> factors() const;

  double volume() const;
  Domain scaled(double lambda) const;

  /// Largest ε with B_ε ⊂ D.
  double inradius() const;
  /// Smallest δ with D ⊂ δI^n.
  double cube_halfwidth() const;
  /// True when every factor lies strictly inside the cell [-1/2, 1/2)^n.
  bool fits_in_cell() const;
  /// True when the domain is a box (a cube or a product of cubes).
  bool is_box() const;
  /// Per-axis half-widths of a box.
  std::vector<double> box_halfwidths() const;

  bool contains(std::span<const double> x) const;
  std::string describe() const;

 private:
  Domain() = default;

  int dim_ = 0;
  Shape shape_ = Shape::cube;
  double delta_ = 0.0;
  std::vector<Domain> factors_;
};

}  // namespace pdw
