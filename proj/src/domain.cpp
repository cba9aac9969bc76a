#include "pdw/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pdw/special_functions.hpp"

namespace pdw {

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::cube: return "cube";
    case Shape::ball: return "ball";
    case Shape::product: return "product";
  }
  return "unknown";
}

Shape shape_from_string(const std::string& name) {
  if (name == "cube" || name == "interval") return Shape::cube;
  if (name == "ball") return Shape::ball;
  if (name == "product") return Shape::product;
  throw std::invalid_argument("unknown domain shape '" + name + "'");
}

Domain Domain::cube(int dim, double halfwidth) {
  if (dim < 1) throw std::invalid_argument("Domain: dimension must be >= 1");
  if (!(halfwidth > 0.0)) throw std::invalid_argument("Domain: half-width must be positive");
  Domain d;
  d.dim_ = dim;
  d.shape_ = Shape::cube;
  d.delta_ = halfwidth;
  return d;
}

Domain Domain::ball(int dim, double radius) {
  if (dim < 1) throw std::invalid_argument("Domain: dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("Domain: radius must be positive");
  Domain d;
  d.dim_ = dim;
  d.shape_ = Shape::ball;
  d.delta_ = radius;
  return d;
}

Domain Domain::product(std::vector<Domain> factors) {
  if (factors.empty()) throw std::invalid_argument("Domain: product needs at least one factor");
  Domain d;
  d.shape_ = Shape::product;
  for (auto& f : factors) {
    for (auto& leaf : f.factors()) {
      d.dim_ += leaf.dim_;
      d.factors_.push_back(std::move(leaf));
    }
  }
  if (d.factors_.size() == 1) return d.factors_.front();
  return d;
}

double Domain::delta() const {
  if (shape_ == Shape::product) throw std::logic_error("Domain::delta: product domain has no single size");
  return delta_;
}

std::vector<Domain> Domain::factors() const {
  if (shape_ == Shape::product) return factors_;
  return {*this};
}

double Domain::volume() const {
  switch (shape_) {
    case Shape::cube: return std::pow(2.0 * delta_, dim_);
    case Shape::ball: return std::pow(delta_, dim_) * unit_ball_volume(dim_);
    case Shape::product: {
      double v = 1.0;
      for (const auto& f : factors_) v *= f.volume();
      return v;
    }
  }
  return 0.0;
}

Domain Domain::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("Domain::scaled: factor must be positive");
  Domain d = *this;
  d.delta_ *= lambda;
  for (auto& f : d.factors_) f = f.scaled(lambda);
  return d;
}

double Domain::inradius() const {
  if (shape_ != Shape::product) return delta_;
  double r = factors_.front().delta_;
  for (const auto& f : factors_) r = std::min(r, f.delta_);
  return r;
}

double Domain::cube_halfwidth() const {
  if (shape_ != Shape::product) return delta_;
  double h = 0.0;
  for (const auto& f : factors_) h = std::max(h, f.delta_);
  return h;
}

bool Domain::fits_in_cell() const { return cube_halfwidth() < 0.5; }

bool Domain::is_box() const {
  const auto parts = factors();
  return std::all_of(parts.begin(), parts.end(), [](const Domain& f) { return f.shape_ == Shape::cube || f.dim_ == 1; });
}

std::vector<double> Domain::box_halfwidths() const {
  if (!is_box()) throw std::logic_error("Domain::box_halfwidths: not a box");
  std::vector<double> out;
  for (const auto& f : factors()) out.insert(out.end(), f.dim_, f.delta_);
  return out;
}

bool Domain::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("Domain::contains: dimension mismatch");
  std::size_t offset = 0;
  for (const auto& f : factors()) {
    auto part = x.subspan(offset, f.dim_);
    offset += f.dim_;
    if (f.shape_ == Shape::cube) {
      for (double v : part)
        if (std::abs(v) > f.delta_) return false;
    } else {
      double r2 = 0.0;
      for (double v : part) r2 += v * v;
      if (r2 > f.delta_ * f.delta_) return false;
    }
  }
  return true;
}

std::string Domain::describe() const {
  std::ostringstream os;
  if (shape_ == Shape::product) {
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " x " : "") << factors_[i].describe();
  } else {
    os << to_string(shape_) << "(delta=" << delta_ << ", dim=" << dim_ << ")";
  }
  return os.str();
}

}  // namespace pdw
