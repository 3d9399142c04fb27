#pragma once

#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "earring/word.hpp"

namespace earring {

// A point of the base space X. Plane models use (x, y); finite models use a
// single coordinate holding the point's label.
using BasePoint = std::vector<double>;

// The base space X with its metric and a fixed enumeration d_1, d_2, ... of a
// dense subset. Only a finite prefix of the enumeration is materialized.
class SpaceModel {
 public:
  virtual ~SpaceModel() = default;

  virtual std::string name() const = 0;
  virtual double base_distance(const BasePoint& x, const BasePoint& y) const = 0;
  virtual bool contains(const BasePoint& x) const = 0;
  // Uniform-ish random point of X, for property tests.
  virtual BasePoint sample(std::mt19937_64& rng) const = 0;
  // True for the built-in convex models, where every loop contracts inside
  // its own convex hull.
  virtual bool is_builtin_convex() const { return false; }

  // d_n, 1-based. Throws DomainError beyond the materialized prefix.
  const BasePoint& dense_point(GenIndex n) const;
  std::size_t materialized() const { return dense_.size(); }

 protected:
  std::vector<BasePoint> dense_;
};

using ModelPtr = std::shared_ptr<const SpaceModel>;

// Closed unit square [0,1]^2, Euclidean. Dense points are dyadic grid points,
// level by level (spacing 2^-k), row-major, each point listed once: d_1 = (0,0),
// d_2 = (1,0), d_3 = (0,1), d_4 = (1,1), d_5 = (1/2,0), ...
ModelPtr unit_square();
// Closed unit disk centred at the origin, same dyadic enumeration over
// [-1,1]^2 restricted to the disk.
ModelPtr unit_disk();

// Finite metric space from a distance matrix. Every point is a dense point;
// d_n is the point labelled n-1. Throws DomainError if the matrix is not a
// metric (tolerance 1e-12).
ModelPtr finite_model(std::string name, std::vector<std::vector<double>> distances);
// Text format:
//   format: 1
//   name: <id>
//   points: <k>
//   <k rows of k distances>
// Lines starting with '#' are ignored.
ModelPtr parse_finite_model(std::string_view text);
ModelPtr load_finite_model(const std::string& file);

// "unit-square", "disk" (alias "unit-disk"), otherwise <name>.model under
// $EARRING_MODEL_DIR, otherwise <name> as a file path.
ModelPtr model_by_name(const std::string& name);

struct OnBase {
  BasePoint x;
  friend bool operator==(const OnBase&, const OnBase&) = default;
};
// Point at coordinate theta in [0,1) of the circle attached at d_n.
struct OnCircle {
  GenIndex n = 1;
  double theta = 0.0;
  friend bool operator==(const OnCircle&, const OnCircle&) = default;
};
using EPoint = std::variant<OnBase, OnCircle>;

// Circle(n, 0) is the attachment point and is stored as Base(d_n).
EPoint canonical(const EPoint& p, const SpaceModel& model);

// Arc metric on the unit-circumference circle: diameter 1/2.
double circle_metric(double theta1, double theta2);

double distance(const EPoint& p, const EPoint& q, const SpaceModel& model);

BasePoint retract(const EPoint& p, const SpaceModel& model);

struct Star {
  friend bool operator==(const Star&, const Star&) = default;
};
// A point of the earring obtained by collapsing X to the single point *.
using HPoint = std::variant<Star, OnCircle>;

HPoint quotient(const EPoint& p);
double quotient_distance(const HPoint& h1, const HPoint& h2);

// Largest pairwise distance. Throws DomainError on an empty set.
double diam(std::span<const EPoint> points, const SpaceModel& model);

// `b:x,y` (any number of coordinates) or `c:n:theta`.
EPoint parse_point(std::string_view text);
std::string to_string(const EPoint& p);
std::string to_string(const HPoint& h);
std::string to_string(const BasePoint& x);

}  // namespace earring
