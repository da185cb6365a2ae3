#pragma once

// Analytic initial-pressure phantoms supported in the closed unit ball, and a
// Monte Carlo oracle for their spherical means.

#include <cstdint>
#include <vector>

#include "tat/numerics.hpp"

namespace tat {

enum class ComponentKind { Ball, SmoothBump };

/// A radially symmetric primitive. SmoothBump has profile
/// a (1 - |x-c|^2 / rho^2)^4 inside the ball, which is C^3 across the edge.
struct Component {
  ComponentKind kind = ComponentKind::SmoothBump;
  Point center{0.0, 0.0, 0.0};
  double radius = 0.0;
  double amplitude = 0.0;

  /// Value at squared distance q = |x - c|^2 from the center.
  double profile(double q) const;
  bool operator==(const Component&) const = default;
};

class Phantom {
 public:
  Phantom() = default;
  /// Throws std::invalid_argument when a component leaves the closed unit
  /// ball and `allow_exterior` is false.
  Phantom(int dim, std::vector<Component> components, bool allow_exterior = false);

  int dim() const { return dim_; }
  const std::vector<Component>& components() const { return components_; }
  bool admissible() const;

  double eval(const Point& x) const;
  /// Upper bound of |f|, attained at a component center for non-overlapping supports.
  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<Component> components_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Brute-force Monte Carlo spherical mean of f over the sphere of radius r
/// centred at y. Samples are drawn in fixed-size chunks, each seeded from
/// (seed, chunk index), so the result does not depend on thread count.
McEstimate oracle_spherical_mean(const Phantom& f, const Point& y, double r, long mc_samples,
                                 std::uint64_t seed);

/// Fraction of the sphere of radius r, whose centre lies at distance d from
/// the centre of a ball of radius rho, that lies inside the ball.
double cap_fraction(int dim, double d, double r, double rho);

}  // namespace tat
