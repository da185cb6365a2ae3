#pragma once

// Sampling geometry: detector quadrature on the unit sphere S^{n-1}, uniform
// time/radius grids, and Cartesian reconstruction grids inside the unit ball.

#include <array>
#include <vector>

#include "tat/numerics.hpp"

namespace tat {

/// Total measure of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_measure(int dim);

/// Quadrature on the unit sphere. For dim 2 the nodes are uniform angles;
/// for dim 3 they are Gauss-Legendre in the polar cosine times a uniform
/// azimuth. `resolution` is the number of nodes around the equator.
struct SphereGrid {
  int dim = 0;
  int resolution = 0;
  std::vector<Point> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;  // spherical polynomials up to this degree are integrated exactly

  std::size_t size() const { return nodes.size(); }
};

SphereGrid make_sphere_grid(int dim, int resolution);

/// Uniform grid t_k = k dt on [0, t_max].
struct TimeGrid {
  double t_max = 0.0;
  int samples = 0;

  double dt() const { return t_max / (samples - 1); }
  double at(int k) const { return k * dt(); }
  bool operator==(const TimeGrid&) const = default;
};

TimeGrid make_time_grid(double t_max, int samples);

/// Lattice points strictly inside the unit ball, |x| <= 1 - margin.
struct ReconGrid {
  int dim = 0;
  double half_width = 0.0;
  int points_per_axis = 0;
  double margin = 0.0;
  std::vector<Point> points;
  std::vector<std::array<int, 3>> lattice_index;  // per point, unused axes are 0
  std::vector<double> values;                     // one per point

  std::size_t size() const { return points.size(); }
  double axis_coordinate(int i) const;
};

constexpr double kDefaultMargin = 0.05;

ReconGrid make_recon_grid(int dim, double half_width, int points_per_axis,
                          double margin = kDefaultMargin);

}  // namespace tat
