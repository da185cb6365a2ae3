#include "tat/grids.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tat {

double sphere_measure(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere_measure: dim must be positive");
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

SphereGrid make_sphere_grid(int dim, int resolution) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("make_sphere_grid: unsupported dimension " + std::to_string(dim));
  if (resolution < 8)
    throw std::invalid_argument("make_sphere_grid: resolution must be at least 8");

  SphereGrid g;
  g.dim = dim;
  g.resolution = resolution;
  g.exactness_degree = resolution - 1;
  if (dim == 2) {
    g.nodes.reserve(resolution);
    for (int j = 0; j < resolution; ++j) {
      const double th = 2.0 * kPi * j / resolution;
      g.nodes.push_back({std::cos(th), std::sin(th), 0.0});
    }
    g.weights.assign(resolution, 2.0 * kPi / resolution);
    return g;
  }

  const int n_polar = resolution / 2;
  const int n_azimuth = resolution;
  const auto gl = num::gauss_legendre(n_polar);
  g.nodes.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
  g.weights.reserve(g.nodes.capacity());
  for (int i = 0; i < n_polar; ++i) {
    const double mu = gl.nodes[i];
    const double rho = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    for (int j = 0; j < n_azimuth; ++j) {
      const double ph = 2.0 * kPi * j / n_azimuth;
      g.nodes.push_back({rho * std::cos(ph), rho * std::sin(ph), mu});
      g.weights.push_back(gl.weights[i] * 2.0 * kPi / n_azimuth);
    }
  }
  return g;
}

TimeGrid make_time_grid(double t_max, int samples) {
  if (!(t_max > 0.0)) throw std::invalid_argument("make_time_grid: t_max must be positive");
  if (samples < 2) throw std::invalid_argument("make_time_grid: need at least 2 samples");
  return TimeGrid{t_max, samples};
}

double ReconGrid::axis_coordinate(int i) const {
  if (points_per_axis == 1) return 0.0;
  return -half_width + 2.0 * half_width * i / (points_per_axis - 1);
}

ReconGrid make_recon_grid(int dim, double half_width, int points_per_axis, double margin) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("make_recon_grid: unsupported dimension " + std::to_string(dim));
  if (half_width < 0.0 || half_width > 1.0)
    throw std::invalid_argument("make_recon_grid: half_width must lie in [0, 1]");
  if (margin < 0.0) throw std::invalid_argument("make_recon_grid: margin must be nonnegative");
  if (points_per_axis < 1) throw std::invalid_argument("make_recon_grid: points_per_axis must be positive");

  ReconGrid g;
  g.dim = dim;
  g.half_width = half_width;
  g.points_per_axis = points_per_axis;
  g.margin = margin;
  const int nk = dim == 3 ? points_per_axis : 1;
  const double limit = 1.0 - margin;
  for (int i = 0; i < points_per_axis; ++i)
    for (int j = 0; j < points_per_axis; ++j)
      for (int k = 0; k < nk; ++k) {
        const Point p{g.axis_coordinate(i), g.axis_coordinate(j), dim == 3 ? g.axis_coordinate(k) : 0.0};
        const double r = norm(p);
        if (r <= limit && r < 1.0) {
          g.points.push_back(p);
          g.lattice_index.push_back({i, j, k});
        }
      }
  if (g.points.empty()) throw std::invalid_argument("make_recon_grid: grid is empty");
  g.values.assign(g.points.size(), 0.0);
  return g;
}

}  // namespace tat
