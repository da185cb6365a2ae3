#pragma once

// Backprojection over the detector sphere. For each x,
//   f(x) = sum_j w_j [ alpha D_j(s) <y_j - x, y_j - xi>/s + beta F_j(s) ],  s = |x - y_j|,
// with D and F filtered profiles sampled on a uniform s grid and read by
// cubic interpolation. The serial version is the reference; the OpenMP
// version parallelises over points and keeps the detector order per point,
// so both return bitwise identical results.

#include <span>
#include <vector>

#include "tat/grids.hpp"
#include "tat/xform.hpp"

namespace tat {

struct BackprojectionJob {
  const SphereGrid* sphere = nullptr;
  const ProfileSet* derivative = nullptr;  // D, may be null when alpha = 0
  double alpha = 0.0;
  const ProfileSet* value = nullptr;  // F, may be null when beta = 0
  double beta = 0.0;
  bool xi_equals_x = true;
  Point xi{0.0, 0.0, 0.0};  // used when xi_equals_x is false
};

double backproject_point(const BackprojectionJob& job, const Point& x);

std::vector<double> backproject_serial(const BackprojectionJob& job, std::span<const Point> points);
std::vector<double> backproject(const BackprojectionJob& job, std::span<const Point> points);

}  // namespace tat
