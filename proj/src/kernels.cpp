#include "tat/kernels.hpp"

#include <stdexcept>

namespace tat {

double backproject_point(const BackprojectionJob& job, const Point& x) {
  const SphereGrid& sph = *job.sphere;
  const bool use_d = job.derivative != nullptr && job.alpha != 0.0;
  const bool use_f = job.value != nullptr && job.beta != 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < sph.size(); ++j) {
    const Point& y = sph.nodes[j];
    const Point yx = y - x;
    const double s = norm(yx);
    double term = 0.0;
    if (use_d) {
      const double geom = job.xi_equals_x ? s : dot(yx, y - job.xi) / s;
      const auto& d = *job.derivative;
      term += job.alpha * num::interp_cubic(d.row(static_cast<int>(j)), d.grid.dt(), s) * geom;
    }
    if (use_f) {
      const auto& f = *job.value;
      term += job.beta * num::interp_cubic(f.row(static_cast<int>(j)), f.grid.dt(), s);
    }
    acc += sph.weights[j] * term;
  }
  return acc;
}

namespace {

void validate(const BackprojectionJob& job) {
  if (job.sphere == nullptr) throw std::invalid_argument("backprojection: no detector sphere");
  for (const ProfileSet* p : {job.derivative, job.value})
    if (p != nullptr && p->detectors != static_cast<int>(job.sphere->size()))
      throw std::invalid_argument("backprojection: profile count does not match detector count");
}

}  // namespace

std::vector<double> backproject_serial(const BackprojectionJob& job, std::span<const Point> points) {
  validate(job);
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = backproject_point(job, points[i]);
  return out;
}

std::vector<double> backproject(const BackprojectionJob& job, std::span<const Point> points) {
  validate(job);
  std::vector<double> out(points.size());
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) out[i] = backproject_point(job, points[i]);
  return out;
}

}  // namespace tat
