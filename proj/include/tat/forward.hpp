#pragma once

// Forward operators: spherical Radon transform and spherical means with
// centres on the detector sphere, the B filter taking R_S f to the wave trace
// T f, the time integral P f, and a finite-difference Neumann trace.

#include <span>
#include <string>
#include <vector>

#include "tat/grids.hpp"
#include "tat/phantom.hpp"
#include "tat/xform.hpp"

namespace tat {

enum class PanelKind { RadonRS, MeanMS, WaveT, IntegralP, NeumannTrace };

std::string to_string(PanelKind k);
/// Throws std::invalid_argument on an unknown name.
PanelKind panel_kind_from_string(const std::string& s);

/// Boundary data sampled at (detector j, time k), detector-major.
struct DataPanel {
  PanelKind kind = PanelKind::RadonRS;
  SphereGrid sphere;
  TimeGrid time;
  std::vector<double> values;

  int dim() const { return sphere.dim; }
  int detectors() const { return static_cast<int>(sphere.size()); }
  double& at(int j, int k) { return values[static_cast<std::size_t>(j) * time.samples + k]; }
  double at(int j, int k) const { return values[static_cast<std::size_t>(j) * time.samples + k]; }
  std::span<const double> row(int j) const {
    return {values.data() + static_cast<std::size_t>(j) * time.samples, static_cast<std::size_t>(time.samples)};
  }
  double max_abs() const;
};

constexpr int kDefaultAngularResolution = 64;
constexpr double kDefaultNeumannStep = 1e-3;

/// \int_{S^{n-1}} f(y + t w) dw for one centre y and radius t >= 0.
double sphere_integral(const Phantom& f, const Point& y, double t, int angular_resolution);

DataPanel radon_rs(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time,
                   int angular_resolution = kDefaultAngularResolution);
DataPanel mean_ms(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time,
                  int angular_resolution = kDefaultAngularResolution);

/// B applied to one radial profile v = R_S f(y, .). Valid window is returned
/// in the profile.
RadialProfile b_transform(const RadialProfile& v, int n);

/// Per-detector B; requires a RadonRS panel, returns WaveT.
DataPanel apply_b_transform(const DataPanel& radon);

/// Cumulative trapezoid in time; requires WaveT, returns IntegralP.
DataPanel integral_p(const DataPanel& wave);

/// Outward normal derivative of the wave at the detectors, by central
/// differencing the traces on the spheres of radius 1 +- h_step.
DataPanel neumann_trace(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time,
                        double h_step = kDefaultNeumannStep,
                        int angular_resolution = kDefaultAngularResolution);

/// Convenience: WaveT panel T f = B(R_S f).
DataPanel wave_trace(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time,
                     int angular_resolution = kDefaultAngularResolution);

}  // namespace tat
