#include "tat/forward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tat {

std::string to_string(PanelKind k) {
  switch (k) {
    case PanelKind::RadonRS: return "RadonRS";
    case PanelKind::MeanMS: return "MeanMS";
    case PanelKind::WaveT: return "WaveT";
    case PanelKind::IntegralP: return "IntegralP";
    case PanelKind::NeumannTrace: return "NeumannTrace";
  }
  return "?";
}

PanelKind panel_kind_from_string(const std::string& s) {
  for (PanelKind k : {PanelKind::RadonRS, PanelKind::MeanMS, PanelKind::WaveT, PanelKind::IntegralP,
                      PanelKind::NeumannTrace})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown panel kind '" + s + "'");
}

double DataPanel::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Integral of one radially symmetric component over the sphere |z - y| = t,
// in polar coordinates about the axis from y towards the component centre.
// The support is the cap mu > mu_star, so Gauss nodes are placed on the cap
// only and the integrand is smooth on it.
double component_sphere_integral(const Component& c, int dim, const Point& y, double t,
                                 const num::GaussRule& rule) {
  const double d = norm(c.center - y);
  const double r2 = c.radius * c.radius;
  if (t == 0.0 || d < 1e-14 * std::max(1.0, t)) {
    return sphere_measure(dim) * c.profile(d * d + t * t);
  }
  if (t >= d + c.radius || t <= d - c.radius) return 0.0;
  const double mu_star = std::max(-1.0, (d * d + t * t - r2) / (2.0 * d * t));
  double acc = 0.0;
  if (dim == 3) {
    const double half = 0.5 * (1.0 - mu_star), mid = 0.5 * (1.0 + mu_star);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double mu = mid + half * rule.nodes[i];
      acc += rule.weights[i] * c.profile(t * t + d * d - 2.0 * t * d * mu);
    }
    return 2.0 * kPi * half * acc;
  }
  const double theta_star = std::acos(std::min(1.0, mu_star));
  const double half = 0.5 * theta_star;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double th = half + half * rule.nodes[i];
    acc += rule.weights[i] * c.profile(t * t + d * d - 2.0 * t * d * std::cos(th));
  }
  return 2.0 * half * acc;
}

double sphere_integral_with(const Phantom& f, const Point& y, double t, const num::GaussRule& rule) {
  double acc = 0.0;
  for (const auto& c : f.components()) acc += component_sphere_integral(c, f.dim(), y, t, rule);
  return acc;
}

void require_dims(const Phantom& f, const SphereGrid& sphere) {
  if (f.dim() != sphere.dim) throw std::invalid_argument("phantom and detector sphere dimensions differ");
}

DataPanel make_panel(PanelKind kind, const SphereGrid& sphere, const TimeGrid& time) {
  DataPanel p{kind, sphere, time, {}};
  p.values.assign(sphere.size() * static_cast<std::size_t>(time.samples), 0.0);
  return p;
}

// R_S at detector centres scaled by `radius`.
DataPanel radon_at_radius(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time, double radius,
                          int angular_resolution) {
  require_dims(f, sphere);
  if (angular_resolution < 1) throw std::invalid_argument("angular resolution must be positive");
  const auto rule = num::gauss_legendre(angular_resolution);
  DataPanel p = make_panel(PanelKind::RadonRS, sphere, time);
  const int n = sphere.dim;
  const int nd = p.detectors();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nd; ++j) {
    const Point y = radius * sphere.nodes[j];
    for (int k = 0; k < time.samples; ++k) {
      const double t = time.at(k);
      p.at(j, k) = std::pow(t, n - 1) * sphere_integral_with(f, y, t, rule);
    }
  }
  return p;
}

}  // namespace

double sphere_integral(const Phantom& f, const Point& y, double t, int angular_resolution) {
  return sphere_integral_with(f, y, t, num::gauss_legendre(angular_resolution));
}

DataPanel radon_rs(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time, int angular_resolution) {
  return radon_at_radius(f, sphere, time, 1.0, angular_resolution);
}

DataPanel mean_ms(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time, int angular_resolution) {
  require_dims(f, sphere);
  if (angular_resolution < 1) throw std::invalid_argument("angular resolution must be positive");
  const auto rule = num::gauss_legendre(angular_resolution);
  DataPanel p = make_panel(PanelKind::MeanMS, sphere, time);
  const double area = sphere_measure(sphere.dim);
  const int nd = p.detectors();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nd; ++j)
    for (int k = 0; k < time.samples; ++k)
      p.at(j, k) = sphere_integral_with(f, sphere.nodes[j], time.at(k), rule) / area;
  return p;
}

RadialProfile b_transform(const RadialProfile& v, int n) {
  if (v.grid.samples < 8) throw std::invalid_argument("B: grid too coarse (fewer than 8 samples)");
  const double c = w_constant(n);
  if (n % 2 == 1) {
    const double sign = ((n - 3) / 2) % 2 == 0 ? 1.0 : -1.0;
    RadialProfile q = divide_by_s(v, {.allow_singular_origin = true});
    for (int i = 0; i < (n - 3) / 2; ++i) q = inv_s_dds(q);
    return (sign * c) * d_ds(q);
  }
  const double sign = ((n - 2) / 2) % 2 == 0 ? 1.0 : -1.0;
  RadialProfile q = abel_head(v);
  for (int i = 0; i < (n - 2) / 2; ++i) q = inv_s_dds(q);
  return (sign * c) * d_ds(q);
}

DataPanel apply_b_transform(const DataPanel& radon) {
  if (radon.kind != PanelKind::RadonRS) throw std::invalid_argument("B transform needs a RadonRS panel");
  DataPanel out = make_panel(PanelKind::WaveT, radon.sphere, radon.time);
  const int nd = radon.detectors();
  const int n = radon.dim();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nd; ++j) {
    const auto row = radon.row(j);
    const RadialProfile g =
        b_transform(RadialProfile::from_samples(radon.time, {row.begin(), row.end()}), n);
    std::copy(g.values.begin(), g.values.end(), out.values.begin() + static_cast<std::ptrdiff_t>(j) * radon.time.samples);
  }
  return out;
}

DataPanel integral_p(const DataPanel& wave) {
  if (wave.kind != PanelKind::WaveT) throw std::invalid_argument("integral_p needs a WaveT panel");
  DataPanel out = make_panel(PanelKind::IntegralP, wave.sphere, wave.time);
  const double h = wave.time.dt();
  for (int j = 0; j < wave.detectors(); ++j) {
    const auto p = num::cumulative_trapezoid(wave.row(j), h);
    std::copy(p.begin(), p.end(), out.values.begin() + static_cast<std::ptrdiff_t>(j) * wave.time.samples);
  }
  return out;
}

DataPanel wave_trace(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time, int angular_resolution) {
  return apply_b_transform(radon_rs(f, sphere, time, angular_resolution));
}

DataPanel neumann_trace(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time, double h_step,
                        int angular_resolution) {
  if (!(h_step > 0.0 && h_step < 0.5)) throw std::invalid_argument("neumann_trace: h_step must lie in (0, 0.5)");
  const DataPanel outer = apply_b_transform(radon_at_radius(f, sphere, time, 1.0 + h_step, angular_resolution));
  const DataPanel inner = apply_b_transform(radon_at_radius(f, sphere, time, 1.0 - h_step, angular_resolution));
  DataPanel out = make_panel(PanelKind::NeumannTrace, sphere, time);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = (outer.values[i] - inner.values[i]) / (2.0 * h_step);
  return out;
}

}  // namespace tat
