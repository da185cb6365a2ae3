#pragma once

// The intertwining filter W, its L2 adjoint W*, the scaled derivative s d/ds,
// and the singular Abel-type quadratures they are built from.
//
// Profiles live on uniform grids starting at s = 0. Every derivative
// application shrinks the valid index window by two cells at each end; nodes
// outside the window hold finite (one-sided or extrapolated) values but
// callers must not evaluate there.

#include <span>
#include <variant>
#include <vector>

#include "tat/grids.hpp"
#include "tat/numerics.hpp"

namespace tat {

struct CompactSupport {
  double bound = 2.0;  // profile vanishes for t > bound
};
struct PowerDecay {
  double exponent = 2.0;  // |v(t)| = O(t^-exponent) beyond the grid
};
using DecayClass = std::variant<CompactSupport, PowerDecay>;

struct RadialProfile {
  TimeGrid grid;
  std::vector<double> values;
  DecayClass decay = CompactSupport{};
  int lo = 0;   // first valid index
  int hi = -1;  // last valid index

  static RadialProfile from_samples(const TimeGrid& grid, std::vector<double> values,
                                    DecayClass decay = CompactSupport{});
  template <class F>
  static RadialProfile sample(const TimeGrid& grid, F&& fn, DecayClass decay = CompactSupport{}) {
    std::vector<double> v(grid.samples);
    for (int k = 0; k < grid.samples; ++k) v[k] = fn(grid.at(k));
    return from_samples(grid, std::move(v), decay);
  }

  double lo_s() const { return lo * grid.dt(); }
  double hi_s() const { return hi * grid.dt(); }
  /// Cubic interpolation at radius s.
  double at(double s) const { return num::interp_cubic(values, grid.dt(), s); }
};

/// The normalising constant c_n of W.
double w_constant(int n);

struct WOptions {
  /// For odd n a nonzero v(0) makes v(s)/s singular at the origin. By default
  /// that is an error; when allowed, node 0 is dropped from the valid window.
  bool allow_singular_origin = false;
};

RadialProfile apply_w(const RadialProfile& v, int n, WOptions opt = {});
RadialProfile apply_w_star(const RadialProfile& v, int n, WOptions opt = {});

/// v(s)/s; at the origin v'(0) when v(0) vanishes, otherwise per `opt`.
RadialProfile divide_by_s(const RadialProfile& v, WOptions opt = {});
/// s -> \int_0^s v(t) / sqrt(s^2 - t^2) dt on the profile's grid.
RadialProfile abel_head(const RadialProfile& v);

RadialProfile d_ds(const RadialProfile& v);
/// s * dv/ds
RadialProfile s_dds(const RadialProfile& v);
/// (1/s) dv/ds; the origin value is dropped from the window.
RadialProfile inv_s_dds(const RadialProfile& v);

RadialProfile operator+(const RadialProfile& a, const RadialProfile& b);
RadialProfile operator-(const RadialProfile& a, const RadialProfile& b);
RadialProfile operator*(double c, const RadialProfile& a);

/// Max-norm residual of  s d/ds W(v) = W(s dv/ds) - (n-2) W(v)  over the
/// common valid window less two cells at each end.
double check_intertwining(const RadialProfile& v, int n);

/// Max-norm residual of  W(v'') = [d^2/ds^2 + (n-1)/s d/ds] W(v)  over the
/// same kind of interior window.
double check_bessel_intertwining(const RadialProfile& v, int n);

/// Discrete L2 inner product (trapezoid) over [0, t_max].
double inner_product(const RadialProfile& a, const RadialProfile& b);

/// Per-detector profiles sharing one radial grid and valid window.
struct ProfileSet {
  TimeGrid grid;
  int detectors = 0;
  std::vector<double> values;  // detector-major
  int lo = 0;
  int hi = -1;

  std::span<const double> row(int j) const {
    return {values.data() + static_cast<std::size_t>(j) * grid.samples,
            static_cast<std::size_t>(grid.samples)};
  }
  std::span<double> row(int j) {
    return {values.data() + static_cast<std::size_t>(j) * grid.samples,
            static_cast<std::size_t>(grid.samples)};
  }
};

namespace abel {

/// Cells-per-panel Gauss rule size used by the Abel quadratures.
constexpr int kCellNodes = 5;

/// \int_0^s v(t) / sqrt(s^2 - t^2) dt for grid samples v (spacing h), via
/// t = s sin(u) on each grid cell; returns v(0) pi/2 at s = 0.
double head(std::span<const double> v, double h, double s, const num::GaussRule& cell_rule);

/// \int_s^b v(t) / sqrt(t^2 - s^2) dt via t = s cosh(u) on each grid cell.
/// At s = 0 this is \int_0^b v(t)/t dt and assumes v(0) = 0.
double tail(std::span<const double> v, double h, double s, double b, const num::GaussRule& cell_rule);

/// \int_T^inf t^-p / sqrt(t^2 - s^2) dt, s < T, p > 0.
double power_tail(double T, double s, double p);

}  // namespace abel

}  // namespace tat
