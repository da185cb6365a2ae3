#pragma once

// Shared discretization utilities: finite-difference stencils, uniform-grid
// interpolation, Gauss-Legendre rules and closed-form log moments used by the
// product-integration routines.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace tat {

constexpr double kPi = std::numbers::pi;

using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator*(double s, const Point& a) { return {s * a[0], s * a[1], s * a[2]}; }

namespace num {

/// First derivative on a uniform grid with spacing h. Fourth-order central
/// differences in the interior, fourth-order one-sided stencils on the two
/// nodes at each end. Requires at least 5 samples.
std::vector<double> derivative(std::span<const double> v, double h);

/// Cubic (4-point Lagrange) interpolation of samples v_k = v(k h) at x.
/// The stencil is clamped to the grid, so x slightly outside [0, (N-1) h]
/// extrapolates from the end cell.
double interp_cubic(std::span<const double> v, double h, double x);

/// Trapezoid rule over all samples.
double trapezoid(std::span<const double> v, double h);

/// Running trapezoid integral, out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> v, double h);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// Integrals of ln|r - c| and (r - a) ln|r - c| over [a, b]; exact.
/// Used for product integration of a linear interpolant against a log kernel.
struct LogMoments {
  double m0;  // \int_a^b ln|r-c| dr
  double m1;  // \int_a^b (r-a) ln|r-c| dr
};
LogMoments log_moments(double a, double b, double c);

}  // namespace num
}  // namespace tat
