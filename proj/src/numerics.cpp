#include "tat/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace tat::num {

std::vector<double> derivative(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  if (n < 5) throw std::invalid_argument("derivative: need at least 5 samples");
  std::vector<double> d(n);
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]);
  d[1] = c * (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]);
  for (std::size_t k = 2; k + 2 < n; ++k)
    d[k] = c * (v[k - 2] - 8 * v[k - 1] + 8 * v[k + 1] - v[k + 2]);
  d[n - 2] = c * (3 * v[n - 1] + 10 * v[n - 2] - 18 * v[n - 3] + 6 * v[n - 4] - v[n - 5]);
  d[n - 1] = c * (25 * v[n - 1] - 48 * v[n - 2] + 36 * v[n - 3] - 16 * v[n - 4] + 3 * v[n - 5]);
  return d;
}

double interp_cubic(std::span<const double> v, double h, double x) {
  const auto n = static_cast<long>(v.size());
  const double pos = x / h;
  long start = static_cast<long>(std::floor(pos)) - 1;
  start = std::clamp(start, 0L, n - 4);
  const double u = pos - static_cast<double>(start);
  const double um1 = u - 1.0, um2 = u - 2.0, um3 = u - 3.0;
  const double* p = v.data() + start;
  return -p[0] * um1 * um2 * um3 / 6.0 + p[1] * u * um2 * um3 / 2.0 -
         p[2] * u * um1 * um3 / 2.0 + p[3] * u * um1 * um2 / 6.0;
}

double trapezoid(std::span<const double> v, double h) {
  if (v.size() < 2) return 0.0;
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t k = 1; k + 1 < v.size(); ++k) s += v[k];
  return s * h;
}

std::vector<double> cumulative_trapezoid(std::span<const double> v, double h) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t k = 1; k < v.size(); ++k) out[k] = out[k - 1] + 0.5 * h * (v[k - 1] + v[k]);
  return out;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  // P_n(x) and P_n'(x) by the three-term recurrence
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    // P_n'(0) from the recurrence at x = 0
    double p0 = 1.0, p1 = 0.0;
    for (int k = 2; k <= n - 1; ++k) {
      const double p2 = -(k - 1.0) * p0 / k;
      p0 = p1;
      p1 = p2;
    }
    const double prev = (n == 1) ? 1.0 : p1;  // P_{n-1}(0)
    const double dp = n * prev;               // P_n'(0) = n P_{n-1}(0)
    rule.weights[n / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

namespace {
double xlogx_minus_x(double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; }
double half_sq_log(double u) {
  return u == 0.0 ? 0.0 : 0.5 * u * u * std::log(std::abs(u)) - 0.25 * u * u;
}
}  // namespace

LogMoments log_moments(double a, double b, double c) {
  const double ua = a - c, ub = b - c;
  const double m0 = xlogx_minus_x(ub) - xlogx_minus_x(ua);
  const double m1 = half_sq_log(ub) - half_sq_log(ua) + (c - a) * m0;
  return {m0, m1};
}

}  // namespace tat::num
