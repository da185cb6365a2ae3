#include <doctest.h>

#include <cmath>
#include <vector>

#include "tat/numerics.hpp"

using namespace tat;

namespace {

std::vector<double> sample(double h, int n, double (*fn)(double)) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = fn(k * h);
  return v;
}

}  // namespace

TEST_CASE("derivative is exact on quartics, including the end stencils") {
  const double h = 0.1;
  auto v = sample(h, 12, [](double x) { return x * x * x * x - 2 * x * x + 3; });
  auto d = num::derivative(v, h);
  for (int k = 0; k < 12; ++k) {
    const double x = k * h;
    CHECK(d[k] == doctest::Approx(4 * x * x * x - 4 * x).epsilon(1e-10));
  }
}

TEST_CASE("derivative of sin converges at fourth order") {
  auto err = [](int n) {
    const double h = 2.0 / (n - 1);
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = std::sin(k * h);
    auto d = num::derivative(v, h);
    double m = 0;
    for (int k = 0; k < n; ++k) m = std::max(m, std::abs(d[k] - std::cos(k * h)));
    return m;
  };
  const double ratio = err(41) / err(81);
  CHECK(ratio > 12.0);
}

TEST_CASE("cubic interpolation reproduces cubics") {
  const double h = 0.25;
  auto v = sample(h, 9, [](double x) { return x * x * x - x + 1; });
  for (double x : {0.0, 0.1, 0.9, 1.37, 1.99, 2.0}) CHECK(num::interp_cubic(v, h, x) == doctest::Approx(x * x * x - x + 1).epsilon(1e-12));
}

TEST_CASE("trapezoid and cumulative trapezoid") {
  std::vector<double> c(11, 3.0);
  CHECK(num::trapezoid(c, 0.1) == doctest::Approx(3.0));
  auto p = num::cumulative_trapezoid(c, 0.1);
  CHECK(p[0] == 0.0);
  for (int k = 0; k < 11; ++k) CHECK(p[k] == doctest::Approx(0.3 * k));
}

TEST_CASE("Gauss-Legendre integrates degree 2n-1 exactly") {
  for (int n : {1, 2, 3, 5, 8, 16}) {
    auto g = num::gauss_legendre(n);
    double sw = 0, m = 0;
    for (int i = 0; i < n; ++i) {
      sw += g.weights[i];
      m += g.weights[i] * std::pow(g.nodes[i], 2 * n - 2);
    }
    CHECK(sw == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
  }
  auto g3 = num::gauss_legendre(3);
  CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("log moments match fine midpoint quadrature") {
  for (double c : {-0.3, 0.0, 0.25, 0.5, 0.77, 1.0, 1.6}) {
    const double a = 0.0, b = 1.0;
    const auto m = num::log_moments(a, b, c);
    const int n = 400000;
    double q0 = 0, q1 = 0;
    for (int i = 0; i < n; ++i) {
      const double r = a + (b - a) * (i + 0.5) / n;
      const double l = std::log(std::abs(r - c));
      q0 += l;
      q1 += (r - a) * l;
    }
    q0 *= (b - a) / n;
    q1 *= (b - a) / n;
    CHECK(m.m0 == doctest::Approx(q0).epsilon(1e-4));
    CHECK(m.m1 == doctest::Approx(q1).epsilon(1e-4));
  }
}
