#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "tat/specfun.hpp"

using namespace tat;

namespace {

// Independent 30-term series for J0 and Y0.
double j0_oracle(double x) {
  double s = 0, t = 1;
  for (int k = 0; k < 30; ++k) {
    if (k > 0) t *= -(x * x / 4) / (k * k);
    s += t;
  }
  return s;
}

double y0_oracle(double x) {
  double s = 0, t = 1, hk = 0;
  for (int k = 1; k < 30; ++k) {
    t *= -(x * x / 4) / (k * k);
    hk += 1.0 / k;
    s -= t * hk;
  }
  return 2 / kPi * ((std::log(x / 2) + 0.5772156649015329) * j0_oracle(x) + s);
}

DataPanel bump_radon(int dim, double t_max, int samples, int res = 8) {
  const Phantom f(dim, {{ComponentKind::SmoothBump, {0.2, -0.1, dim == 3 ? 0.15 : 0.0}, 0.5, 1.0}});
  return radon_rs(f, make_sphere_grid(dim, res), make_time_grid(t_max, samples));
}

double max_abs(std::span<const double> v, int lo, int hi) {
  double m = 0;
  for (int i = lo; i <= hi; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace

TEST_CASE("J0 and Y0 reference values") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976866).epsilon(1e-10));
  CHECK(bessel_y0(1.0) == doctest::Approx(0.0882569642).epsilon(1e-9));
  for (double x : {0.3, 1.0, 2.5, 5.0}) {
    CHECK(std::abs(bessel_j0(x) - j0_oracle(x)) < 1e-13);
    CHECK(std::abs(bessel_y0(x) - y0_oracle(x)) < 1e-13);
  }
  CHECK_THROWS_AS(bessel_y0(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y0(-1.0), std::domain_error);
}

TEST_CASE("J0 and Y0 agree with the standard library on (0, 100]") {
  double ej = 0, ey = 0;
  for (int i = 1; i <= 20000; ++i) {
    const double x = 100.0 * i / 20000;
    ej = std::max(ej, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
    ey = std::max(ey, std::abs(bessel_y0(x) - std::cyl_neumann(0.0, x)));
  }
  CHECK(ej < 1e-10);
  CHECK(ey < 1e-10);
}

TEST_CASE("Green's function values and symmetry") {
  CHECK(std::abs(green(3, 1.0, 0.0) - 1.0 / (4 * kPi)) < 1e-15);
  CHECK(std::abs(green(3, 2.0, kPi) - 1.0 / (8 * kPi)) < 1e-15);
  const auto g = green(2, 1.0, 1.0);
  CHECK(g.real() == doctest::Approx(-0.02206424105).epsilon(1e-8));
  CHECK(g.imag() == doctest::Approx(0.19129942166).epsilon(1e-8));
  for (int n : {2, 3})
    for (double s : {0.1, 0.7, 1.9})
      for (double l : {0.5, 3.0, 40.0}) {
        CHECK(green(n, s, -l) == std::conj(green(n, s, l)));
        const double f = std::pow(l, n - 2) / (4 * std::pow(2 * kPi, 0.5 * (n - 2)));
        CHECK(std::abs(green(n, s, l).real() + f * reduced_n(n, l * s)) < 1e-12);
        CHECK(std::abs(green(n, s, l).imag() - f * reduced_j(n, l * s)) < 1e-12);
      }
  CHECK_THROWS(green(2, 1.0, 0.0));
  CHECK_THROWS(green(3, 0.0, 1.0));
  CHECK_THROWS(green(4, 1.0, 1.0));
}

TEST_CASE("lambda rule") {
  const auto t = make_time_grid(2.0, 257);
  const auto r = make_lambda_rule(t, {});
  double sum = 0, m1 = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    sum += r.weights[i];
    m1 += r.weights[i] * r.nodes[i];
  }
  CHECK(sum == doctest::Approx(r.lambda_max).epsilon(1e-12));
  CHECK(m1 == doctest::Approx(0.5 * r.lambda_max * r.lambda_max).epsilon(1e-12));
  CHECK(r.lambda_max == doctest::Approx(0.8 * kPi / t.dt()));
  CHECK_THROWS(make_lambda_rule(t, {.lambda_max = 1.01 * kPi / t.dt()}));
}

TEST_CASE("kernels of zero data vanish") {
  const Phantom zero(2, {});
  const auto t = make_time_grid(2.0, 129);
  const auto d = radon_rs(zero, make_sphere_grid(2, 8), t);
  CHECK(max_abs(kernel_kn(d, t).profiles.values, 0, 8 * 129 - 1) == 0.0);
  CHECK(max_abs(kernel_kn_lowercase(d, t).profiles.values, 0, 8 * 129 - 1) == 0.0);
  CHECK(max_abs(log_kernel_even(d, t).values, 0, 8 * 129 - 1) == 0.0);
}

TEST_CASE("K_n and k_n are related by -16 (2 pi)^(n-2)") {
  for (int n : {2, 3}) {
    const auto d = bump_radon(n, 2.0, 257);
    const auto K = kernel_kn(d, d.time);
    const auto k = kernel_kn_lowercase(d, d.time);
    const double c = -16.0 * std::pow(2 * kPi, n - 2);
    const double scale = max_abs(k.profiles.values, 0, static_cast<int>(k.profiles.values.size()) - 1);
    for (int j = 0; j < d.detectors(); ++j)
      for (int i = 1; i < d.time.samples; ++i)
        CHECK(std::abs(c * K.profiles.row(j)[i] - k.profiles.row(j)[i]) < 1e-9 * scale);
  }
}

TEST_CASE("K_n equals (pi/2) W(T f) in three dimensions") {
  const auto d = bump_radon(3, 2.0, 257);
  const auto K = kernel_kn(d, d.time);
  CHECK(K.truncation < 1e-4);
  const auto w = apply_b_transform(d);
  double err = 0, scale = 0;
  for (int j = 0; j < d.detectors(); ++j) {
    const auto row = w.row(j);
    const auto W = apply_w(RadialProfile::from_samples(w.time, {row.begin(), row.end()}), 3,
                           {.allow_singular_origin = true});
    for (int i = 8; i < 240; ++i) {
      err = std::max(err, std::abs(K.profiles.row(j)[i] - 0.5 * kPi * W.values[i]));
      scale = std::max(scale, std::abs(K.profiles.row(j)[i]));
    }
  }
  CHECK(err < 1e-5 * scale);
}

TEST_CASE("log kernel agrees with the frequency path for n = 2") {
  const auto d = bump_radon(2, 2.0, 257);
  const auto k = kernel_kn_lowercase(d, d.time);
  const auto l = log_kernel_even(d, d.time);
  double err = 0, scale = 0;
  for (int j = 0; j < d.detectors(); ++j)
    for (int i = 4; i < 250; ++i) {
      err = std::max(err, std::abs(k.profiles.row(j)[i] - l.row(j)[i]));
      scale = std::max(scale, std::abs(l.row(j)[i]));
    }
  CHECK(err < std::max(1e-3, k.truncation) * scale);

  DataPanel d2 = d;
  for (double& v : d2.values) v *= -2.5;
  const auto l2 = log_kernel_even(d2, d.time);
  for (std::size_t i = 0; i < l.values.size(); ++i) CHECK(l2.values[i] == doctest::Approx(-2.5 * l.values[i]).epsilon(1e-12).scale(scale));
  CHECK_THROWS(log_kernel_even(bump_radon(3, 2.0, 65), make_time_grid(2.0, 65)));
}

TEST_CASE("h equals 2 k_n on range data") {
  for (int n : {2, 3}) {
    const auto d = bump_radon(n, 2.0, 257);
    const auto k = kernel_kn_lowercase(d, d.time);
    const auto h = kernel_h(d, d.time);
    double err = 0, scale = 0;
    for (int j = 0; j < d.detectors(); ++j)
      for (int i = 4; i < 250; ++i) {
        err = std::max(err, std::abs(h.profiles.row(j)[i] - 2 * k.profiles.row(j)[i]));
        scale = std::max(scale, std::abs(k.profiles.row(j)[i]));
      }
    CHECK(err < 1e-2 * scale);
  }
}

TEST_CASE("log kernel matrix integrates ln|r^2 - s^2| exactly for linear q") {
  const auto r = make_time_grid(2.0, 33);
  const auto s = make_time_grid(2.0, 17);
  const auto m = make_log_kernel_matrix(r, s);
  std::vector<double> q(33);
  for (int k = 0; k < 33; ++k) q[k] = 1.0 + 0.5 * r.at(k);
  // \int_0^2 (1 + r/2) ln|r^2 - s^2| dr by fine midpoint on the two log factors
  for (int i : {0, 3, 8, 16}) {
    const double sv = s.at(i);
    const int n = 2000000;
    double acc = 0;
    for (int k = 0; k < n; ++k) {
      const double x = 2.0 * (k + 0.5) / n;
      acc += (1 + 0.5 * x) * std::log(std::abs(x * x - sv * sv));
    }
    acc *= 2.0 / n;
    CHECK(m.apply(i, q) == doctest::Approx(acc).epsilon(1e-5));
  }
}
