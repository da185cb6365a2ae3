#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tat/grids.hpp"

using namespace tat;

TEST_CASE("circle grid with four nodes") {
  auto g = make_sphere_grid(2, 8);
  CHECK(g.size() == 8);
  CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(g.nodes[2][0] == doctest::Approx(0.0).scale(1.0));
  CHECK(g.nodes[2][1] == doctest::Approx(1.0));
  CHECK(g.weights[0] == doctest::Approx(kPi / 4));
}

TEST_CASE("sphere grid weights and node norms") {
  for (int res : {8, 16, 33, 64}) {
    auto g = make_sphere_grid(3, res);
    CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(4 * kPi).epsilon(1e-10));
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(norm(g.nodes[i]) - 1.0) < 1e-12);
      CHECK(g.weights[i] > 0.0);
    }
  }
}

TEST_CASE("sphere quadrature integrates low-degree moments exactly") {
  auto g = make_sphere_grid(3, 16);
  double z2 = 0, x2y2 = 0, x4 = 0, odd = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& p = g.nodes[i];
    z2 += g.weights[i] * p[2] * p[2];
    x2y2 += g.weights[i] * p[0] * p[0] * p[1] * p[1];
    x4 += g.weights[i] * std::pow(p[0], 4);
    odd += g.weights[i] * p[0] * p[1] * p[2];
  }
  CHECK(std::abs(z2 - 4 * kPi / 3) < 1e-9);
  CHECK(std::abs(x2y2 - 4 * kPi / 15) < 1e-9);
  CHECK(std::abs(x4 - 4 * kPi / 5) < 1e-9);
  CHECK(std::abs(odd) < 1e-12);

  auto c = make_sphere_grid(2, 12);
  double c6 = 0;
  for (std::size_t i = 0; i < c.size(); ++i) c6 += c.weights[i] * std::pow(c.nodes[i][0], 6);
  CHECK(std::abs(c6 - 2 * kPi * 5.0 / 16.0) < 1e-9);
}

TEST_CASE("sphere grid errors") {
  CHECK_THROWS_AS(make_sphere_grid(4, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_sphere_grid(3, 7), std::invalid_argument);
}

TEST_CASE("time grid spacing") {
  auto t = make_time_grid(2.0, 257);
  CHECK(t.dt() == doctest::Approx(2.0 / 256));
  CHECK(t.at(0) == 0.0);
  CHECK(t.at(256) == doctest::Approx(2.0));
  CHECK_THROWS(make_time_grid(0.0, 10));
}

TEST_CASE("recon grid filtering") {
  auto g = make_recon_grid(2, 0.9, 3, 0.05);
  CHECK(g.size() == 5);  // corners at |x| = 1.27 are dropped
  auto o = make_recon_grid(2, 0.0, 1, 0.0);
  REQUIRE(o.size() == 1);
  CHECK(norm(o.points[0]) == 0.0);
  auto c = make_recon_grid(3, 0.8, 5, 0.05);
  for (const auto& p : c.points) CHECK(norm(p) <= 0.95);
  CHECK_THROWS(make_recon_grid(2, 1.0, 2, 0.05));
  CHECK_THROWS(make_recon_grid(2, 1.2, 3, 0.05));
}
