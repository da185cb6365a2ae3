#include "tat/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace tat {

double Component::profile(double q) const {
  const double r2 = radius * radius;
  if (q >= r2) return 0.0;
  if (kind == ComponentKind::Ball) return amplitude;
  const double u = 1.0 - q / r2;
  const double u2 = u * u;
  return amplitude * u2 * u2;
}

Phantom::Phantom(int dim, std::vector<Component> components, bool allow_exterior)
    : dim_(dim), components_(std::move(components)) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("Phantom: unsupported dimension " + std::to_string(dim));
  for (auto& c : components_) {
    if (!(c.radius > 0.0)) throw std::invalid_argument("Phantom: component radius must be positive");
    if (dim == 2) c.center[2] = 0.0;
  }
  if (!allow_exterior && !admissible())
    throw std::invalid_argument("Phantom: component support leaves the closed unit ball");
}

bool Phantom::admissible() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Component& c) { return norm(c.center) + c.radius <= 1.0 + 1e-12; });
}

double Phantom::eval(const Point& x) const {
  double s = 0.0;
  for (const auto& c : components_) {
    const Point d = x - c.center;
    s += c.profile(dot(d, d));
  }
  return s;
}

double Phantom::max_abs() const {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, std::abs(eval(c.center)));
  return m;
}

namespace {

constexpr long kChunk = 1L << 14;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

McEstimate oracle_spherical_mean(const Phantom& f, const Point& y, double r, long mc_samples,
                                 std::uint64_t seed) {
  if (mc_samples < 100) throw std::invalid_argument("oracle_spherical_mean: need at least 100 samples");
  if (!(r > 0.0)) throw std::invalid_argument("oracle_spherical_mean: radius must be positive");

  const long n_chunks = (mc_samples + kChunk - 1) / kChunk;
  std::vector<double> sums(n_chunks, 0.0), sq_sums(n_chunks, 0.0);
  const int dim = f.dim();

#pragma omp parallel for schedule(static)
  for (long c = 0; c < n_chunks; ++c) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(c))));
    const long begin = c * kChunk;
    const long end = std::min(mc_samples, begin + kChunk);
    double s = 0.0, s2 = 0.0;
    for (long i = begin; i < end; ++i) {
      Point w{};
      if (dim == 2) {
        const double th = 2.0 * kPi * unit_double(rng);
        w = {std::cos(th), std::sin(th), 0.0};
      } else {
        const double z = 2.0 * unit_double(rng) - 1.0;
        const double ph = 2.0 * kPi * unit_double(rng);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        w = {rho * std::cos(ph), rho * std::sin(ph), z};
      }
      const double v = f.eval(y + r * w);
      s += v;
      s2 += v * v;
    }
    sums[c] = s;
    sq_sums[c] = s2;
  }

  double s = 0.0, s2 = 0.0;
  for (long c = 0; c < n_chunks; ++c) {
    s += sums[c];
    s2 += sq_sums[c];
  }
  const double n = static_cast<double>(mc_samples);
  const double mean = s / n;
  const double var = std::max(0.0, s2 / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

double cap_fraction(int dim, double d, double r, double rho) {
  if (r + d <= rho) return 1.0;
  if (r >= d + rho || r <= d - rho) return 0.0;
  if (dim == 3) return (rho * rho - (d - r) * (d - r)) / (4.0 * d * r);
  if (dim == 2) {
    const double c = (d * d + r * r - rho * rho) / (2.0 * d * r);
    return std::acos(std::clamp(c, -1.0, 1.0)) / kPi;
  }
  throw std::invalid_argument("cap_fraction: unsupported dimension");
}

}  // namespace tat
