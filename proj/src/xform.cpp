#include "tat/xform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tat {

RadialProfile RadialProfile::from_samples(const TimeGrid& grid, std::vector<double> values,
                                          DecayClass decay) {
  if (static_cast<int>(values.size()) != grid.samples)
    throw std::invalid_argument("RadialProfile: sample count does not match grid");
  RadialProfile p;
  p.grid = grid;
  p.values = std::move(values);
  p.decay = decay;
  p.lo = 0;
  p.hi = grid.samples - 1;
  return p;
}

double w_constant(int n) {
  if (n < 2) throw std::invalid_argument("w_constant: n must be at least 2");
  if (n % 2 == 0) {
    const int k = (n - 2) / 2;
    return (k % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0 * kPi, 0.5 * n);
  }
  const int k = (n - 3) / 2;
  return (k % 2 == 0 ? 1.0 : -1.0) / (2.0 * std::pow(2.0 * kPi, 0.5 * (n - 1)));
}

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool vanishes_at_origin(std::span<const double> v) { return std::abs(v[0]) <= 1e-9 * max_abs(v) + 1e-300; }

// Cubic extrapolation of node 0 from nodes 1..4.
void extrapolate_origin(std::vector<double>& v) { v[0] = 4 * v[1] - 6 * v[2] + 4 * v[3] - v[4]; }

void require_samples(const RadialProfile& v) {
  if (v.grid.samples < 8) throw std::invalid_argument("radial profile needs at least 8 samples");
}

}  // namespace

RadialProfile divide_by_s(const RadialProfile& v, WOptions opt) {
  RadialProfile out = v;
  const double h = v.grid.dt();
  for (int k = 1; k < v.grid.samples; ++k) out.values[k] = v.values[k] / (k * h);
  if (vanishes_at_origin(v.values)) {
    out.values[0] = num::derivative(v.values, h)[0];
  } else if (opt.allow_singular_origin) {
    extrapolate_origin(out.values);
    out.lo = std::max(out.lo, 1);
  } else {
    throw std::domain_error("W: odd-dimensional transform is singular at s = 0 for v(0) != 0");
  }
  return out;
}

RadialProfile abel_head(const RadialProfile& v) {
  const auto rule = num::gauss_legendre(abel::kCellNodes);
  RadialProfile out = v;
  const double h = v.grid.dt();
  for (int k = 0; k < v.grid.samples; ++k) out.values[k] = abel::head(v.values, h, k * h, rule);
  return out;
}

RadialProfile d_ds(const RadialProfile& v) {
  require_samples(v);
  RadialProfile out = v;
  out.values = num::derivative(v.values, v.grid.dt());
  out.lo = v.lo + 2;
  out.hi = v.hi - 2;
  return out;
}

RadialProfile s_dds(const RadialProfile& v) {
  RadialProfile out = d_ds(v);
  const double h = v.grid.dt();
  for (int k = 0; k < v.grid.samples; ++k) out.values[k] *= k * h;
  return out;
}

RadialProfile inv_s_dds(const RadialProfile& v) {
  RadialProfile out = d_ds(v);
  const double h = v.grid.dt();
  for (int k = 1; k < v.grid.samples; ++k) out.values[k] /= k * h;
  extrapolate_origin(out.values);
  out.lo = std::max(out.lo, 1);
  return out;
}

RadialProfile operator+(const RadialProfile& a, const RadialProfile& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("profile grids differ");
  RadialProfile out = a;
  for (std::size_t k = 0; k < a.values.size(); ++k) out.values[k] = a.values[k] + b.values[k];
  out.lo = std::max(a.lo, b.lo);
  out.hi = std::min(a.hi, b.hi);
  return out;
}

RadialProfile operator-(const RadialProfile& a, const RadialProfile& b) { return a + (-1.0 * b); }

RadialProfile operator*(double c, const RadialProfile& a) {
  RadialProfile out = a;
  for (double& x : out.values) x *= c;
  return out;
}

RadialProfile apply_w(const RadialProfile& v, int n, WOptions opt) {
  require_samples(v);
  const double c = w_constant(n);
  if (n % 2 == 1) {
    RadialProfile out = divide_by_s(v, opt);
    for (int i = 0; i < (n - 3) / 2; ++i) out = inv_s_dds(out);
    return c * out;
  }

  const TimeGrid& g = v.grid;
  const double h = g.dt();
  double upper = g.t_max;
  double tail_amp = 0.0, tail_exp = 0.0;
  bool has_tail = false;
  if (const auto* cs = std::get_if<CompactSupport>(&v.decay)) {
    if (cs->bound > g.t_max * (1.0 + 1e-12))
      throw std::invalid_argument("W: compact support bound lies beyond the sampled grid");
    upper = cs->bound;
  } else {
    const auto& pd = std::get<PowerDecay>(v.decay);
    if (!(pd.exponent > 1.0))
      throw std::invalid_argument("W: tail integral diverges for power decay exponent <= 1");
    has_tail = true;
    tail_exp = pd.exponent;
    tail_amp = v.values.back() * std::pow(g.t_max, tail_exp);
  }

  const auto rule = num::gauss_legendre(abel::kCellNodes);
  RadialProfile out = v;
  const bool origin_ok = vanishes_at_origin(v.values);
  const int last = g.samples - 1;
  for (int k = 0; k <= last; ++k) {
    const double s = k * h;
    if (k == 0 && !origin_ok) continue;
    if (has_tail && k == last) continue;
    double acc = abel::tail(v.values, h, s, upper, rule);
    if (has_tail) acc += tail_amp * abel::power_tail(g.t_max, s, tail_exp);
    out.values[k] = acc;
  }
  if (!origin_ok) {
    if (!opt.allow_singular_origin && v.lo == 0)
      throw std::domain_error("W: even-dimensional tail integral diverges at s = 0 for v(0) != 0");
    extrapolate_origin(out.values);
    out.lo = std::max(out.lo, 1);
  }
  if (has_tail) {
    out.values[last] = 4 * out.values[last - 1] - 6 * out.values[last - 2] + 4 * out.values[last - 3] -
                       out.values[last - 4];
    out.hi = std::min(out.hi, last - 1);
  }
  for (int i = 0; i < (n - 2) / 2; ++i) out = inv_s_dds(out);
  return c * out;
}

RadialProfile apply_w_star(const RadialProfile& v, int n, WOptions opt) {
  require_samples(v);
  const double c = w_constant(n);
  if (n % 2 == 1) {
    const double sign = ((n - 3) / 2) % 2 == 0 ? 1.0 : -1.0;
    RadialProfile out = divide_by_s(v, opt);
    for (int i = 0; i < (n - 3) / 2; ++i) out = inv_s_dds(out);
    return (sign * c) * out;
  }
  const double sign = ((n - 2) / 2) % 2 == 0 ? 1.0 : -1.0;
  RadialProfile q = v;
  for (int i = 0; i < (n - 2) / 2; ++i) q = inv_s_dds(q);
  return (sign * c) * abel_head(q);
}

namespace {

RadialProfile window_cut(const RadialProfile& p, int lo, int hi) {
  RadialProfile out = p;
  out.lo = lo;
  out.hi = hi;
  return out;
}

double max_diff(const RadialProfile& a, const RadialProfile& b, int lo, int hi) {
  double m = 0.0;
  for (int k = lo; k <= hi; ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

}  // namespace

double check_intertwining(const RadialProfile& v, int n) {
  const RadialProfile wv = apply_w(v, n);
  const RadialProfile lhs = s_dds(wv);
  const RadialProfile rhs = apply_w(s_dds(v), n) - static_cast<double>(n - 2) * wv;
  const int lo = std::max(lhs.lo, rhs.lo) + 2;
  const int hi = std::min(lhs.hi, rhs.hi) - 2;
  if (hi < lo) throw std::invalid_argument("check_intertwining: empty interior window");
  return max_diff(window_cut(lhs, lo, hi), rhs, lo, hi);
}

double check_bessel_intertwining(const RadialProfile& v, int n) {
  const RadialProfile lhs = apply_w(d_ds(d_ds(v)), n);
  const RadialProfile wv = apply_w(v, n);
  const RadialProfile d1 = d_ds(wv);
  RadialProfile rhs = d_ds(d1);
  const double h = v.grid.dt();
  for (int k = 1; k < v.grid.samples; ++k) rhs.values[k] += (n - 1) / (k * h) * d1.values[k];
  const int lo = std::max({lhs.lo, rhs.lo, 1}) + 2;
  const int hi = std::min(lhs.hi, rhs.hi) - 2;
  if (hi < lo) throw std::invalid_argument("check_bessel_intertwining: empty interior window");
  return max_diff(lhs, rhs, lo, hi);
}

double inner_product(const RadialProfile& a, const RadialProfile& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("profile grids differ");
  std::vector<double> prod(a.values.size());
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = a.values[k] * b.values[k];
  return num::trapezoid(prod, a.grid.dt());
}

namespace abel {

double head(std::span<const double> v, double h, double s, const num::GaussRule& rule) {
  if (s <= 0.0) return v[0] * 0.5 * kPi;
  double acc = 0.0;
  for (int j = 0;; ++j) {
    const double a = j * h;
    if (a >= s) break;
    const double b = std::min((j + 1) * h, s);
    const double ua = std::asin(std::min(1.0, a / s));
    const double ub = std::asin(std::min(1.0, b / s));
    const double half = 0.5 * (ub - ua), mid = 0.5 * (ub + ua);
    double cell = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      cell += rule.weights[i] * num::interp_cubic(v, h, s * std::sin(mid + half * rule.nodes[i]));
    acc += half * cell;
  }
  return acc;
}

double tail(std::span<const double> v, double h, double s, double b, const num::GaussRule& rule) {
  if (b <= s) return 0.0;
  double acc = 0.0;
  const int first = static_cast<int>(std::floor(s / h));
  for (int j = first;; ++j) {
    const double a = std::max(j * h, s);
    if (a >= b) break;
    const double e = std::min((j + 1) * h, b);
    if (e <= a) continue;
    double cell = 0.0;
    if (s == 0.0) {
      const double half = 0.5 * (e - a), mid = 0.5 * (e + a);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = mid + half * rule.nodes[i];
        cell += rule.weights[i] * num::interp_cubic(v, h, t) / t;
      }
      acc += half * cell;
    } else {
      const double ua = std::acosh(std::max(1.0, a / s));
      const double ub = std::acosh(std::max(1.0, e / s));
      const double half = 0.5 * (ub - ua), mid = 0.5 * (ub + ua);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        cell += rule.weights[i] * num::interp_cubic(v, h, s * std::cosh(mid + half * rule.nodes[i]));
      acc += half * cell;
    }
  }
  return acc;
}

double power_tail(double T, double s, double p) {
  static const num::GaussRule rule = num::gauss_legendre(32);
  // t = T / w maps [T, inf) to (0, 1]
  double acc = 0.0;
  const double r = s / T;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double w = 0.5 * (rule.nodes[i] + 1.0);
    acc += rule.weights[i] * std::pow(w, p - 1.0) / std::sqrt(1.0 - r * r * w * w);
  }
  return 0.5 * acc * std::pow(T, -p);
}

}  // namespace abel

}  // namespace tat
