#include "tat/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tat {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

double y0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, harmonic = 0.0, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    const double t = -term * harmonic;
    sum += t;
    if (std::abs(t) < 1e-17 * std::max(1.0, std::abs(sum)) && k > q) break;
  }
  return (2.0 / kPi) * ((std::log(0.5 * x) + kEulerGamma) * j0_series(x) + sum);
}

// Even-order J_{2k}(x), k = 0..K, by Miller's backward recurrence normalised
// with J_0 + 2 sum J_{2k} = 1.
std::vector<double> miller_even(double x, int& count) {
  int m = 2 * static_cast<int>((x + 40.0) / 2.0);
  std::vector<double> j(m + 2, 0.0);
  j[m + 1] = 0.0;
  j[m] = 1e-30;
  for (int k = m; k >= 1; --k) {
    j[k - 1] = 2.0 * k / x * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= m; ++i) j[i] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= m; k += 2) norm += 2.0 * j[k];
  count = m / 2;
  std::vector<double> even(count + 1);
  for (int k = 0; k <= count; ++k) even[k] = j[2 * k] / norm;
  return even;
}

void hankel_asymptotic(double x, double& p, double& q) {
  double t = 1.0;
  p = 1.0;
  q = 0.0;
  double prev = 1.0;
  for (int k = 1; k < 100; ++k) {
    t *= -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
    if (std::abs(t) > prev) break;
    prev = std::abs(t);
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0) p += sign * t;
    else q += sign * t;
    if (std::abs(t) < 1e-17) break;
  }
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 8.0) return j0_series(x);
  if (x <= 25.0) {
    int count = 0;
    return miller_even(x, count)[0];
  }
  double p, q;
  hankel_asymptotic(x, p, q);
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y0: argument must be positive");
  if (x <= 8.0) return y0_series(x);
  if (x <= 25.0) {
    int count = 0;
    const auto j = miller_even(x, count);
    double s = 0.0;
    for (int k = count; k >= 1; --k) s += (k % 2 == 0 ? 1.0 : -1.0) * j[k] / k;
    return (2.0 / kPi) * (std::log(0.5 * x) + kEulerGamma) * j[0] - (4.0 / kPi) * s;
  }
  double p, q;
  hankel_asymptotic(x, p, q);
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

double reduced_j(int n, double x) {
  if (n == 2) return bessel_j0(x);
  if (n == 3) {
    if (std::abs(x) < 1e-8) return std::sqrt(2.0 / kPi) * (1.0 - x * x / 6.0);
    return std::sqrt(2.0 / kPi) * std::sin(x) / x;
  }
  throw std::invalid_argument("reduced_j: only n = 2 and n = 3 are supported");
}

double reduced_n(int n, double x) {
  if (n == 2) return bessel_y0(x);
  if (n == 3) {
    if (!(x > 0.0)) throw std::domain_error("reduced_n: argument must be positive");
    return -std::sqrt(2.0 / kPi) * std::cos(x) / x;
  }
  throw std::invalid_argument("reduced_n: only n = 2 and n = 3 are supported");
}

std::complex<double> green(int n, double s, double lambda) {
  if (!(s > 0.0)) throw std::domain_error("green: s must be positive");
  if (n == 3) return std::polar(1.0 / (4.0 * kPi * s), lambda * s);
  if (n == 2) {
    if (lambda == 0.0) throw std::domain_error("green: logarithmic singularity at lambda = 0 for n = 2");
    if (lambda < 0.0) return std::conj(green(2, s, -lambda));
    const double x = lambda * s;
    return std::complex<double>(0.0, 0.25) * std::complex<double>(bessel_j0(x), bessel_y0(x));
  }
  throw std::invalid_argument("green: only n = 2 and n = 3 are supported");
}

double default_lambda_max(const TimeGrid& data_grid) { return 0.8 * kPi / data_grid.dt(); }

LambdaRule make_lambda_rule(const TimeGrid& data_grid, const KernelOptions& opt) {
  const double nyquist = kPi / data_grid.dt();
  const double lmax = opt.lambda_max > 0.0 ? opt.lambda_max : default_lambda_max(data_grid);
  if (lmax > nyquist) throw std::invalid_argument("lambda_max exceeds the data Nyquist limit pi/dr");
  const int panels = opt.panels > 0 ? opt.panels : std::max(4, static_cast<int>(std::ceil(lmax / 0.5)));
  static const num::GaussRule gl = num::gauss_legendre(8);
  const double width = lmax / panels;
  LambdaRule rule;
  rule.lambda_max = lmax;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double u = 0.5 * (gl.nodes[i] + 1.0);
      if (p == 0) {
        const double u2 = u * u;
        rule.nodes.push_back(width * u2 * u2);
        rule.weights.push_back(2.0 * width * u2 * u * gl.weights[i]);
      } else {
        rule.nodes.push_back(width * (p + u));
        rule.weights.push_back(0.5 * width * gl.weights[i]);
      }
    }
  }
  rule.tail_begin = static_cast<std::size_t>(std::lower_bound(rule.nodes.begin(), rule.nodes.end(), 0.9 * lmax) -
                                             rule.nodes.begin());
  return rule;
}

namespace {

enum class TablePath { Green, Bessel };

// Precomputed lambda tables shared by all detectors of a panel.
struct Tables {
  int n = 0;
  LambdaRule rule;
  TimeGrid r_grid, s_grid;
  std::vector<double> inner;  // lambda-major, r fastest
  std::vector<double> outer;  // lambda-major, s fastest
  std::vector<double> scale;  // quadrature weight times lambda power
  bool origin_limit = false;  // inner N term at r = 0 needs g'(0)
};

double bessel_part(int n, BesselPart part, double x) {
  return part == BesselPart::J ? reduced_j(n, x) : reduced_n(n, x);
}

Tables make_tables(int n, const TimeGrid& r_grid, const TimeGrid& s_grid, const KernelOptions& opt,
                   TablePath path, BesselPart outer_part, BesselPart inner_part) {
  if (n != 2 && n != 3) throw std::invalid_argument("frequency kernels support n = 2 and n = 3 only");
  Tables t;
  t.n = n;
  t.rule = make_lambda_rule(r_grid, opt);
  t.r_grid = r_grid;
  t.s_grid = s_grid;
  const std::size_t nl = t.rule.nodes.size();
  const int nr = r_grid.samples, ns = s_grid.samples;
  t.inner.assign(nl * nr, 0.0);
  t.outer.assign(nl * ns, 0.0);
  t.scale.resize(nl);
  for (std::size_t m = 0; m < nl; ++m) {
    const double lam = t.rule.nodes[m];
    if (path == TablePath::Green) {
      t.scale[m] = t.rule.weights[m] * lam;
      t.inner[m * nr] = n == 3 ? lam / (4.0 * kPi) : 0.25;
      for (int k = 1; k < nr; ++k) t.inner[m * nr + k] = green(n, r_grid.at(k), lam).imag();
      for (int i = 1; i < ns; ++i) t.outer[m * ns + i] = green(n, s_grid.at(i), lam).real();
    } else {
      t.scale[m] = t.rule.weights[m] * std::pow(lam, 2 * n - 3);
      t.inner[m * nr] = inner_part == BesselPart::J ? reduced_j(n, 0.0) : 0.0;
      for (int k = 1; k < nr; ++k) t.inner[m * nr + k] = bessel_part(n, inner_part, lam * r_grid.at(k));
      if (outer_part == BesselPart::J) t.outer[m * ns] = reduced_j(n, 0.0);
      for (int i = 1; i < ns; ++i) t.outer[m * ns + i] = bessel_part(n, outer_part, lam * s_grid.at(i));
    }
  }
  t.origin_limit = path == TablePath::Bessel && inner_part == BesselPart::N && n == 3;
  return t;
}

// Filters one data row; returns the profile and writes the tail share.
std::vector<double> apply_tables(const Tables& t, std::span<const double> g, double& truncation) {
  const int nr = t.r_grid.samples, ns = t.s_grid.samples;
  const double dr = t.r_grid.dt();
  const std::size_t nl = t.rule.nodes.size();
  const double g0_slope = t.origin_limit ? num::derivative(g, dr)[0] : 0.0;
  std::vector<double> out(ns, 0.0), tail(ns, 0.0);
  for (std::size_t m = 0; m < nl; ++m) {
    const double* row = t.inner.data() + m * nr;
    double acc = 0.5 * (g[0] * row[0] + g[nr - 1] * row[nr - 1]);
    for (int k = 1; k < nr - 1; ++k) acc += g[k] * row[k];
    acc *= dr;
    if (t.origin_limit) acc += 0.5 * dr * (-std::sqrt(2.0 / kPi)) * g0_slope / t.rule.nodes[m];
    const double a = t.scale[m] * acc;
    const double* o = t.outer.data() + m * ns;
    auto& dst = m >= t.rule.tail_begin ? tail : out;
    for (int i = 0; i < ns; ++i) dst[i] += a * o[i];
  }
  double peak = 0.0, tail_peak = 0.0;
  for (int i = 0; i < ns; ++i) {
    out[i] += tail[i];
    if (i >= 1) {
      peak = std::max(peak, std::abs(out[i]));
      tail_peak = std::max(tail_peak, std::abs(tail[i]));
    }
  }
  truncation = peak > 0.0 ? tail_peak / peak : 0.0;
  return out;
}

ProfileSet empty_set(const DataPanel& radon, const TimeGrid& s_grid) {
  ProfileSet p;
  p.grid = s_grid;
  p.detectors = radon.detectors();
  p.values.assign(static_cast<std::size_t>(p.detectors) * s_grid.samples, 0.0);
  p.lo = 1;
  p.hi = s_grid.samples - 1;
  return p;
}

void require_radon(const DataPanel& radon) {
  if (radon.kind != PanelKind::RadonRS) throw std::invalid_argument("kernel filters need a RadonRS panel");
}

KernelResult run_tables(const DataPanel& radon, const TimeGrid& s_grid, const Tables& t) {
  KernelResult res{empty_set(radon, s_grid), 0.0};
  const int nd = radon.detectors();
  std::vector<double> trunc(nd, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < nd; ++j) {
    const auto out = apply_tables(t, radon.row(j), trunc[j]);
    std::copy(out.begin(), out.end(), res.profiles.row(j).begin());
  }
  for (double x : trunc) res.truncation = std::max(res.truncation, x);
  return res;
}

}  // namespace

std::vector<double> bessel_double_integral(int n, const RadialProfile& v, const TimeGrid& s_grid,
                                           BesselPart outer, BesselPart inner, const KernelOptions& opt) {
  const Tables t = make_tables(n, v.grid, s_grid, opt, TablePath::Bessel, outer, inner);
  double trunc = 0.0;
  return apply_tables(t, v.values, trunc);
}

KernelResult kernel_kn(const DataPanel& radon, const TimeGrid& s_grid, const KernelOptions& opt) {
  require_radon(radon);
  const Tables t = make_tables(radon.dim(), radon.time, s_grid, opt, TablePath::Green, BesselPart::N, BesselPart::J);
  return run_tables(radon, s_grid, t);
}

KernelResult kernel_kn_lowercase(const DataPanel& radon, const TimeGrid& s_grid, const KernelOptions& opt) {
  require_radon(radon);
  const Tables t = make_tables(radon.dim(), radon.time, s_grid, opt, TablePath::Bessel, BesselPart::N, BesselPart::J);
  return run_tables(radon, s_grid, t);
}

KernelResult kernel_h(const DataPanel& radon, const TimeGrid& s_grid, const KernelOptions& opt) {
  require_radon(radon);
  const int n = radon.dim();
  KernelResult k = run_tables(radon, s_grid, make_tables(n, radon.time, s_grid, opt, TablePath::Bessel,
                                                         BesselPart::N, BesselPart::J));
  const KernelResult swapped = run_tables(radon, s_grid, make_tables(n, radon.time, s_grid, opt, TablePath::Bessel,
                                                                     BesselPart::J, BesselPart::N));
  for (std::size_t i = 0; i < k.profiles.values.size(); ++i) k.profiles.values[i] -= swapped.profiles.values[i];
  k.truncation = std::max(k.truncation, swapped.truncation);
  return k;
}

double LogKernelMatrix::apply(std::size_t i, std::span<const double> q) const {
  const std::size_t nr = static_cast<std::size_t>(r_grid.samples);
  const double* w = weights.data() + i * nr;
  double acc = 0.0;
  for (std::size_t k = 0; k < nr; ++k) acc += w[k] * q[k];
  return acc;
}

LogKernelMatrix make_log_kernel_matrix(const TimeGrid& r_grid, const TimeGrid& s_grid) {
  LogKernelMatrix m{r_grid, s_grid, {}};
  const int nr = r_grid.samples, ns = s_grid.samples;
  const double h = r_grid.dt();
  m.weights.assign(static_cast<std::size_t>(nr) * ns, 0.0);
  for (int i = 0; i < ns; ++i) {
    const double s = s_grid.at(i);
    double* w = m.weights.data() + static_cast<std::size_t>(i) * nr;
    for (int k = 0; k + 1 < nr; ++k) {
      const double a = r_grid.at(k), b = r_grid.at(k + 1);
      for (double c : {s, -s}) {
        const auto mom = num::log_moments(a, b, c);
        w[k] += mom.m0 - mom.m1 / h;
        w[k + 1] += mom.m1 / h;
      }
    }
  }
  return m;
}

ProfileSet log_kernel_even(const DataPanel& radon, const TimeGrid& s_grid) {
  require_radon(radon);
  const int n = radon.dim();
  if (n % 2 != 0) throw std::invalid_argument("log_kernel_even: n must be even");
  const double coef = (((n - 2) / 2) % 2 == 0 ? 1.0 : -1.0) / kPi;
  const LogKernelMatrix m = make_log_kernel_matrix(radon.time, s_grid);
  ProfileSet out;
  out.grid = s_grid;
  out.detectors = radon.detectors();
  out.values.assign(static_cast<std::size_t>(out.detectors) * s_grid.samples, 0.0);
  out.lo = 0;
  out.hi = s_grid.samples - 1;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < out.detectors; ++j) {
    const auto row = radon.row(j);
    RadialProfile q = RadialProfile::from_samples(radon.time, {row.begin(), row.end()});
    for (int i = 0; i < n - 1; ++i) q = d_ds(divide_by_s(q, {.allow_singular_origin = true}));
    auto dst = out.row(j);
    for (int i = 0; i < s_grid.samples; ++i) dst[i] = coef * m.apply(i, q.values);
  }
  return out;
}

}  // namespace tat
