#include "tat/recon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tat/kernels.hpp"

namespace tat {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::TimeDomainW: return "TimeDomainW";
    case Variant::KernelKn: return "KernelKn";
    case Variant::KernelLogEven: return "KernelLogEven";
    case Variant::PStarTdtt: return "PStar_tdtt";
    case Variant::PStarDtTDt: return "PStar_dt_t_dt";
    case Variant::PStarDttT: return "PStar_dtt_t";
    case Variant::Kunyansky: return "Kunyansky";
    case Variant::NeumannData: return "NeumannData";
    case Variant::FiniteTimeEven: return "FiniteTimeEven";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  for (Variant v : {Variant::TimeDomainW, Variant::KernelKn, Variant::KernelLogEven, Variant::PStarTdtt,
                    Variant::PStarDtTDt, Variant::PStarDttT, Variant::Kunyansky, Variant::NeumannData,
                    Variant::FiniteTimeEven})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown formula variant '" + s + "'");
}

double pstar_constant(Variant v, int n) {
  switch (v) {
    case Variant::PStarTdtt: return -2.0 * (n - 2);
    case Variant::PStarDtTDt: return -2.0 * (n - 1);
    case Variant::PStarDttT: return -2.0 * n;
    default: throw std::invalid_argument("pstar_constant: not a P* variant");
  }
}

FormulaSpec normalized(FormulaSpec spec, int n) {
  switch (spec.variant) {
    case Variant::PStarTdtt:
    case Variant::PStarDtTDt:
    case Variant::PStarDttT:
      spec.xi = {XiMode::Kind::EqualsX, {}};
      spec.phi = {true, pstar_constant(spec.variant, n)};
      break;
    case Variant::Kunyansky:
      spec.xi = {XiMode::Kind::Origin, {}};
      spec.phi = {};
      break;
    case Variant::KernelLogEven:
    case Variant::FiniteTimeEven:
      if (n % 2 != 0) throw std::invalid_argument(to_string(spec.variant) + " requires even n");
      if (spec.variant == Variant::FiniteTimeEven) {
        spec.xi = {XiMode::Kind::EqualsX, {}};
        spec.phi = {};
      }
      break;
    case Variant::NeumannData:
      spec.phi = {};
      break;
    default: break;
  }
  return spec;
}

std::vector<PanelKind> accepted_kinds(Variant v) {
  switch (v) {
    case Variant::TimeDomainW: return {PanelKind::WaveT};
    case Variant::PStarTdtt:
    case Variant::PStarDtTDt:
    case Variant::PStarDttT: return {PanelKind::WaveT, PanelKind::IntegralP};
    case Variant::KernelKn:
    case Variant::KernelLogEven:
    case Variant::Kunyansky: return {PanelKind::RadonRS};
    case Variant::NeumannData: return {PanelKind::NeumannTrace};
    case Variant::FiniteTimeEven: return {PanelKind::MeanMS};
  }
  return {};
}

Metrics compute_metrics(const ReconGrid& grid, const Phantom& truth) {
  Metrics m;
  double sq = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = truth.eval(grid.points[i]);
    const double d = grid.values[i] - f;
    sq += d * d;
    ref += f * f;
    m.linf = std::max(m.linf, std::abs(d));
  }
  const double h = grid.points_per_axis > 1 ? 2.0 * grid.half_width / (grid.points_per_axis - 1) : 1.0;
  m.l2 = std::sqrt(sq * std::pow(h, grid.dim));
  if (ref > 0.0) m.relative_l2 = std::sqrt(sq / ref);
  return m;
}

namespace {

DecayClass decay_for(int n, const TimeGrid& grid, double tail_exponent) {
  if (n % 2 == 1 || tail_exponent <= 0.0) return CompactSupport{grid.t_max};
  return PowerDecay{tail_exponent};
}

// Applies `fn` to every detector row; all rows share the resulting window.
template <class F>
ProfileSet filter_rows(const DataPanel& data, DecayClass decay, F fn) {
  ProfileSet out;
  out.detectors = data.detectors();
  std::vector<RadialProfile> rows(out.detectors);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < out.detectors; ++j) {
    const auto r = data.row(j);
    rows[j] = fn(RadialProfile::from_samples(data.time, {r.begin(), r.end()}, decay));
  }
  out.grid = rows.front().grid;
  out.lo = 0;
  out.hi = out.grid.samples - 1;
  out.values.reserve(static_cast<std::size_t>(out.detectors) * out.grid.samples);
  for (const auto& r : rows) {
    out.values.insert(out.values.end(), r.values.begin(), r.values.end());
    out.lo = std::max(out.lo, r.lo);
    out.hi = std::min(out.hi, r.hi);
  }
  return out;
}

ProfileSet derivative_of(const ProfileSet& p) {
  ProfileSet out = p;
  const double h = p.grid.dt();
  for (int j = 0; j < p.detectors; ++j) {
    const auto d = num::derivative(p.row(j), h);
    std::copy(d.begin(), d.end(), out.row(j).begin());
  }
  out.lo = p.lo + 2;
  out.hi = p.hi - 2;
  return out;
}

void check_window(const ProfileSet& p, const ReconGrid& grid, const char* what) {
  double rmax = 0.0;
  for (const auto& x : grid.points) rmax = std::max(rmax, norm(x));
  const double h = p.grid.dt();
  const double eps = 1e-12;
  if (p.lo * h > 1.0 - rmax + eps || p.hi * h < 1.0 + rmax - eps)
    throw std::domain_error(std::string(what) + ": evaluation radii [" + std::to_string(1.0 - rmax) + ", " +
                            std::to_string(1.0 + rmax) + "] leave the filtered profile's valid window [" +
                            std::to_string(p.lo * h) + ", " + std::to_string(p.hi * h) + "]");
}

constexpr WOptions kLenient{.allow_singular_origin = true};

RadialProfile times_t(const RadialProfile& v) {
  RadialProfile out = v;
  for (int k = 0; k < v.grid.samples; ++k) out.values[k] *= v.grid.at(k);
  return out;
}

// Argument of P* for the three formulas, from WaveT (g) or IntegralP (p) data.
RadialProfile pstar_argument(Variant v, const RadialProfile& data, PanelKind kind) {
  if (kind == PanelKind::WaveT) {
    switch (v) {
      case Variant::PStarTdtt: return s_dds(data);
      case Variant::PStarDtTDt: return d_ds(times_t(data));
      default: return data + d_ds(times_t(data));
    }
  }
  switch (v) {
    case Variant::PStarTdtt: return times_t(d_ds(d_ds(data)));
    case Variant::PStarDtTDt: return d_ds(times_t(d_ds(data)));
    default: return d_ds(d_ds(times_t(data)));
  }
}

std::vector<double> run(const BackprojectionJob& job, const ReconGrid& grid, bool parallel) {
  return parallel ? backproject(job, grid.points) : backproject_serial(job, grid.points);
}

ProfileSet finite_time_profiles(const DataPanel& means) {
  const int n = means.dim();
  if (n % 2 != 0) throw std::invalid_argument("finite-time log formula requires even n");
  if (means.kind != PanelKind::MeanMS) throw std::invalid_argument("finite-time log formula needs a MeanMS panel");
  const double coef = (((n - 2) / 2) % 2 == 0 ? 1.0 : -1.0) * sphere_measure(n) / std::pow(2.0 * kPi, n);
  const LogKernelMatrix m = make_log_kernel_matrix(means.time, means.time);
  return filter_rows(means, CompactSupport{means.time.t_max}, [&](const RadialProfile& g) {
    RadialProfile q = g;
    for (int k = 0; k < means.time.samples; ++k) q.values[k] *= std::pow(means.time.at(k), n - 1);
    for (int i = 0; i < n - 1; ++i) q = d_ds(divide_by_s(q, kLenient));
    q = d_ds(times_t(q));
    RadialProfile out = q;
    for (int i = 0; i < means.time.samples; ++i) out.values[i] = coef * m.apply(i, q.values);
    out.lo = 0;
    out.hi = means.time.samples - 1;
    return out;
  });
}

}  // namespace

std::vector<double> pstar_backproject(const DataPanel& h, const ReconGrid& grid, double tail_exponent) {
  const int n = h.dim();
  const ProfileSet w = filter_rows(h, decay_for(n, h.time, tail_exponent),
                                   [n](const RadialProfile& v) { return apply_w(v, n, kLenient); });
  check_window(w, grid, "pstar_backproject");
  BackprojectionJob job{&h.sphere, nullptr, 0.0, &w, 1.0};
  return backproject(job, grid.points);
}

std::vector<double> finite_time_even(const DataPanel& means, const ReconGrid& grid) {
  const ProfileSet l = finite_time_profiles(means);
  check_window(l, grid, "finite_time_even");
  BackprojectionJob job{&means.sphere, nullptr, 0.0, &l, 1.0};
  return backproject(job, grid.points);
}

std::vector<double> reconstruct_neumann(const DataPanel& data, const ReconGrid& grid, double tail_exponent) {
  if (data.kind != PanelKind::NeumannTrace) throw std::invalid_argument("reconstruct_neumann needs a NeumannTrace panel");
  const int n = data.dim();
  const ProfileSet w = filter_rows(data, decay_for(n, data.time, tail_exponent),
                                   [n](const RadialProfile& v) { return apply_w(v, n, kLenient); });
  check_window(w, grid, "reconstruct_neumann");
  BackprojectionJob job{&data.sphere, nullptr, 0.0, &w, 2.0};
  return backproject(job, grid.points);
}

ReconstructionReport reconstruct(const FormulaSpec& spec_in, const DataPanel& data, ReconGrid grid,
                                 const Phantom* truth) {
  const int n = data.dim();
  if (grid.dim != n) throw std::invalid_argument("reconstruct: grid and data dimensions differ");
  const FormulaSpec spec = normalized(spec_in, n);
  const auto kinds = accepted_kinds(spec.variant);
  if (std::find(kinds.begin(), kinds.end(), data.kind) == kinds.end())
    throw std::invalid_argument("reconstruct: variant " + to_string(spec.variant) + " cannot use " +
                                to_string(data.kind) + " data");

  ReconstructionReport rep;
  rep.spec = spec;
  BackprojectionJob job;
  job.sphere = &data.sphere;
  job.xi_equals_x = spec.xi.kind == XiMode::Kind::EqualsX;
  job.xi = spec.xi.kind == XiMode::Kind::Fixed ? spec.xi.point : Point{0.0, 0.0, 0.0};
  const double phi = spec.phi.constant ? spec.phi.value : 0.0;
  const DecayClass decay = decay_for(n, data.time, spec.tail_exponent);

  ProfileSet value, deriv;
  switch (spec.variant) {
    case Variant::TimeDomainW: {
      value = filter_rows(data, decay, [n](const RadialProfile& g) { return apply_w(g, n, kLenient); });
      deriv = derivative_of(value);
      job.alpha = -2.0;
      job.beta = phi;
      break;
    }
    case Variant::KernelKn: {
      auto k = kernel_kn(data, data.time, spec.kernel);
      rep.truncation = k.truncation;
      value = std::move(k.profiles);
      deriv = derivative_of(value);
      job.alpha = -4.0 / kPi;
      job.beta = phi;
      break;
    }
    case Variant::KernelLogEven: {
      value = log_kernel_even(data, data.time);
      deriv = derivative_of(value);
      job.alpha = 1.0 / (2.0 * std::pow(2.0 * kPi, n - 1));
      job.beta = -phi / (16.0 * std::pow(2.0 * kPi, n - 2));
      break;
    }
    case Variant::Kunyansky: {
      auto h = kernel_h(data, data.time, spec.kernel);
      rep.truncation = h.truncation;
      value = std::move(h.profiles);
      deriv = derivative_of(value);
      job.alpha = 1.0 / (4.0 * std::pow(2.0 * kPi, n - 1));
      break;
    }
    case Variant::PStarTdtt:
    case Variant::PStarDtTDt:
    case Variant::PStarDttT: {
      const Variant v = spec.variant;
      const PanelKind kind = data.kind;
      value = filter_rows(data, decay, [n, v, kind](const RadialProfile& d) {
        return apply_w(pstar_argument(v, d, kind), n, kLenient);
      });
      job.beta = -2.0;
      break;
    }
    case Variant::NeumannData: {
      value = filter_rows(data, decay, [n](const RadialProfile& g) { return apply_w(g, n, kLenient); });
      job.beta = 2.0;
      break;
    }
    case Variant::FiniteTimeEven: {
      value = finite_time_profiles(data);
      job.beta = 1.0;
      break;
    }
  }
  if (job.alpha != 0.0) {
    check_window(deriv, grid, "reconstruct");
    job.derivative = &deriv;
  }
  if (job.beta != 0.0) {
    check_window(value, grid, "reconstruct");
    job.value = &value;
  }
  grid.values = run(job, grid, spec.parallel);
  rep.grid = std::move(grid);
  if (truth != nullptr) rep.metrics = compute_metrics(rep.grid, *truth);
  return rep;
}

}  // namespace tat
