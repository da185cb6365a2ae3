#pragma once

// Numerical checks of the identities behind the inversion family. Each check
// returns an IdentityReport; a refinement pair (steps halved) yields a
// companion "<name>/refinement" report whose residual is the fine/coarse
// ratio, passing when the observed order is at least 2.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tat/forward.hpp"
#include "tat/grids.hpp"
#include "tat/phantom.hpp"
#include "tat/specfun.hpp"
#include "tat/xform.hpp"

namespace tat {

struct IdentityReport {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string resolution;
  bool pass = false;
  std::optional<double> slope;  // log2(coarse / fine) when a refinement pair was run
};

IdentityReport make_report(std::string name, double residual, double tolerance, std::string resolution);

/// Attaches the observed order to `coarse` and returns the refinement report.
IdentityReport refinement_report(IdentityReport& coarse, const IdentityReport& fine);

constexpr double kRefinementRatio = 0.25;

/// Smooth compactly supported profile (1 - q^2)^8, q = (s - centre)/width.
double bump8(double s, double centre, double width);

/// s d/ds W(v) = W(s v') - (n - 2) W(v), max norm over the interior window.
IdentityReport check_intertwining_identity(const RadialProfile& v, int n, double tolerance);

/// W(v'') = [d^2/ds^2 + (n - 1)/s d/ds] W(v), max norm over the interior window.
IdentityReport check_bessel_identity(const RadialProfile& v, int n, double tolerance);

/// \int conj(G(s, lambda)) v^(lambda) dlambda = W(v)(s) with v^ the Fourier
/// transform of the even extension; residual relative to max |W(v)| on
/// s in [0.25, 1.75]. The lambda integral uses the kernel rule of `opt`.
IdentityReport check_freqtime_w(const RadialProfile& v, int n, const KernelOptions& opt, double tolerance);

/// \int g(y, s) e^{i lambda s} ds = -i lambda \int R_S f(y, s) G(s, lambda) ds
/// for n = 3, max over detectors and lambdas relative to max |rhs|.
IdentityReport check_prop_tr(const Phantom& f, const SphereGrid& sphere, const TimeGrid& time,
                             std::span<const double> lambdas, double tolerance);

struct PointPair {
  Point x, z;
};

/// K(x, z, lambda) = \int_S R(|x - y|, lambda) I(|z - y|, lambda) dsigma(y)
/// against K(z, x, lambda), relative to max |K|. `kernel` replaces G(s, lambda)
/// when given.
using GreenFunction = std::function<std::complex<double>(double s, double lambda)>;
IdentityReport check_kernel_symmetry(const SphereGrid& sphere, std::span<const double> lambdas,
                                     std::span<const PointPair> pairs, double tolerance,
                                     const GreenFunction& kernel = {});

/// Seeded interior pairs with |x|, |z| <= radius.
std::vector<PointPair> random_pairs(int n, int count, double radius, std::uint64_t seed);

/// h(y, s) = 2 k_n(y, s) from a RadonRS panel, relative to max |k_n| on s in [0.1, 1.9].
IdentityReport check_h_equals_2k(const DataPanel& radon, const KernelOptions& opt, double tolerance);

/// N-outer/J-inner double integral equals minus the J-outer/N-inner one.
IdentityReport check_toprk_antisymmetry(const RadialProfile& v, int n, const KernelOptions& opt, double tolerance);

/// max over probes of |\int_S W(g)(y, |x - y|) dsigma(y)| / scale.
IdentityReport check_range_identity(const DataPanel& wave, const ReconGrid& probes, double scale,
                                    double tolerance, const std::string& name = "range_identity");

struct BatteryOptions {
  std::uint64_t seed = 1;
  /// Adds a report that feeds off-range data to the range identity and is
  /// expected to fail.
  bool negative_control = false;
};

std::vector<IdentityReport> run_battery(const BatteryOptions& opt = {});

}  // namespace tat
