#pragma once

// Bessel functions of order zero, the Helmholtz Green's function profile
// G(s, lambda), and the frequency-domain and log-kernel filters built from it.

#include <complex>
#include <span>
#include <vector>

#include "tat/forward.hpp"
#include "tat/xform.hpp"

namespace tat {

/// Power series for |x| <= 8, Miller recurrence with the Neumann series for
/// Y0 up to 25, Hankel asymptotics beyond.
double bessel_j0(double x);
/// Throws std::domain_error for x <= 0.
double bessel_y0(double x);

/// J(x) = J_{(n-2)/2}(x) / x^{(n-2)/2} and the matching Neumann function N,
/// for n in {2, 3}. Half-order cases use their trigonometric closed forms.
double reduced_j(int n, double x);
double reduced_n(int n, double x);

/// Outgoing Green's function profile: e^{i lambda s}/(4 pi s) for n = 3,
/// (i/4) H0(lambda s) for n = 2 (conjugated for lambda < 0).
/// Throws for s <= 0, for n = 2 with lambda = 0, and for other n.
std::complex<double> green(int n, double s, double lambda);

struct KernelOptions {
  double lambda_max = 0.0;  // 0 selects 0.8 pi / dr
  int panels = 0;           // Gauss panels in lambda; 0 selects width ~0.5
  bool operator==(const KernelOptions&) const = default;
};

double default_lambda_max(const TimeGrid& data_grid);

/// Composite Gauss-Legendre rule on [0, lambda_max]; the first panel uses
/// lambda = a u^2 so the logarithmic behaviour at 0 for n = 2 is integrated
/// accurately.
struct LambdaRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lambda_max = 0.0;
  std::size_t tail_begin = 0;  // first node in the last tenth of the range
};
LambdaRule make_lambda_rule(const TimeGrid& data_grid, const KernelOptions& opt);

/// Filtered profiles on an s grid plus the relative contribution of the last
/// tenth of the lambda range (max over detectors).
struct KernelResult {
  ProfileSet profiles;
  double truncation = 0.0;
};

enum class BesselPart { J, N };

/// \int_0^{lambda_max} lambda^{2n-3} A(s lambda) \int_0^{t_max} v(r) B(r lambda) dr dlambda
/// for one profile, with A = outer, B = inner.
std::vector<double> bessel_double_integral(int n, const RadialProfile& v, const TimeGrid& s_grid,
                                           BesselPart outer, BesselPart inner, const KernelOptions& opt = {});

/// K_n(y, s) = \int lambda R(s, lambda) \int g(y, r) I(r, lambda) dr dlambda
/// from real and imaginary parts of `green`. Needs a RadonRS panel.
KernelResult kernel_kn(const DataPanel& radon, const TimeGrid& s_grid, const KernelOptions& opt = {});

/// k_n(y, s) = \int lambda^{2n-3} N(s lambda) \int g(y, r) J(r lambda) dr dlambda.
KernelResult kernel_kn_lowercase(const DataPanel& radon, const TimeGrid& s_grid, const KernelOptions& opt = {});

/// h(y, s) = k_n(y, s) - \int lambda^{2n-3} J(s lambda) \int g(y, r) N(r lambda) dr dlambda.
KernelResult kernel_h(const DataPanel& radon, const TimeGrid& s_grid, const KernelOptions& opt = {});

/// Product-integration weights: \int_0^{r_max} q(r) ln|r^2 - s_i^2| dr ~= sum_k M[i][k] q_k
/// for the piecewise-linear interpolant of q on `r_grid`.
struct LogKernelMatrix {
  TimeGrid r_grid;
  TimeGrid s_grid;
  std::vector<double> weights;  // s-major

  double apply(std::size_t i, std::span<const double> q) const;
};
LogKernelMatrix make_log_kernel_matrix(const TimeGrid& r_grid, const TimeGrid& s_grid);

/// k_n(y, s) = ((-1)^{(n-2)/2} / pi) \int (d/dr 1/r)^{n-1} g(y, r) ln|r^2 - s^2| dr
/// for even n from a RadonRS panel.
ProfileSet log_kernel_even(const DataPanel& radon, const TimeGrid& s_grid);

}  // namespace tat
