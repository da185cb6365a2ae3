#pragma once

// The inversion family: time-domain W backprojection with free (xi, phi),
// its frequency-domain kernel forms, the P* formulas, the finite-time
// log formula for even n, the Kunyansky form and the Neumann-data formula.

#include <optional>
#include <string>
#include <vector>

#include "tat/forward.hpp"
#include "tat/grids.hpp"
#include "tat/phantom.hpp"
#include "tat/specfun.hpp"

namespace tat {

enum class Variant {
  TimeDomainW,
  KernelKn,
  KernelLogEven,
  PStarTdtt,   // -2 P*(t d_t^2 P f),   phi = -2(n-2)
  PStarDtTDt,  // -2 P*(d_t t d_t P f), phi = -2(n-1)
  PStarDttT,   // -2 P*(d_t^2 t P f),   phi = -2n
  Kunyansky,
  NeumannData,
  FiniteTimeEven,
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct XiMode {
  enum class Kind { EqualsX, Fixed, Origin };
  Kind kind = Kind::EqualsX;
  Point point{0.0, 0.0, 0.0};
  bool operator==(const XiMode&) const = default;
};

struct PhiMode {
  bool constant = false;  // false: phi = 0
  double value = 0.0;
  bool operator==(const PhiMode&) const = default;
};

struct FormulaSpec {
  Variant variant = Variant::TimeDomainW;
  XiMode xi;
  PhiMode phi;
  KernelOptions kernel;
  /// Even n only: decay exponent assumed for wave data beyond t_max; 0 means
  /// the data are taken as compactly supported on the sampled interval.
  double tail_exponent = 2.0;
  bool parallel = true;
  bool operator==(const FormulaSpec&) const = default;
};

/// The constant phi of a P* variant for dimension n.
double pstar_constant(Variant v, int n);

/// Applies the forced (xi, phi) choices and checks dimension constraints.
FormulaSpec normalized(FormulaSpec spec, int n);

/// Data kinds accepted by a variant.
std::vector<PanelKind> accepted_kinds(Variant v);

struct Metrics {
  double l2 = 0.0;
  double linf = 0.0;
  std::optional<double> relative_l2;  // only when the truth has nonzero norm
};

Metrics compute_metrics(const ReconGrid& grid, const Phantom& truth);

struct ReconstructionReport {
  ReconGrid grid;
  FormulaSpec spec;
  double truncation = 0.0;  // lambda-truncation diagnostic for kernel variants
  std::optional<Metrics> metrics;
};

ReconstructionReport reconstruct(const FormulaSpec& spec, const DataPanel& data, ReconGrid grid,
                                 const Phantom* truth = nullptr);

/// P*(h)(x) = \int_S W(h)(y, |x - y|) dsigma(y) for any panel h.
std::vector<double> pstar_backproject(const DataPanel& h, const ReconGrid& grid, double tail_exponent = 2.0);

std::vector<double> finite_time_even(const DataPanel& means, const ReconGrid& grid);

std::vector<double> reconstruct_neumann(const DataPanel& data, const ReconGrid& grid, double tail_exponent = 2.0);

}  // namespace tat
