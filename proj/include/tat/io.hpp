#pragma once

// Run configuration and file formats.
//
// Config: line-oriented `key = value`, `#` comments, top-level keys followed
// by [phantom], [grid], [formula] and [output] sections.
// Panel files: "TATP" + text header line + little-endian float64 values,
// detector-major. Grid files: "TATG" + text header line + one float64 per
// reconstruction point in lattice order.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tat/forward.hpp"
#include "tat/phantom.hpp"
#include "tat/recon.hpp"
#include "tat/validate.hpp"

namespace tat {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-level failure; `offset` is the byte position of the problem, or -1
/// when the file could not be opened or written at all.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, long long offset = -1);
  long long offset() const { return offset_; }

 private:
  long long offset_;
};

struct GridConfig {
  int sphere_resolution = 64;
  int angular_resolution = kDefaultAngularResolution;
  int time_samples = 256;
  double t_max = 2.0;
  int recon_points = 33;
  double recon_half_width = 0.95;
  double recon_margin = kDefaultMargin;
  double neumann_step = kDefaultNeumannStep;
  bool operator==(const GridConfig&) const = default;
};

struct OutputConfig {
  std::string dir = ".";
  std::vector<PanelKind> kinds{PanelKind::RadonRS, PanelKind::WaveT};
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  int dim = 3;
  std::uint64_t seed = 1;
  bool allow_exterior = false;
  bool negative_control = false;
  std::vector<Component> components;
  GridConfig grid;
  FormulaSpec formula;
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;

  Phantom phantom() const;
  SphereGrid sphere() const;
  TimeGrid time() const;
  ReconGrid recon_grid() const;
};

/// Throws ConfigError naming the line on malformed input or unknown keys.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

void write_panel(const std::string& path, const DataPanel& p);
DataPanel read_panel(const std::string& path);
void write_grid(const std::string& path, const ReconGrid& g);
ReconGrid read_grid(const std::string& path);

/// `name<TAB>value` lines.
using Report = std::vector<std::pair<std::string, std::string>>;
void write_report(const std::string& path, const Report& r);
Report read_report(const std::string& path);
Report metrics_report(const Metrics& m);
Report identity_report(const std::vector<IdentityReport>& reports);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace tat
