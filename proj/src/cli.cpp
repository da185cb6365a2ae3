#include "tat/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace tat {

namespace {

template <class F>
int guarded(std::ostream& log, F fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

std::string prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  return dir;
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string fmt(double x) { return format_double(x); }

// Indices of the points on the lattice line along axis 0 that passes closest
// to `through`, ordered by x.
std::vector<std::size_t> axis_line(const ReconGrid& g, const Point& through) {
  auto nearest = [&](double c) {
    int best = 0;
    for (int i = 1; i < g.points_per_axis; ++i)
      if (std::abs(g.axis_coordinate(i) - c) < std::abs(g.axis_coordinate(best) - c)) best = i;
    return best;
  };
  const int j = nearest(through[1]);
  const int k = g.dim == 3 ? nearest(through[2]) : 0;
  std::vector<std::size_t> line;
  for (std::size_t p = 0; p < g.size(); ++p)
    if (g.lattice_index[p][1] == j && g.lattice_index[p][2] == k) line.push_back(p);
  std::sort(line.begin(), line.end(),
            [&](std::size_t a, std::size_t b) { return g.lattice_index[a][0] < g.lattice_index[b][0]; });
  return line;
}

bool same_geometry(const ReconGrid& a, const ReconGrid& b) {
  return a.dim == b.dim && a.points_per_axis == b.points_per_axis && a.half_width == b.half_width &&
         a.margin == b.margin && a.size() == b.size();
}

std::string magic_of(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  char m[4] = {0, 0, 0, 0};
  in.read(m, 4);
  return std::string(m, static_cast<std::size_t>(in.gcount()));
}

bool parse_number(const std::string& s, double& v) {
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

int compare_grids(const std::string& a_path, const std::string& b_path, const std::string& dir, std::ostream& log) {
  const ReconGrid a = read_grid(a_path);
  const ReconGrid b = read_grid(b_path);
  if (!same_geometry(a, b)) throw std::invalid_argument("compare: grids have different geometry");
  const int n = a.dim;
  std::ostringstream diff;
  diff << (n == 3 ? "# x y z a b diff\n" : "# x y a b diff\n");
  double max_abs = 0.0, sq = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    max_abs = std::max(max_abs, std::abs(d));
    sq += d * d;
    ref += b.values[i] * b.values[i];
    diff << fmt(a.points[i][0]) << " " << fmt(a.points[i][1]) << " ";
    if (n == 3) diff << fmt(a.points[i][2]) << " ";
    diff << fmt(a.values[i]) << " " << fmt(b.values[i]) << " " << fmt(d) << "\n";
  }
  std::ostringstream slice;
  slice << "# x a b diff\n";
  for (std::size_t p : axis_line(a, {0.0, 0.0, 0.0}))
    slice << fmt(a.points[p][0]) << " " << fmt(a.values[p]) << " " << fmt(b.values[p]) << " "
          << fmt(a.values[p] - b.values[p]) << "\n";
  const double h = a.points_per_axis > 1 ? 2.0 * a.half_width / (a.points_per_axis - 1) : 1.0;
  Report r{{"points", std::to_string(a.size())},
           {"max_abs_diff", fmt(max_abs)},
           {"l2_diff", fmt(std::sqrt(sq * std::pow(h, n)))}};
  if (ref > 0.0) r.emplace_back("relative_l2_diff", fmt(std::sqrt(sq / ref)));
  write_text(join(dir, "diff.txt"), diff.str());
  write_text(join(dir, "slice.txt"), slice.str());
  write_report(join(dir, "compare.txt"), r);
  log << "compare: " << a.size() << " points, max |a - b| = " << fmt(max_abs) << "\n";
  return kExitOk;
}

int compare_reports(const std::string& a_path, const std::string& b_path, const std::string& dir, std::ostream& log) {
  const Report a = read_report(a_path);
  const Report b = read_report(b_path);
  std::map<std::string, std::string> bm(b.begin(), b.end());
  Report r;
  int unmatched = 0;
  for (const auto& [name, value] : a) {
    const auto it = bm.find(name);
    if (it == bm.end()) {
      ++unmatched;
      continue;
    }
    double x = 0.0, y = 0.0;
    if (parse_number(value, x) && parse_number(it->second, y)) r.emplace_back(name, fmt(x - y));
    else if (value != it->second) r.emplace_back(name, "differs");
    bm.erase(it);
  }
  unmatched += static_cast<int>(bm.size());
  r.emplace_back("unmatched_names", std::to_string(unmatched));
  write_report(join(dir, "compare.txt"), r);
  log << "compare: " << a.size() << " and " << b.size() << " report lines, " << unmatched << " unmatched\n";
  return kExitOk;
}

}  // namespace

int cmd_phantom(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const std::string dir = prepare_dir(cfg.output.dir);
    const Phantom f = cfg.phantom();
    ReconGrid g = cfg.recon_grid();
    g.values.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = f.eval(g.points[i]);
    write_grid(join(dir, "phantom.tatg"), g);
    Report r{{"dim", std::to_string(f.dim())},
             {"components", std::to_string(f.components().size())},
             {"admissible", f.admissible() ? "1" : "0"},
             {"max_abs", fmt(f.max_abs())},
             {"grid_points", std::to_string(g.size())}};
    write_report(join(dir, "phantom.txt"), r);
    log << "phantom: " << f.components().size() << " components on " << g.size() << " grid points\n";
    return kExitOk;
  });
}

int cmd_forward(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const std::string dir = prepare_dir(cfg.output.dir);
    const Phantom f = cfg.phantom();
    const SphereGrid sphere = cfg.sphere();
    const TimeGrid time = cfg.time();
    const int ang = cfg.grid.angular_resolution;
    std::optional<DataPanel> radon, wave;
    auto need_radon = [&]() -> const DataPanel& {
      if (!radon) radon = radon_rs(f, sphere, time, ang);
      return *radon;
    };
    auto need_wave = [&]() -> const DataPanel& {
      if (!wave) wave = apply_b_transform(need_radon());
      return *wave;
    };
    for (PanelKind k : cfg.output.kinds) {
      DataPanel p;
      switch (k) {
        case PanelKind::RadonRS: p = need_radon(); break;
        case PanelKind::MeanMS: p = mean_ms(f, sphere, time, ang); break;
        case PanelKind::WaveT: p = need_wave(); break;
        case PanelKind::IntegralP: p = integral_p(need_wave()); break;
        case PanelKind::NeumannTrace: p = neumann_trace(f, sphere, time, cfg.grid.neumann_step, ang); break;
      }
      const std::string path = join(dir, to_string(k) + ".tatp");
      write_panel(path, p);
      log << "forward: " << to_string(k) << " " << p.detectors() << " x " << time.samples << " -> " << path << "\n";
    }
    return kExitOk;
  });
}

int cmd_recon(const RunConfig& cfg, const std::string& panel_file, std::ostream& log) {
  return guarded(log, [&] {
    const DataPanel data = read_panel(panel_file);
    if (data.dim() != cfg.dim)
      throw std::invalid_argument("recon: panel dimension " + std::to_string(data.dim()) +
                                  " differs from config dim " + std::to_string(cfg.dim));
    const std::string dir = prepare_dir(cfg.output.dir);
    const Phantom truth = cfg.phantom();
    log << "recon: " << to_string(cfg.formula.variant) << " on " << to_string(data.kind) << " data\n";
    const ReconstructionReport rep = reconstruct(cfg.formula, data, cfg.recon_grid(), &truth);
    write_grid(join(dir, "recon.tatg"), rep.grid);
    Report r{{"variant", to_string(rep.spec.variant)}, {"data_kind", to_string(data.kind)}};
    for (auto& kv : metrics_report(*rep.metrics)) r.push_back(kv);
    r.emplace_back("lambda_truncation", fmt(rep.truncation));
    write_report(join(dir, "metrics.txt"), r);
    const Point centre = truth.components().empty() ? Point{0.0, 0.0, 0.0} : truth.components().front().center;
    std::ostringstream slice;
    slice << "# x f_true f_recon\n";
    for (std::size_t p : axis_line(rep.grid, centre))
      slice << fmt(rep.grid.points[p][0]) << " " << fmt(truth.eval(rep.grid.points[p])) << " "
            << fmt(rep.grid.values[p]) << "\n";
    write_text(join(dir, "slice.txt"), slice.str());
    log << "recon: " << rep.grid.size() << " points, l2 " << fmt(rep.metrics->l2);
    if (rep.metrics->relative_l2) log << ", relative l2 " << fmt(*rep.metrics->relative_l2);
    log << "\n";
    return kExitOk;
  });
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const std::string dir = prepare_dir(cfg.output.dir);
    const auto reports = run_battery({.seed = cfg.seed, .negative_control = cfg.negative_control});
    write_report(join(dir, "validate.txt"), identity_report(reports));
    int failures = 0;
    for (const auto& r : reports) {
      log << "validate: " << (r.pass ? "pass " : "FAIL ") << r.name << " residual " << fmt(r.residual)
          << " tolerance " << fmt(r.tolerance) << "\n";
      failures += r.pass ? 0 : 1;
    }
    log << "validate: " << failures << " of " << reports.size() << " checks failed\n";
    return failures == 0 ? kExitOk : kExitValidation;
  });
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& out_dir, std::ostream& log) {
  return guarded(log, [&] {
    const std::string dir = prepare_dir(out_dir);
    const std::string ma = magic_of(a), mb = magic_of(b);
    if (ma == "TATG" || mb == "TATG") return compare_grids(a, b, dir, log);
    if (ma == "TATP" || mb == "TATP") throw std::invalid_argument("compare: panel files are not comparable; use grids");
    return compare_reports(a, b, dir, log);
  });
}

}  // namespace tat
