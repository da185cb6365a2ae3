#include "tat/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace tat {

IoError::IoError(const std::string& what, long long offset)
    : std::runtime_error(offset >= 0 ? what + " (at byte offset " + std::to_string(offset) + ")" : what),
      offset_(offset) {}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, r.ptr};
}

Phantom RunConfig::phantom() const { return Phantom(dim, components, allow_exterior); }
SphereGrid RunConfig::sphere() const { return make_sphere_grid(dim, grid.sphere_resolution); }
TimeGrid RunConfig::time() const { return make_time_grid(grid.t_max, grid.time_samples); }
ReconGrid RunConfig::recon_grid() const {
  return make_recon_grid(dim, grid.recon_half_width, grid.recon_points, grid.recon_margin);
}

// ---- config ---------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

struct LineContext {
  int line;
  std::string key;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line) + " (" + key + "): " + msg);
  }
};

double to_double(const std::string& s, const LineContext& ctx) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) ctx.fail("expected a number, got '" + s + "'");
  return v;
}

long long to_integer(const std::string& s, const LineContext& ctx) {
  long long v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) ctx.fail("expected an integer, got '" + s + "'");
  return v;
}

int to_int(const std::string& s, const LineContext& ctx) { return static_cast<int>(to_integer(s, ctx)); }

bool to_bool(const std::string& s, const LineContext& ctx) {
  if (s == "true") return true;
  if (s == "false") return false;
  ctx.fail("expected true or false, got '" + s + "'");
}

Point to_point(const std::string& s, const LineContext& ctx) {
  const auto w = words(s);
  if (w.size() != 3) ctx.fail("expected three coordinates");
  return {to_double(w[0], ctx), to_double(w[1], ctx), to_double(w[2], ctx)};
}

std::string point_string(const Point& p) {
  return format_double(p[0]) + " " + format_double(p[1]) + " " + format_double(p[2]);
}

const char* kind_name(ComponentKind k) { return k == ComponentKind::Ball ? "Ball" : "SmoothBump"; }

Component to_component(const std::string& s, const LineContext& ctx) {
  const auto w = words(s);
  if (w.size() != 6) ctx.fail("expected '<Ball|SmoothBump> cx cy cz radius amplitude'");
  Component c;
  if (w[0] == "Ball") c.kind = ComponentKind::Ball;
  else if (w[0] == "SmoothBump") c.kind = ComponentKind::SmoothBump;
  else ctx.fail("unknown component kind '" + w[0] + "'");
  c.center = {to_double(w[1], ctx), to_double(w[2], ctx), to_double(w[3], ctx)};
  c.radius = to_double(w[4], ctx);
  c.amplitude = to_double(w[5], ctx);
  return c;
}

const char* xi_name(XiMode::Kind k) {
  switch (k) {
    case XiMode::Kind::EqualsX: return "x";
    case XiMode::Kind::Origin: return "origin";
    case XiMode::Kind::Fixed: return "fixed";
  }
  return "?";
}

void set_top(RunConfig& c, const std::string& key, const std::string& v, const LineContext& ctx) {
  if (key == "dim") c.dim = to_int(v, ctx);
  else if (key == "seed") {
    const long long s = to_integer(v, ctx);
    if (s < 0) ctx.fail("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "allow_exterior") c.allow_exterior = to_bool(v, ctx);
  else if (key == "negative_control") c.negative_control = to_bool(v, ctx);
  else ctx.fail("unknown key");
}

void set_grid(GridConfig& g, const std::string& key, const std::string& v, const LineContext& ctx) {
  if (key == "sphere_resolution") g.sphere_resolution = to_int(v, ctx);
  else if (key == "angular_resolution") g.angular_resolution = to_int(v, ctx);
  else if (key == "time_samples") g.time_samples = to_int(v, ctx);
  else if (key == "t_max") g.t_max = to_double(v, ctx);
  else if (key == "recon_points") g.recon_points = to_int(v, ctx);
  else if (key == "recon_half_width") g.recon_half_width = to_double(v, ctx);
  else if (key == "recon_margin") g.recon_margin = to_double(v, ctx);
  else if (key == "neumann_step") g.neumann_step = to_double(v, ctx);
  else ctx.fail("unknown key");
}

void set_formula(FormulaSpec& f, const std::string& key, const std::string& v, const LineContext& ctx) {
  if (key == "variant") {
    try {
      f.variant = variant_from_string(v);
    } catch (const std::invalid_argument& e) {
      ctx.fail(e.what());
    }
  } else if (key == "xi") {
    if (v == "x") f.xi.kind = XiMode::Kind::EqualsX;
    else if (v == "origin") f.xi.kind = XiMode::Kind::Origin;
    else if (v == "fixed") f.xi.kind = XiMode::Kind::Fixed;
    else ctx.fail("expected x, origin or fixed");
  } else if (key == "xi_point") f.xi.point = to_point(v, ctx);
  else if (key == "phi") {
    if (v == "zero") f.phi = {};
    else f.phi = {true, to_double(v, ctx)};
  } else if (key == "lambda_max") f.kernel.lambda_max = to_double(v, ctx);
  else if (key == "lambda_panels") f.kernel.panels = to_int(v, ctx);
  else if (key == "tail_exponent") f.tail_exponent = to_double(v, ctx);
  else if (key == "parallel") f.parallel = to_bool(v, ctx);
  else ctx.fail("unknown key");
}

void set_output(OutputConfig& o, const std::string& key, const std::string& v, const LineContext& ctx) {
  if (key == "dir") {
    if (v.empty()) ctx.fail("empty directory");
    o.dir = v;
  } else if (key == "kinds") {
    o.kinds.clear();
    for (const auto& w : words(v)) {
      try {
        o.kinds.push_back(panel_kind_from_string(w));
      } catch (const std::invalid_argument& e) {
        ctx.fail(e.what());
      }
    }
  } else ctx.fail("unknown key");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("config line " + std::to_string(line) + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "phantom" && section != "grid" && section != "formula" && section != "output")
        throw ConfigError("config line " + std::to_string(line) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const LineContext ctx{line, section.empty() ? key : section + "." + key};
    if (section.empty()) set_top(c, key, value, ctx);
    else if (section == "phantom") {
      if (key != "component") ctx.fail("unknown key");
      c.components.push_back(to_component(value, ctx));
    } else if (section == "grid") set_grid(c.grid, key, value, ctx);
    else if (section == "formula") set_formula(c.formula, key, value, ctx);
    else set_output(c.output, key, value, ctx);
  }
  if (c.dim != 2 && c.dim != 3) throw ConfigError("config: dim must be 2 or 3");
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "dim = " << c.dim << "\n";
  os << "seed = " << c.seed << "\n";
  os << "allow_exterior = " << (c.allow_exterior ? "true" : "false") << "\n";
  os << "negative_control = " << (c.negative_control ? "true" : "false") << "\n";
  os << "\n[phantom]\n";
  for (const auto& comp : c.components)
    os << "component = " << kind_name(comp.kind) << " " << point_string(comp.center) << " "
       << format_double(comp.radius) << " " << format_double(comp.amplitude) << "\n";
  const GridConfig& g = c.grid;
  os << "\n[grid]\n";
  os << "sphere_resolution = " << g.sphere_resolution << "\n";
  os << "angular_resolution = " << g.angular_resolution << "\n";
  os << "time_samples = " << g.time_samples << "\n";
  os << "t_max = " << format_double(g.t_max) << "\n";
  os << "recon_points = " << g.recon_points << "\n";
  os << "recon_half_width = " << format_double(g.recon_half_width) << "\n";
  os << "recon_margin = " << format_double(g.recon_margin) << "\n";
  os << "neumann_step = " << format_double(g.neumann_step) << "\n";
  const FormulaSpec& f = c.formula;
  os << "\n[formula]\n";
  os << "variant = " << to_string(f.variant) << "\n";
  os << "xi = " << xi_name(f.xi.kind) << "\n";
  os << "xi_point = " << point_string(f.xi.point) << "\n";
  os << "phi = " << (f.phi.constant ? format_double(f.phi.value) : std::string("zero")) << "\n";
  os << "lambda_max = " << format_double(f.kernel.lambda_max) << "\n";
  os << "lambda_panels = " << f.kernel.panels << "\n";
  os << "tail_exponent = " << format_double(f.tail_exponent) << "\n";
  os << "parallel = " << (f.parallel ? "true" : "false") << "\n";
  os << "\n[output]\n";
  os << "dir = " << c.output.dir << "\n";
  os << "kinds =";
  for (PanelKind k : c.output.kinds) os << " " << to_string(k);
  os << "\n";
  return os.str();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---- binary files -----------------------------------------------------------

namespace {

void put_f64(std::string& out, double v) {
  std::uint64_t u = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

double get_f64(const std::string& in, std::size_t pos) {
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return std::bit_cast<double>(u);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parsed "key=value" fields of a header line, with the byte offset of each value.
struct Header {
  std::string path;
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::size_t end = 0;  // first byte after the newline

  const std::string& get(const std::string& key) const {
    const auto it = fields.find(key);
    if (it == fields.end()) throw IoError(path + ": header lacks '" + key + "'", static_cast<long long>(end - 1));
    return it->second.first;
  }
  std::size_t offset(const std::string& key) const { return fields.at(key).second; }
  long long integer(const std::string& key) const {
    const std::string& s = get(key);
    long long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v < 0)
      throw IoError(path + ": bad value for '" + key + "'", static_cast<long long>(offset(key)));
    return v;
  }
  double real(const std::string& key) const {
    const std::string& s = get(key);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
      throw IoError(path + ": bad value for '" + key + "'", static_cast<long long>(offset(key)));
    return v;
  }
};

Header parse_header(const std::string& path, const std::string& bytes, const char* magic) {
  if (bytes.size() < 4 || bytes.compare(0, 4, magic) != 0) {
    std::size_t bad = 0;
    while (bad < 4 && bad < bytes.size() && bytes[bad] == magic[bad]) ++bad;
    throw IoError(path + ": not a " + std::string(magic) + " file (bad magic)", static_cast<long long>(bad));
  }
  const auto nl = bytes.find('\n', 4);
  if (nl == std::string::npos) throw IoError(path + ": unterminated header", static_cast<long long>(bytes.size()));
  Header h;
  h.path = path;
  h.end = nl + 1;
  std::size_t pos = 4;
  while (pos < nl) {
    while (pos < nl && bytes[pos] == ' ') ++pos;
    if (pos >= nl) break;
    const std::size_t start = pos;
    while (pos < nl && bytes[pos] != ' ') ++pos;
    const std::string tok = bytes.substr(start, pos - start);
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw IoError(path + ": malformed header field '" + tok + "'", static_cast<long long>(start));
    h.fields[tok.substr(0, eq)] = {tok.substr(eq + 1), start + eq + 1};
  }
  return h;
}

void check_payload(const Header& h, const std::string& bytes, std::size_t count) {
  const std::size_t want = h.end + 8 * count;
  if (bytes.size() < want)
    throw IoError(h.path + ": truncated data, expected " + std::to_string(count) + " values",
                  static_cast<long long>(h.end + 8 * ((bytes.size() - h.end) / 8)));
  if (bytes.size() > want) throw IoError(h.path + ": trailing bytes after data", static_cast<long long>(want));
}

int sphere_resolution_for(int dim, long long detectors) {
  if (dim == 2) return static_cast<int>(detectors);
  return static_cast<int>(std::lround(std::sqrt(2.0 * static_cast<double>(detectors))));
}

}  // namespace

void write_panel(const std::string& path, const DataPanel& p) {
  std::string out = "TATP kind=" + to_string(p.kind) + " n=" + std::to_string(p.dim()) +
                    " detectors=" + std::to_string(p.detectors()) + " samples=" + std::to_string(p.time.samples) +
                    " t_max=" + format_double(p.time.t_max) + "\n";
  out.reserve(out.size() + 8 * p.values.size());
  for (double v : p.values) put_f64(out, v);
  write_file(path, out);
}

DataPanel read_panel(const std::string& path) {
  const std::string bytes = read_file(path);
  const Header h = parse_header(path, bytes, "TATP");
  DataPanel p;
  try {
    p.kind = panel_kind_from_string(h.get("kind"));
  } catch (const std::invalid_argument&) {
    throw IoError(path + ": unknown panel kind '" + h.get("kind") + "'", static_cast<long long>(h.offset("kind")));
  }
  const long long n = h.integer("n");
  if (n != 2 && n != 3) throw IoError(path + ": dimension must be 2 or 3", static_cast<long long>(h.offset("n")));
  const long long detectors = h.integer("detectors");
  const long long samples = h.integer("samples");
  const double t_max = h.real("t_max");
  const int res = sphere_resolution_for(static_cast<int>(n), detectors);
  try {
    p.sphere = make_sphere_grid(static_cast<int>(n), res);
    p.time = make_time_grid(t_max, static_cast<int>(samples));
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what(), static_cast<long long>(h.offset("detectors")));
  }
  if (static_cast<long long>(p.sphere.size()) != detectors)
    throw IoError(path + ": detector count does not match a sphere grid", static_cast<long long>(h.offset("detectors")));
  const std::size_t count = static_cast<std::size_t>(detectors) * static_cast<std::size_t>(samples);
  check_payload(h, bytes, count);
  p.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) p.values[i] = get_f64(bytes, h.end + 8 * i);
  return p;
}

void write_grid(const std::string& path, const ReconGrid& g) {
  if (g.values.size() != g.size()) throw std::invalid_argument("write_grid: values do not match points");
  std::string out = "TATG n=" + std::to_string(g.dim) + " points_per_axis=" + std::to_string(g.points_per_axis) +
                    " half_width=" + format_double(g.half_width) + " margin=" + format_double(g.margin) +
                    " count=" + std::to_string(g.size()) + "\n";
  out.reserve(out.size() + 8 * g.values.size());
  for (double v : g.values) put_f64(out, v);
  write_file(path, out);
}

ReconGrid read_grid(const std::string& path) {
  const std::string bytes = read_file(path);
  const Header h = parse_header(path, bytes, "TATG");
  const long long n = h.integer("n");
  if (n != 2 && n != 3) throw IoError(path + ": dimension must be 2 or 3", static_cast<long long>(h.offset("n")));
  ReconGrid g;
  try {
    g = make_recon_grid(static_cast<int>(n), h.real("half_width"), static_cast<int>(h.integer("points_per_axis")),
                        h.real("margin"));
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what(), static_cast<long long>(h.offset("points_per_axis")));
  }
  const long long count = h.integer("count");
  if (count != static_cast<long long>(g.size()))
    throw IoError(path + ": point count does not match the grid geometry", static_cast<long long>(h.offset("count")));
  check_payload(h, bytes, g.size());
  g.values.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = get_f64(bytes, h.end + 8 * i);
  return g;
}

// ---- reports ----------------------------------------------------------------

void write_report(const std::string& path, const Report& r) {
  std::string out;
  for (const auto& [name, value] : r) out += name + "\t" + value + "\n";
  write_file(path, out);
}

Report read_report(const std::string& path) {
  const std::string bytes = read_file(path);
  Report r;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto nl = bytes.find('\n', pos);
    if (nl == std::string::npos) throw IoError(path + ": unterminated report line", static_cast<long long>(pos));
    const std::string line = bytes.substr(pos, nl - pos);
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw IoError(path + ": report line without name<TAB>value", static_cast<long long>(pos));
    r.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    pos = nl + 1;
  }
  return r;
}

Report metrics_report(const Metrics& m) {
  Report r{{"l2", format_double(m.l2)}, {"linf", format_double(m.linf)}};
  if (m.relative_l2) r.emplace_back("relative_l2", format_double(*m.relative_l2));
  return r;
}

Report identity_report(const std::vector<IdentityReport>& reports) {
  Report r;
  for (const auto& x : reports) {
    r.emplace_back(x.name + ".residual", format_double(x.residual));
    r.emplace_back(x.name + ".tolerance", format_double(x.tolerance));
    r.emplace_back(x.name + ".pass", x.pass ? "1" : "0");
    if (x.slope) r.emplace_back(x.name + ".slope", format_double(*x.slope));
    r.emplace_back(x.name + ".resolution", x.resolution);
  }
  return r;
}

}  // namespace tat
