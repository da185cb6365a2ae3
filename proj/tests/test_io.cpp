#include <doctest.h>

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tat/io.hpp"

using namespace tat;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tat_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

long long io_offset(const std::string& path, bool grid) {
  try {
    if (grid) read_grid(path);
    else read_panel(path);
  } catch (const IoError& e) {
    return e.offset();
  }
  return -2;
}

}  // namespace

TEST_CASE("config parses every key") {
  const std::string text = R"(# comment line
dim = 2
seed = 42   # trailing comment
allow_exterior = true
negative_control = true

[phantom]
component = Ball 0.1 0.2 0 0.3 2
component = SmoothBump -0.25 0 0 0.2 -1

[grid]
sphere_resolution = 48
angular_resolution = 32
time_samples = 300
t_max = 2.5
recon_points = 21
recon_half_width = 0.8
recon_margin = 0.1
neumann_step = 0.002

[formula]
variant = KernelKn
xi = fixed
xi_point = 0.1 0.2 0.3
phi = 1.5
lambda_max = 100
lambda_panels = 40
tail_exponent = 3
parallel = false

[output]
dir = results
kinds = MeanMS IntegralP NeumannTrace
)";
  const RunConfig c = parse_config(text);
  CHECK(c.dim == 2);
  CHECK(c.seed == 42);
  CHECK(c.allow_exterior);
  CHECK(c.negative_control);
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0].kind == ComponentKind::Ball);
  CHECK(c.components[0].center[1] == 0.2);
  CHECK(c.components[1].amplitude == -1.0);
  CHECK(c.grid.sphere_resolution == 48);
  CHECK(c.grid.angular_resolution == 32);
  CHECK(c.grid.time_samples == 300);
  CHECK(c.grid.t_max == 2.5);
  CHECK(c.grid.recon_points == 21);
  CHECK(c.grid.recon_half_width == 0.8);
  CHECK(c.grid.recon_margin == 0.1);
  CHECK(c.grid.neumann_step == 0.002);
  CHECK(c.formula.variant == Variant::KernelKn);
  CHECK(c.formula.xi.kind == XiMode::Kind::Fixed);
  CHECK(c.formula.xi.point[2] == 0.3);
  CHECK(c.formula.phi.constant);
  CHECK(c.formula.phi.value == 1.5);
  CHECK(c.formula.kernel.lambda_max == 100.0);
  CHECK(c.formula.kernel.panels == 40);
  CHECK(c.formula.tail_exponent == 3.0);
  CHECK_FALSE(c.formula.parallel);
  CHECK(c.output.dir == "results");
  CHECK(c.output.kinds == std::vector<PanelKind>{PanelKind::MeanMS, PanelKind::IntegralP, PanelKind::NeumannTrace});

  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(serialize_config(parse_config(serialize_config(c))) == serialize_config(c));
}

TEST_CASE("empty config gives the defaults") {
  const RunConfig c = parse_config("");
  CHECK(c == RunConfig{});
  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(c.grid.sphere_resolution == 64);
  CHECK(c.grid.time_samples == 256);
  CHECK(c.grid.recon_points == 33);
}

TEST_CASE("config values that need exact round trip") {
  RunConfig c;
  c.components.push_back({ComponentKind::SmoothBump, {0.1 + 0.2, 1.0 / 3.0, -1e-17}, 0.7, 1.0 / 7.0});
  c.grid.t_max = 2.0000000000000004;
  CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("config errors name the line") {
  auto message = [](const std::string& text) -> std::string {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message("dim = 3\nbogus = 1\n").find("line 2") != std::string::npos);
  CHECK(message("[grid]\nsphere_res = 4\n").find("grid.sphere_res") != std::string::npos);
  CHECK(message("[nope]\n").find("unknown section") != std::string::npos);
  CHECK(message("[grid\n").find("malformed") != std::string::npos);
  CHECK(message("dim 3\n").find("key = value") != std::string::npos);
  CHECK(message("dim = 4\n").find("dim") != std::string::npos);
  CHECK(message("[grid]\nt_max = two\n").find("line 2") != std::string::npos);
  CHECK(message("[phantom]\ncomponent = Cube 0 0 0 1 1\n").find("Cube") != std::string::npos);
  CHECK(message("[phantom]\ncomponent = Ball 0 0 1 1\n").find("line 2") != std::string::npos);
  CHECK(message("[formula]\nvariant = Magic\n").find("line 2") != std::string::npos);
  CHECK(message("[formula]\nxi = y\n").find("line 2") != std::string::npos);
  CHECK(message("[output]\nkinds = RadonRS Sinogram\n").find("line 2") != std::string::npos);
  CHECK(message("allow_exterior = yes\n").find("true or false") != std::string::npos);
  CHECK(message("seed = -3\n").find("non-negative") != std::string::npos);
  CHECK_THROWS_AS(load_config(scratch("missing.cfg").string() + ".none"), IoError);
}

TEST_CASE("derived geometry from the config") {
  RunConfig c = parse_config("dim = 2\n[grid]\nsphere_resolution = 40\ntime_samples = 100\nrecon_points = 11\n");
  CHECK(c.sphere().size() == 40);
  CHECK(c.time().samples == 100);
  CHECK(c.recon_grid().points_per_axis == 11);
  c.components.push_back({ComponentKind::Ball, {0.9, 0.0, 0.0}, 0.3, 1.0});
  CHECK_THROWS(c.phantom());
  c.allow_exterior = true;
  CHECK_FALSE(c.phantom().admissible());
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1e-300) == "-1e-300");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("panel files round trip bit for bit") {
  for (int n : {2, 3}) {
    const auto sphere = make_sphere_grid(n, 8);
    const auto time = make_time_grid(2.0, 5);
    DataPanel p{PanelKind::WaveT, sphere, time, {}};
    p.values.resize(sphere.size() * 5);
    for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] = std::sin(0.37 * i) / (1.0 + i);
    p.values[3] = -0.0;
    const auto path = scratch("p" + std::to_string(n) + ".tatp").string();
    write_panel(path, p);
    const std::string bytes = slurp(path);
    CHECK(bytes.substr(0, 4) == "TATP");
    CHECK(bytes.size() == bytes.find('\n') + 1 + 8 * p.values.size());

    const DataPanel q = read_panel(path);
    CHECK(q.kind == p.kind);
    CHECK(q.dim() == n);
    CHECK(q.detectors() == p.detectors());
    CHECK(q.time.samples == 5);
    CHECK(q.time.t_max == 2.0);
    REQUIRE(q.values.size() == p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i)
      CHECK(std::bit_cast<std::uint64_t>(q.values[i]) == std::bit_cast<std::uint64_t>(p.values[i]));
    for (int j = 0; j < p.detectors(); ++j) CHECK(q.sphere.nodes[j] == p.sphere.nodes[j]);

    write_panel(scratch("again.tatp").string(), q);
    CHECK(slurp(scratch("again.tatp")) == bytes);
  }
}

TEST_CASE("panel values are little-endian float64") {
  const auto sphere = make_sphere_grid(2, 8);
  DataPanel p{PanelKind::RadonRS, sphere, make_time_grid(1.0, 2), std::vector<double>(16, 0.0)};
  p.values[0] = 1.0;  // 0x3ff0000000000000
  const auto path = scratch("le.tatp").string();
  write_panel(path, p);
  const std::string b = slurp(path);
  const std::size_t d = b.find('\n') + 1;
  CHECK(static_cast<unsigned char>(b[d + 6]) == 0xf0);
  CHECK(static_cast<unsigned char>(b[d + 7]) == 0x3f);
  CHECK(b.substr(0, d) == "TATP kind=RadonRS n=2 detectors=8 samples=2 t_max=1\n");
}

TEST_CASE("corrupt panel files report byte offsets") {
  const auto sphere = make_sphere_grid(3, 8);
  DataPanel p{PanelKind::WaveT, sphere, make_time_grid(2.0, 4), std::vector<double>(sphere.size() * 4, 0.5)};
  const auto good = scratch("good.tatp");
  write_panel(good.string(), p);
  const std::string bytes = slurp(good);
  const std::size_t data = bytes.find('\n') + 1;
  const auto bad = scratch("bad.tatp").string();

  spit(bad, "TATQ" + bytes.substr(4));
  CHECK(io_offset(bad, false) == 3);

  spit(bad, bytes.substr(0, bytes.size() - 3));
  CHECK(io_offset(bad, false) == static_cast<long long>(data + 8 * (p.values.size() - 1)));

  spit(bad, bytes + "x");
  CHECK(io_offset(bad, false) == static_cast<long long>(bytes.size()));

  std::string wrong = bytes;
  const std::size_t k = wrong.find("samples=4");
  wrong[k + 8] = 'z';
  spit(bad, wrong);
  CHECK(io_offset(bad, false) == static_cast<long long>(k + 8));

  std::string kind = bytes;
  kind.replace(kind.find("WaveT"), 5, "Wavez");
  spit(bad, kind);
  CHECK(io_offset(bad, false) == static_cast<long long>(kind.find("Wavez")));

  std::string det = bytes;
  det.replace(det.find("detectors=32"), 12, "detectors=31");
  spit(bad, det);
  CHECK(io_offset(bad, false) == static_cast<long long>(det.find("detectors=31") + 10));

  spit(bad, bytes.substr(0, data - 1));
  CHECK(io_offset(bad, false) >= 0);
  spit(bad, "");
  CHECK(io_offset(bad, false) >= 0);
  CHECK(io_offset(scratch("absent.tatp").string(), false) == -1);

  spit(bad, bytes);
  CHECK_THROWS_AS(read_grid(bad), IoError);
}

TEST_CASE("grid files round trip bit for bit") {
  ReconGrid g = make_recon_grid(3, 0.9, 7);
  g.values.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = g.points[i][0] * 1e-3 + g.points[i][2] / 3.0;
  const auto path = scratch("g.tatg").string();
  write_grid(path, g);
  const ReconGrid h = read_grid(path);
  CHECK(h.dim == 3);
  CHECK(h.points_per_axis == 7);
  CHECK(h.half_width == 0.9);
  CHECK(h.margin == g.margin);
  REQUIRE(h.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(h.points[i] == g.points[i]);
    CHECK(std::bit_cast<std::uint64_t>(h.values[i]) == std::bit_cast<std::uint64_t>(g.values[i]));
  }

  const std::string bytes = slurp(path);
  const auto bad = scratch("bad.tatg").string();
  std::string count = bytes;
  const std::size_t k = count.find("count=") + 6;
  count[k] = count[k] == '9' ? '8' : '9';
  spit(bad, count);
  CHECK(io_offset(bad, true) == static_cast<long long>(k));
  spit(bad, bytes.substr(0, bytes.size() - 8));
  CHECK(io_offset(bad, true) >= 0);

  ReconGrid empty = make_recon_grid(2, 0.5, 3);
  empty.values.clear();
  CHECK_THROWS_AS(write_grid(scratch("e.tatg").string(), empty), std::invalid_argument);
}

TEST_CASE("report files") {
  const Report r{{"alpha", "1"}, {"beta.gamma", "2.5e-07"}, {"text", "TimeDomainW"}};
  const auto path = scratch("r.txt").string();
  write_report(path, r);
  CHECK(slurp(path) == "alpha\t1\nbeta.gamma\t2.5e-07\ntext\tTimeDomainW\n");
  CHECK(read_report(path) == r);
  spit(path, "alpha 1\n");
  CHECK_THROWS_AS(read_report(path), IoError);

  const Report m = metrics_report({0.5, 0.25, 0.125});
  CHECK(m == Report{{"l2", "0.5"}, {"linf", "0.25"}, {"relative_l2", "0.125"}});
  CHECK(metrics_report({0.0, 0.0, std::nullopt}).size() == 2);

  IdentityReport a = make_report("id", 2e-4, 1e-3, "samples=129");
  a.slope = 4.0;
  const Report ir = identity_report({a});
  CHECK(ir == Report{{"id.residual", "2e-04"},
                     {"id.tolerance", "0.001"},
                     {"id.pass", "1"},
                     {"id.slope", "4"},
                     {"id.resolution", "samples=129"}});
}
