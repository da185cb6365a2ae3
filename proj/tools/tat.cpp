// Command-line driver for the thermoacoustic toolkit.

#include <CLI11.hpp>

#include <iostream>

#include "tat/cli.hpp"

namespace {

int with_config(const std::string& path, bool allow_exterior, int (*fn)(const tat::RunConfig&, std::ostream&)) {
  try {
    tat::RunConfig cfg = path.empty() ? tat::RunConfig{} : tat::load_config(path);
    if (allow_exterior) cfg.allow_exterior = true;
    return fn(cfg, std::cerr);
  } catch (const tat::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tat::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tat::kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermoacoustic tomography: phantoms, forward data, inversion formulas and identity checks"};
  app.require_subcommand(1);

  std::string config;
  bool allow_exterior = false;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config, "Run configuration file");
    sub->add_flag("--allow-exterior", allow_exterior, "Accept phantom components outside the unit ball");
  };

  auto* phantom = app.add_subcommand("phantom", "Sample the phantom on the reconstruction grid");
  add_config(phantom);
  auto* forward = app.add_subcommand("forward", "Write boundary data panels");
  add_config(forward);
  auto* recon = app.add_subcommand("recon", "Reconstruct from a panel file");
  add_config(recon);
  std::string panel;
  recon->add_option("panel", panel, "Panel file (.tatp)")->required();
  auto* validate = app.add_subcommand("validate", "Run the identity battery");
  add_config(validate);
  auto* compare = app.add_subcommand("compare", "Compare two grid files or two report files");
  std::string file_a, file_b, out_dir = ".";
  compare->add_option("a", file_a, "First file")->required();
  compare->add_option("b", file_b, "Second file")->required();
  compare->add_option("-o,--out", out_dir, "Output directory");
  auto* show = app.add_subcommand("config", "Print the effective configuration");
  add_config(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? tat::kExitOk : tat::kExitUsage;
  }

  if (*phantom) return with_config(config, allow_exterior, tat::cmd_phantom);
  if (*forward) return with_config(config, allow_exterior, tat::cmd_forward);
  if (*validate) return with_config(config, allow_exterior, tat::cmd_validate);
  if (*recon) {
    static std::string panel_path;
    panel_path = panel;
    return with_config(config, allow_exterior,
                       [](const tat::RunConfig& c, std::ostream& log) { return tat::cmd_recon(c, panel_path, log); });
  }
  if (*compare) return tat::cmd_compare(file_a, file_b, out_dir, std::cerr);
  return with_config(config, allow_exterior, [](const tat::RunConfig& c, std::ostream&) {
    std::cout << tat::serialize_config(c);
    return 0;
  });
}
