// vpl: spectra, pulse design, resonance search, parameter sweeps and self-verification.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vpl/commands.hpp"
#include "vpl/config.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string output;
  std::string format;
  std::string kernel;
  std::optional<double> nu;
  std::optional<int> grid_points;
  bool two_ends = false;
};

vpl::RunConfig resolve(const Overrides& o) {
  vpl::RunConfig config = o.config_path.empty() ? vpl::RunConfig{} : vpl::load_config(o.config_path);
  if (!o.output.empty()) config.output = o.output;
  if (!o.format.empty()) config.format = vpl::parse_output_format(o.format);
  if (!o.kernel.empty()) config.kernel = vpl::parse_kernel_variant(o.kernel);
  if (o.nu) config.nu = *o.nu;
  if (o.grid_points) config.grid_points = *o.grid_points;
  if (o.two_ends) config.two_end_factor = true;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vacuum photon-pair emission from a pulse-modulated fiber"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--output", o.output, "Write the table to this file");
  app.add_option("--format", o.format, "Table format: csv or json");
  app.add_option("--kernel", o.kernel, "Kernel variant: pv or paper");
  app.add_option("--nu", o.nu, "Override the dimensionless drive strength");
  app.add_option("--grid-points", o.grid_points, "Odd number of frequency samples on [0, 2]");
  app.add_flag("--two-ends", o.two_ends, "Double the emission for a two-ended fiber");

  bool json = false;
  auto* spectrum = app.add_subcommand("spectrum", "Emission spectrum on [0, 2] omega0");
  auto* design = app.add_subcommand("design", "Optimal pulse parameters");
  design->add_flag("--json", json, "Machine-readable output");
  auto* resonance = app.add_subcommand("resonance", "Resonance drive strength nu0");
  resonance->add_flag("--json", json, "Machine-readable output");

  std::vector<std::string> vary;
  std::string mode = "full";
  auto* sweep = app.add_subcommand("sweep", "Photon yield over one or two parameters");
  sweep->add_option("--vary", vary, "name:from:to:steps, name in nu|I|L|lambda0 (at most twice)")
      ->required();
  sweep->add_option("--mode", mode, "Emission model: weak or full");

  auto* verify = app.add_subcommand("verify", "Closed-form and time-domain oracle checks");
  verify->add_flag("--json", json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(vpl::ExitCode::validation);
  }

  return vpl::run_command(
      [&]() -> int {
        const vpl::RunConfig config = resolve(o);
        if (*spectrum) return vpl::cmd_spectrum(config, std::cout, std::cerr);
        if (*design) return vpl::cmd_design(config, json, std::cout);
        if (*resonance) return vpl::cmd_resonance(config, json, std::cout);
        if (*sweep) {
          vpl::SweepRequest request;
          for (const std::string& axis : vary) request.axes.push_back(vpl::parse_sweep_axis(axis));
          request.mode = vpl::parse_emission_mode(mode);
          return vpl::cmd_sweep(config, request, std::cout, std::cerr);
        }
        return vpl::cmd_verify(config, json, std::cout);
      },
      std::cerr);
}
