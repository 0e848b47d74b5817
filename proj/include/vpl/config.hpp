#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "vpl/bogolyubov.hpp"
#include "vpl/fiber.hpp"
#include "vpl/kernel.hpp"
#include "vpl/spectrum.hpp"

namespace vpl {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view name);

/// Time-domain oracle settings used by `verify`.
struct OracleSettings {
  std::size_t modes = 200;
  double cutoff = 2.0;          // units of omega0
  double transits = 40.0;       // total time in units of L/c
  double ramp_periods = 5.0;
  int step_divisions = 40;
  double weak_nu = 0.05;
  double moderate_nu = 1.0;

  ModeSystem system(double nu) const;
};

struct RunConfig {
  FiberParams fiber;
  int grid_points = kDefaultGridPoints;
  KernelVariant kernel = KernelVariant::pv;
  bool two_end_factor = false;
  double denominator_floor = 1e-12;
  std::optional<double> nu;  // overrides the intensity-derived drive
  OracleSettings oracle;
  std::string output;
  OutputFormat format = OutputFormat::csv;

  void validate() const;
  SpectrumOptions spectrum_options() const;
  double drive_nu() const;
};

/// Flat JSON schema; every key optional. A document with a top-level "config" object
/// (as written by the JSON outputs) is read from that object.
RunConfig config_from_json(const nlohmann::json& document, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& config);
/// Throws std::ios_base::failure when the file cannot be opened, ValidationError otherwise.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace vpl
