#include "vpl/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "vpl/bogolyubov.hpp"
#include "vpl/errors.hpp"

namespace vpl {

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::json ? "json" : "csv";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ValidationError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

ModeSystem OracleSettings::system(double nu) const {
  ModeSystem s = ModeSystem::for_drive(nu, modes, cutoff, transits, ramp_periods);
  s.step_divisions = step_divisions;
  return s;
}

void RunConfig::validate() const {
  fiber.validate();
  symmetric_grid(grid_points);
  if (!std::isfinite(denominator_floor) || denominator_floor <= 0.0) {
    throw ValidationError("denominator_floor must be positive");
  }
  if (nu && (!std::isfinite(*nu) || *nu < 0.0)) {
    throw ValidationError("nu must be non-negative");
  }
  if (oracle.modes > 4000) throw ValidationError("oracle_modes above 4000 is not desk-scale");
  if (!(oracle.weak_nu >= 0.0) || !(oracle.moderate_nu >= 0.0)) {
    throw ValidationError("oracle drive amplitudes must be non-negative");
  }
  oracle.system(oracle.weak_nu).validate();
}

SpectrumOptions RunConfig::spectrum_options() const {
  SpectrumOptions options;
  options.variant = kernel;
  options.denominator_floor = denominator_floor;
  options.two_ends = two_end_factor;
  return options;
}

double RunConfig::drive_nu() const { return nu ? *nu : derive_drive(fiber).nu; }

namespace {

template <typename T>
T read(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& document, RunConfig base) {
  const nlohmann::json& j =
      (document.is_object() && document.contains("config")) ? document.at("config") : document;
  if (!j.is_object()) throw ValidationError("configuration must be a JSON object");

  static const std::set<std::string> known = {
      "n2", "L", "S", "lambda0", "I", "grid_points", "kernel", "two_end_factor",
      "denominator_floor", "nu", "oracle_modes", "oracle_cutoff", "oracle_transits",
      "oracle_ramp_periods", "oracle_step_divisions", "oracle_weak_nu", "oracle_moderate_nu",
      "output", "format"};
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      throw ValidationError("unknown config key '" + item.key() + "'");
    }
  }

  RunConfig c = std::move(base);
  if (j.contains("n2")) c.fiber.n2 = read<double>(j, "n2");
  if (j.contains("L")) c.fiber.length = read<double>(j, "L");
  if (j.contains("S")) c.fiber.area = read<double>(j, "S");
  if (j.contains("lambda0")) c.fiber.lambda0 = read<double>(j, "lambda0");
  if (j.contains("I")) c.fiber.intensity = read<double>(j, "I");
  if (j.contains("grid_points")) c.grid_points = read<int>(j, "grid_points");
  if (j.contains("kernel")) c.kernel = parse_kernel_variant(read<std::string>(j, "kernel"));
  if (j.contains("two_end_factor")) c.two_end_factor = read<bool>(j, "two_end_factor");
  if (j.contains("denominator_floor")) c.denominator_floor = read<double>(j, "denominator_floor");
  if (j.contains("nu")) {
    if (j.at("nu").is_null()) {
      c.nu.reset();
    } else {
      c.nu = read<double>(j, "nu");
    }
  }
  if (j.contains("oracle_modes")) c.oracle.modes = read<std::size_t>(j, "oracle_modes");
  if (j.contains("oracle_cutoff")) c.oracle.cutoff = read<double>(j, "oracle_cutoff");
  if (j.contains("oracle_transits")) c.oracle.transits = read<double>(j, "oracle_transits");
  if (j.contains("oracle_ramp_periods")) c.oracle.ramp_periods = read<double>(j, "oracle_ramp_periods");
  if (j.contains("oracle_step_divisions")) c.oracle.step_divisions = read<int>(j, "oracle_step_divisions");
  if (j.contains("oracle_weak_nu")) c.oracle.weak_nu = read<double>(j, "oracle_weak_nu");
  if (j.contains("oracle_moderate_nu")) c.oracle.moderate_nu = read<double>(j, "oracle_moderate_nu");
  if (j.contains("output")) c.output = read<std::string>(j, "output");
  if (j.contains("format")) c.format = parse_output_format(read<std::string>(j, "format"));
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["n2"] = c.fiber.n2;
  j["L"] = c.fiber.length;
  j["S"] = c.fiber.area;
  j["lambda0"] = c.fiber.lambda0;
  j["I"] = c.fiber.intensity;
  j["grid_points"] = c.grid_points;
  j["kernel"] = std::string(to_string(c.kernel));
  j["two_end_factor"] = c.two_end_factor;
  j["denominator_floor"] = c.denominator_floor;
  j["nu"] = c.nu ? nlohmann::json(*c.nu) : nlohmann::json(nullptr);
  j["oracle_modes"] = c.oracle.modes;
  j["oracle_cutoff"] = c.oracle.cutoff;
  j["oracle_transits"] = c.oracle.transits;
  j["oracle_ramp_periods"] = c.oracle.ramp_periods;
  j["oracle_step_divisions"] = c.oracle.step_divisions;
  j["oracle_weak_nu"] = c.oracle.weak_nu;
  j["oracle_moderate_nu"] = c.oracle.moderate_nu;
  j["format"] = std::string(to_string(c.format));
  return j;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file " + path.string());
  nlohmann::json document;
  try {
    in >> document;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(document);
}

}  // namespace vpl
