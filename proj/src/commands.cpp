#include "vpl/commands.hpp"

#include <charconv>
#include <cmath>
#include <ios>
#include <iomanip>
#include <string>

#include "vpl/constants.hpp"
#include "vpl/errors.hpp"
#include "vpl/table.hpp"
#include "vpl/verify.hpp"

namespace vpl {

namespace {

double parse_number(std::string_view text, const char* what) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ValidationError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

constexpr int code(ExitCode c) { return static_cast<int>(c); }

}  // namespace

SweepAxis parse_sweep_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) {
    throw ValidationError("sweep axis must look like name:from:to:steps, got '" + std::string(text) + "'");
  }
  const double steps = parse_number(parts[3], "step count");
  if (steps < 0.0 || steps != std::floor(steps)) {
    throw ValidationError("sweep step count must be a non-negative integer");
  }
  return {parse_sweep_parameter(parts[0]), parse_number(parts[1], "range start"),
          parse_number(parts[2], "range end"), static_cast<std::size_t>(steps)};
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const DriveParams drive = derive_drive(config.fiber);
  const double nu = config.drive_nu();
  const double amplitude = nu * constants::speed_of_light / drive.omega0;
  const SpectralCurve curve = sample_spectrum(nu, config.spectrum_options(), config.grid_points);
  const PeakShape peak = measure_peak(curve.grid, curve.full);

  Table table{{"x", "rate_weak", "rate_full", "enhancement"}, {}};
  const Eigen::ArrayXd enhancement = curve.enhancement();
  table.rows.reserve(static_cast<std::size_t>(curve.grid.size()));
  for (Eigen::Index i = 0; i < curve.grid.size(); ++i) {
    table.rows.push_back({curve.grid[i], curve.weak[i], curve.full[i], enhancement[i]});
  }

  nlohmann::json summary{{"nu", nu},
                         {"amplitude_m", amplitude},
                         {"gamma_per_s", drive.gamma},
                         {"omega0_rad_per_s", drive.omega0},
                         {"peak_frequency", peak.peak_frequency},
                         {"fwhm", peak.fwhm},
                         {"resonance_saturation", curve.saturated},
                         {"kernel", std::string(to_string(config.kernel))}};
  emit_table(table, config, summary, out);

  std::ostream& info = config.output.empty() ? err : out;
  info << "nu                   " << nu << '\n'
       << "a [m]                " << amplitude << '\n'
       << "Gamma [1/s]          " << drive.gamma << '\n'
       << "peak x               " << peak.peak_frequency << '\n'
       << "FWHM [omega0]        " << peak.fwhm << '\n';
  if (curve.saturated) {
    info << "resonance saturation: |1 - nu^2 R| reached the floor " << config.denominator_floor
         << '\n';
  }
  return code(ExitCode::success);
}

int cmd_design(const RunConfig& config, bool json, std::ostream& out) {
  config.validate();
  const PulseDesign d = design_pulse(config.fiber);
  if (json) {
    nlohmann::json j{{"config", config_to_json(config)},
                     {"optimal_intensity_W_per_m2", d.optimal_intensity},
                     {"optimal_energy_J", d.optimal_energy},
                     {"optimal_power_W", d.optimal_power},
                     {"duration_s", d.duration},
                     {"pump_quanta", d.pump_quanta},
                     {"nu_at_optimum", d.nu_at_optimum}};
    out << j.dump(2) << '\n';
    return code(ExitCode::success);
  }
  out << std::setprecision(6) << "I_opt  [W/m^2]   " << d.optimal_intensity << '\n'
      << "E_opt  [J]       " << d.optimal_energy << '\n'
      << "W_opt  [W]       " << d.optimal_power << '\n'
      << "duration [s]     " << d.duration << '\n'
      << "N0 (at I)        " << d.pump_quanta << '\n'
      << "nu at I_opt      " << std::setprecision(15) << d.nu_at_optimum << '\n';
  return code(ExitCode::success);
}

int cmd_resonance(const RunConfig& config, bool json, std::ostream& out) {
  config.validate();
  const double selected = find_resonance(config.kernel);
  const double pv = find_resonance(KernelVariant::pv);
  const double paper = find_resonance(KernelVariant::paper);
  const DriveParams drive = derive_drive(config.fiber);
  const double n_max = peak_photon_estimate(drive.omega0_over_gamma(), selected);
  if (json) {
    nlohmann::json j{{"config", config_to_json(config)},
                     {"kernel", std::string(to_string(config.kernel))},
                     {"nu0", selected},
                     {"nu0_pv", pv},
                     {"nu0_paper", paper},
                     {"peak_photon_estimate", n_max}};
    out << j.dump(2) << '\n';
    return code(ExitCode::success);
  }
  out << std::setprecision(10) << "nu0 (" << to_string(config.kernel) << ")      " << selected << '\n'
      << "nu0 (pv)          " << pv << '\n'
      << "nu0 (paper)       " << paper << '\n'
      << std::setprecision(6) << "N_max estimate    " << n_max << '\n';
  return code(ExitCode::success);
}

int cmd_sweep(const RunConfig& config, const SweepRequest& request, std::ostream& out,
              std::ostream& err) {
  config.validate();
  SweepSpec spec;
  spec.axes = request.axes;
  spec.base = config.fiber;
  spec.mode = request.mode;
  spec.options = config.spectrum_options();
  spec.grid_points = config.grid_points;
  const SweepTable result = sweep(spec);

  // The derived drive strength gets its own column unless nu is itself swept.
  bool nu_swept = false;
  for (const SweepAxis& axis : spec.axes) nu_swept |= axis.parameter == SweepParameter::nu;

  Table table;
  table.columns = result.parameter_names;
  if (!nu_swept) table.columns.emplace_back("nu");
  for (const char* name : {"photons", "yield", "peak_frequency", "fwhm", "saturated"}) {
    table.columns.emplace_back(name);
  }
  for (const SweepRow& row : result.rows) {
    std::vector<double> values = row.parameters;
    if (!nu_swept) values.push_back(row.nu);
    values.insert(values.end(),
                  {row.photons, row.yield, row.peak_frequency, row.fwhm, row.saturated ? 1.0 : 0.0});
    table.rows.push_back(std::move(values));
  }
  const std::size_t best = result.argmax_photons();
  nlohmann::json summary{{"mode", std::string(to_string(request.mode))},
                         {"rows", result.rows.size()},
                         {"argmax_row", best}};
  emit_table(table, config, summary, out);

  std::ostream& info = config.output.empty() ? err : out;
  info << "argmax row " << best << ":";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    info << ' ' << table.columns[c] << '=' << format_number(table.rows[best][c]);
  }
  info << '\n';
  return code(ExitCode::success);
}

int cmd_verify(const RunConfig& config, bool json, std::ostream& out) {
  const VerificationReport report = run_verification(config, json ? nullptr : &out);
  if (json) {
    out << report_to_json(report).dump(2) << '\n';
  } else {
    print_report(report, out, false);
  }
  return code(report.passed() ? ExitCode::success : ExitCode::verification);
}

int run_command(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return code(ExitCode::validation);
  } catch (const DomainError& e) {
    err << "validation error: " << e.what() << '\n';
    return code(ExitCode::validation);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return code(ExitCode::numerical);
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return code(ExitCode::io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return code(ExitCode::numerical);
  }
}

}  // namespace vpl
