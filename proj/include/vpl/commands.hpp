#pragma once

// Subcommands of the `vpl` tool. Each returns a process exit status.

#include <functional>
#include <ostream>
#include <string_view>
#include <vector>

#include "vpl/config.hpp"
#include "vpl/spectrum.hpp"

namespace vpl {

enum class ExitCode : int {
  success = 0,
  validation = 1,
  numerical = 2,
  verification = 3,
  io = 4,
};

struct SweepRequest {
  std::vector<SweepAxis> axes;
  EmissionMode mode = EmissionMode::full;
};

/// "name:from:to:steps", e.g. "nu:0.5:5:10".
SweepAxis parse_sweep_axis(std::string_view text);

// Tables go to config.output when set, otherwise to `out`; human-readable summaries then go to `err`.
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_design(const RunConfig& config, bool json, std::ostream& out);
int cmd_resonance(const RunConfig& config, bool json, std::ostream& out);
int cmd_sweep(const RunConfig& config, const SweepRequest& request, std::ostream& out,
              std::ostream& err);
int cmd_verify(const RunConfig& config, bool json, std::ostream& out);

/// Runs `command`, mapping exceptions onto the exit-status contract.
int run_command(const std::function<int()>& command, std::ostream& err);

}  // namespace vpl
