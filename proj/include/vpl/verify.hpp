#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpl/config.hpp"

namespace vpl {

struct CheckResult {
  std::string id;
  std::string title;
  bool gated = true;
  bool passed = false;
  std::string detail;
};

/// Quoted figure beside the value this library computes for it. Never gated.
struct LedgerEntry {
  std::string quantity;
  std::string quoted;
  std::string computed;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<LedgerEntry> ledger;

  bool passed() const;
};

/// Runs the closed-form checks, the time-domain oracle comparisons (sized by config.oracle)
/// and collects the discrepancy ledger. `progress`, when given, receives one line per check.
VerificationReport run_verification(const RunConfig& config, std::ostream* progress = nullptr);

/// Ledger and verdict; `include_checks` adds the per-check table (omit it after streamed progress).
void print_report(const VerificationReport& report, std::ostream& out, bool include_checks = true);
nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace vpl
