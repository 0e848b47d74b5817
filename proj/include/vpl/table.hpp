#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpl/config.hpp"

namespace vpl {

/// Numeric table written as CSV (header row, 9 significant digits, scientific) or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);

/// {"config": ..., "summary": ..., "columns": [...], "rows": [[...], ...]}
nlohmann::json table_document(const Table& table, const RunConfig& config,
                              const nlohmann::json& summary);

/// Writes to config.output (or `fallback` when no path is set) in config.format.
/// Throws std::ios_base::failure when the file cannot be written.
void emit_table(const Table& table, const RunConfig& config, const nlohmann::json& summary,
                std::ostream& fallback);

}  // namespace vpl
