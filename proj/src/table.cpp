#include "vpl/table.hpp"

#include <cstdio>
#include <fstream>
#include <ios>

namespace vpl {

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.8e", value);
  return buffer;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

nlohmann::json table_document(const Table& table, const RunConfig& config,
                              const nlohmann::json& summary) {
  nlohmann::json doc;
  doc["config"] = config_to_json(config);
  doc["summary"] = summary;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  return doc;
}

void emit_table(const Table& table, const RunConfig& config, const nlohmann::json& summary,
                std::ostream& fallback) {
  const auto write = [&](std::ostream& out) {
    if (config.format == OutputFormat::json) {
      out << table_document(table, config, summary).dump(2) << '\n';
    } else {
      write_csv(out, table);
    }
  };
  if (config.output.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open output file " + config.output);
  write(file);
  file.flush();
  if (!file) throw std::ios_base::failure("failed writing output file " + config.output);
}

}  // namespace vpl
