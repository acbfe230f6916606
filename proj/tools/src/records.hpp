#pragma once

// Tabular results rendered as an aligned table, CSV or JSON lines.

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace finsler_cli {

enum class Format { table, csv, jsonl };

Format format_from_string(std::string_view name);

/// %.17g, so every printed double reparses to the same value.
std::string format_number(double x);

struct Records {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  std::vector<std::string> notes;  // printed under the table only

  void add(std::vector<nlohmann::json> row) { rows.push_back(std::move(row)); }
};

void render(std::ostream& out, const Records& records, Format format);

}  // namespace finsler_cli
