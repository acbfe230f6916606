#include "records.hpp"

#include <homfinsler/error.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <ostream>

namespace finsler_cli {

Format format_from_string(std::string_view name) {
  if (name == "table") return Format::table;
  if (name == "csv") return Format::csv;
  if (name == "jsonl") return Format::jsonl;
  homfinsler::fail(homfinsler::ErrorKind::config,
                   fmt::format("unknown format '{}' (expected table, csv or jsonl)", name));
}

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

namespace {

std::string cell_text(const nlohmann::json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
  if (cell.is_number()) return format_number(cell.get<double>());
  if (cell.is_null()) return "";
  return cell.dump();
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void render(std::ostream& out, const Records& records, Format format) {
  switch (format) {
    case Format::csv: {
      for (std::size_t c = 0; c < records.columns.size(); ++c) {
        out << (c ? "," : "") << csv_escape(records.columns[c]);
      }
      out << '\n';
      for (const auto& row : records.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(cell_text(row[c]));
        out << '\n';
      }
      return;
    }
    case Format::jsonl: {
      for (const auto& row : records.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) obj[records.columns[c]] = row[c];
        out << obj.dump() << '\n';
      }
      return;
    }
    case Format::table: break;
  }

  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(records.columns.size());
  for (std::size_t c = 0; c < records.columns.size(); ++c) width[c] = records.columns[c].size();
  for (const auto& row : records.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(cell_text(row[c]));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      line += cells[c];
      if (c + 1 < cells.size()) line += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << line << '\n';
  };
  emit(records.columns);
  for (const auto& line : text) emit(line);
  for (const auto& note : records.notes) out << note << '\n';
}

}  // namespace finsler_cli
