#include "profbench/table.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "profbench/csv.hpp"

namespace profbench {
namespace {

std::string markdown_cell(const std::string& text) {
  std::string out;
  for (char ch : text) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out.push_back(ch);
  }
  return out;
}

void render_csv(std::ostringstream& out, const Table& t) {
  out << csv::join(t.columns) << '\n';
  for (const auto& row : t.rows) out << csv::join(row) << '\n';
}

void render_markdown(std::ostringstream& out, const Table& t) {
  if (!t.title.empty()) out << "### " << t.title << "\n\n";
  out << '|';
  for (const auto& c : t.columns) out << ' ' << markdown_cell(c) << " |";
  out << "\n|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << "---|";
  out << '\n';
  for (const auto& row : t.rows) {
    out << '|';
    for (const auto& cell : row) out << ' ' << markdown_cell(cell) << " |";
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i) object[t.columns[i]] = row[i];
    rows.push_back(std::move(object));
  }
  return {{"title", t.title}, {"columns", t.columns}, {"rows", std::move(rows)}};
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view token) {
  if (token == "csv") return OutputFormat::csv;
  if (token == "markdown" || token == "md") return OutputFormat::markdown;
  if (token == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string render(const std::vector<Table>& tables, OutputFormat format) {
  if (format == OutputFormat::json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& t : tables) doc.push_back(to_json(t));
    return (tables.size() == 1 ? doc.front() : doc).dump(2) + "\n";
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) out << '\n';
    if (format == OutputFormat::csv) {
      if (tables.size() > 1 && !tables[i].title.empty()) out << "# " << tables[i].title << '\n';
      render_csv(out, tables[i]);
    } else {
      render_markdown(out, tables[i]);
    }
  }
  return out.str();
}

std::string render(const Table& table, OutputFormat format) { return render(std::vector<Table>{table}, format); }

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

std::string format_weight(double weight) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", weight);
  return buf;
}

}  // namespace profbench
