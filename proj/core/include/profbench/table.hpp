#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace profbench {

enum class OutputFormat { csv, markdown, json };

std::optional<OutputFormat> parse_output_format(std::string_view token);

/// A titled grid of preformatted cells, rendered as CSV, Markdown or JSON.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Several tables render one after another (CSV/Markdown) or as a JSON array.
std::string render(const std::vector<Table>& tables, OutputFormat format);
std::string render(const Table& table, OutputFormat format);

/// Fraction in [0, 1] as a percentage with two decimals, without the % sign.
std::string format_percent(double fraction);
/// %.10g
std::string format_weight(double weight);

}  // namespace profbench
