#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace profbench::csv {

/// RFC 4180 reader: quoted fields may contain separators, quotes ("") and
/// newlines. A UTF-8 byte order mark at the start of input is skipped.
class Reader {
 public:
  Reader(std::istream& in, std::string source_name);

  /// Next record, or nullopt at end of input. Blank lines are skipped.
  std::optional<std::vector<std::string>> next();

  /// Line on which the most recently returned record started.
  std::size_t line() const noexcept { return record_line_; }
  const std::string& source() const noexcept { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t current_line_ = 1;
  std::size_t record_line_ = 0;
  bool at_start_ = true;
};

/// Column lookup built from a header record.
class Header {
 public:
  Header() = default;
  explicit Header(const std::vector<std::string>& names);

  bool has(std::string_view name) const;
  std::optional<std::size_t> index(std::string_view name) const;
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Quotes a field when it contains a separator, quote, or line break.
std::string escape(std::string_view field);

/// Joins already-separated fields into one CSV line (no trailing newline).
std::string join(const std::vector<std::string>& fields);

}  // namespace profbench::csv
