#include "profbench/csv.hpp"
#include "profbench/errors.hpp"

#include <utility>

namespace profbench::csv {

Reader::Reader(std::istream& in, std::string source_name)
    : in_(in), source_(std::move(source_name)) {}

std::optional<std::vector<std::string>> Reader::next() {
  if (at_start_) {
    at_start_ = false;
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        throw LoadError(source_, current_line_, "-", "invalid byte order mark");
      }
    }
  }

  while (true) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    bool any = false;
    record_line_ = current_line_;

    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
      any = true;
      const char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
          }
        } else {
          if (ch == '\n') ++current_line_;
          field.push_back(ch);
        }
        continue;
      }
      if (ch == '"') {
        if (!field.empty() || field_was_quoted) {
          throw LoadError(source_, record_line_, std::to_string(fields.size() + 1),
                          "unexpected quote inside unquoted field");
        }
        quoted = true;
        field_was_quoted = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
      } else if (ch == '\r') {
        if (in_.peek() == '\n') continue;
        fields.push_back(std::move(field));
        ++current_line_;
        break;
      } else if (ch == '\n') {
        fields.push_back(std::move(field));
        ++current_line_;
        break;
      } else {
        if (field_was_quoted) {
          throw LoadError(source_, record_line_, std::to_string(fields.size() + 1),
                          "characters after closing quote");
        }
        field.push_back(ch);
      }
    }

    if (quoted) {
      throw LoadError(source_, record_line_, std::to_string(fields.size() + 1),
                      "unterminated quoted field");
    }
    if (!any) return std::nullopt;
    if (c == std::char_traits<char>::eof()) fields.push_back(std::move(field));

    const bool blank = fields.size() == 1 && fields.front().empty() && !field_was_quoted;
    if (blank) {
      if (c == std::char_traits<char>::eof()) return std::nullopt;
      continue;
    }
    return fields;
  }
}

Header::Header(const std::vector<std::string>& names) : names_(names) {
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

bool Header::has(std::string_view name) const { return index(name).has_value(); }

std::optional<std::size_t> Header::index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line.push_back(',');
    line += escape(fields[i]);
  }
  return line;
}

}  // namespace profbench::csv
