#include "python_literal.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace profbench::detail {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  nlohmann::json parse_document() {
    auto value = parse_value();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PythonLiteralError(what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume_word(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t after = pos_ + word.size();
    if (after < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_')) {
      return false;
    }
    pos_ = after;
    return true;
  }

  nlohmann::json parse_value() {
    skip_space();
    const char ch = peek();
    if (ch == '{') return parse_dict();
    if (ch == '[') return parse_sequence('[', ']');
    if (ch == '(') return parse_sequence('(', ')');
    if (ch == '\'' || ch == '"') return parse_string();
    if (consume_word("None")) return nullptr;
    if (consume_word("True")) return true;
    if (consume_word("False")) return false;
    if (ch == '-' || ch == '+' || ch == '.' || std::isdigit(static_cast<unsigned char>(ch))) return parse_number();
    fail("unexpected character");
  }

  nlohmann::json parse_dict() {
    ++pos_;
    nlohmann::json object = nlohmann::json::object();
    while (true) {
      skip_space();
      if (peek() == '}') {
        ++pos_;
        return object;
      }
      auto key = parse_value();
      skip_space();
      if (peek() != ':') fail("expected ':'");
      ++pos_;
      auto value = parse_value();
      object[key.is_string() ? key.get<std::string>() : key.dump()] = std::move(value);
      skip_space();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != '}') {
        fail("expected ',' or '}'");
      }
    }
  }

  nlohmann::json parse_sequence(char open, char close) {
    (void)open;
    ++pos_;
    nlohmann::json array = nlohmann::json::array();
    while (true) {
      skip_space();
      if (peek() == close) {
        ++pos_;
        return array;
      }
      array.push_back(parse_value());
      skip_space();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != close) {
        fail(std::string("expected ',' or '") + close + "'");
      }
    }
  }

  static void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  unsigned long parse_hex(std::size_t digits) {
    if (pos_ + digits > text_.size()) fail("truncated escape");
    unsigned long value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + pos_ + digits, value, 16);
    if (ec != std::errc{} || ptr != text_.data() + pos_ + digits) fail("bad hex escape");
    pos_ += digits;
    return value;
  }

  nlohmann::json parse_string() {
    const char quote = text_[pos_++];
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      const char ch = text_[pos_++];
      if (ch == quote) break;
      if (ch != '\\') {
        out.push_back(ch);
        continue;
      }
      if (pos_ >= text_.size()) fail("unterminated escape");
      const char esc = text_[pos_++];
      switch (esc) {
        case '\\': out.push_back('\\'); break;
        case '\'': out.push_back('\''); break;
        case '"': out.push_back('"'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '0': out.push_back('\0'); break;
        case 'x': append_utf8(out, parse_hex(2)); break;
        case 'u': append_utf8(out, parse_hex(4)); break;
        case 'U': append_utf8(out, parse_hex(8)); break;
        default:
          out.push_back('\\');
          out.push_back(esc);
      }
    }
    return out;
  }

  nlohmann::json parse_number() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    bool is_float = false;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else if (ch == '.' || ch == 'e' || ch == 'E') {
        is_float = true;
        ++pos_;
        if ((ch == 'e' || ch == 'E') && (peek() == '+' || peek() == '-')) ++pos_;
      } else {
        break;
      }
    }
    std::string_view token = text_.substr(start, pos_ - start);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (!is_float) {
      long long value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec == std::errc{} && ptr == token.data() + token.size()) return value;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) fail("bad number");
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

nlohmann::json parse_python_literal(std::string_view text) { return Parser(text).parse_document(); }

}  // namespace profbench::detail
