#pragma once

#include <stdexcept>
#include <string_view>

#include <json.hpp>

namespace profbench::detail {

class PythonLiteralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a Python literal (dict, list, tuple, str, int, float, None, True,
/// False) as found in exported metadata columns. Tuples become arrays.
nlohmann::json parse_python_literal(std::string_view text);

}  // namespace profbench::detail
