#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace profbench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: carries the source, 1-based line and offending field.
class LoadError : public Error {
 public:
  LoadError(std::string source, std::size_t line, std::string field,
            const std::string& reason);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

/// Well-formed input whose records contradict each other.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Similarity is undefined for the given operands (for example a zero vector).
class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

}  // namespace profbench
