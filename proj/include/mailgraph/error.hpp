#pragma once

#include <stdexcept>
#include <string>

namespace mailgraph {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file could not be interpreted. Carries the offending file, and the
/// row/column of the cell when one is known (1-based, 0 = not applicable).
class FormatError : public Error {
 public:
  enum class Kind {
    unreadable,
    dimension_mismatch,
    duplicate_id,
    label_mismatch,
    non_numeric,
    invalid_value,
    missing_column,
    empty,
  };

  FormatError(Kind kind, std::string path, std::size_t row, std::size_t column,
              const std::string& message);

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::string path_;
  std::size_t row_;
  std::size_t column_;
};

const char* to_string(FormatError::Kind kind) noexcept;

/// A message lacked a From header.
class ParseError : public Error {
 public:
  ParseError(std::string source_path, const std::string& message)
      : Error(source_path + ": " + message), source_path_(std::move(source_path)) {}

  const std::string& source_path() const noexcept { return source_path_; }

 private:
  std::string source_path_;
};

/// Inconsistent configuration: alias table refers to unknown ids, bad
/// parameters, and similar problems detected before any processing.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Power iteration did not reach the requested residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double residual, long iterations)
      : Error(message), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

/// A numeric result fell outside its admissible range (strict mode).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace mailgraph
