#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace verinews {

// Base for every error caused by bad input (files, flags, data). The CLI maps
// these to exit status 2; anything else escaping to main is an internal
// failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CsvParseError : public Error {
 public:
  CsvParseError(std::size_t line, const std::string& what)
      : Error("CSV parse error at line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(std::string column)
      : Error("missing required CSV column '" + column + "'"),
        column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class LabelError : public Error {
 public:
  explicit LabelError(std::string value)
      : Error("unrecognized veracity label '" + value + "'"),
        value_(std::move(value)) {}
  const std::string& value() const noexcept { return value_; }

 private:
  std::string value_;
};

// Document-level problems: missing rating, mixed labeled/unlabeled corpora.
class CorpusError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Training preconditions (empty data, one class only, bad hyperparameters).
class TrainingError : public Error {
 public:
  using Error::Error;
};

class BundleVersionError : public Error {
 public:
  using Error::Error;
};

class BundleIntegrityError : public Error {
 public:
  using Error::Error;
};

class BundleValidationError : public Error {
 public:
  BundleValidationError(std::string field, const std::string& what)
      : Error("invalid bundle field '" + field + "': " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace verinews
