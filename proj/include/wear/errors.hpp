#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wear {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSplit : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidData : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Raised by least squares when the design (intercept column + features) is
/// rank deficient. `collinear_columns` holds feature indices that were found
/// to be linear combinations of the others; -1 stands for the intercept.
class SingularDesign : public Error {
 public:
  SingularDesign(const std::string& what, std::vector<int> collinear_columns)
      : Error(what), collinear_columns_(std::move(collinear_columns)) {}

  const std::vector<int>& collinear_columns() const { return collinear_columns_; }

 private:
  std::vector<int> collinear_columns_;
};

/// Iterative fit diverged or produced non-finite values. The trace holds the
/// objective value of every completed iteration.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::vector<double> trace)
      : Error(what), trace_(std::move(trace)) {}

  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

class ParseError : public Error {
 public:
  // row and column are 1-based; row counts data rows (header excluded).
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what), row_(row), column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace wear
