#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fequiv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two objects that must live on the same grid do not.
class DomainMismatchError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments or configuration (ranges, sizes, non-finite values).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// A sample is too small for the requested statistic.
class UndersizedSampleError : public Error {
 public:
  using Error::Error;
};

/// Both extremal-set estimates are empty.
class InvalidExtremalSetError : public Error {
 public:
  using Error::Error;
};

/// A variance estimate vanishes where a ratio or logarithm needs it.
class DegenerateVarianceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the file name and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace fequiv
