#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace endo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input: unknown generators, bad indices, wrong alphabet.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The operation's hypotheses are not met (e.g. a non-ascending presentation).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (coset count, tree size, recursion depth) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A contraction constant turned out to be too small for a word.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// DSL syntax or semantic error with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace endo
