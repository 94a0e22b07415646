#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace satotate {

enum class ErrorKind {
  Input,     // malformed argument (e.g. composite where a prime is required)
  Parse,     // malformed file content
  Data,      // well-formed data that violates an invariant (Hasse bound, ...)
  Domain,    // parameters outside an operation's domain
  Coverage,  // request beyond what a table covers
  Resource,  // memory or size budget exceeded
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure tied to a 1-based line of the offending file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A coefficient outside the Deligne/Hasse envelope at an unramified prime.
class HasseViolation : public Error {
 public:
  explicit HasseViolation(std::uint64_t p)
      : Error(ErrorKind::Data,
              "Hasse bound violated at p = " + std::to_string(p)),
        prime_(p) {}

  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

}  // namespace satotate
