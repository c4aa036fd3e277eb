#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vmpt {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a domain invariant (bad coordinate, negative capacity...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Generator configuration is unusable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A document line is not valid JSON or lacks required fields.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Document-level shape problems: missing/duplicate header, unknown line type,
// unsupported format_version.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Records parse individually but contradict each other (duplicate sample,
// sample outside its VM lifetime, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(std::uint64_t offset, const std::string& what)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  explicit IoError(const std::string& what) : Error(what), offset_(0) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace vmpt
