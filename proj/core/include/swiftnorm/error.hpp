#pragma once

#include <stdexcept>
#include <string>

namespace swiftnorm {

/// Base class for every error raised by the pipeline.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedField : public Error {
 public:
  MalformedField(std::size_t line, const std::string& text)
      : Error("malformed MT field at line " + std::to_string(line) + ": " + text), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyEntity : public Error {
 public:
  EmptyEntity() : Error("entity has no tokens after cleaning") {}
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("no record survived cleaning") {}
};

class InvalidSelector : public Error {
 public:
  using Error::Error;
};

class RowMismatch : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("label vectors differ in length: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

/// Input file problems; the CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace swiftnorm
