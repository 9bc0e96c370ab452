#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace provsum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A log or corpus record could not be parsed. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

/// An event timestamp went backwards by more than the configured tolerance.
class OrderingError : public Error {
 public:
  OrderingError(std::int64_t seq, std::int64_t timestamp, std::int64_t previous)
      : Error("timestamp regression at seq " + std::to_string(seq) + ": " +
              std::to_string(timestamp) + " < " + std::to_string(previous)),
        seq_(seq) {}

  std::int64_t seq() const noexcept { return seq_; }

 private:
  std::int64_t seq_;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

class TemplateError : public Error {
 public:
  TemplateError(std::string message, std::size_t position)
      : Error(std::move(message)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace provsum
