#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace npp {

using NodeId = std::uint32_t;     // dense index into a TemporalGraph
using LocalId = std::uint32_t;    // dense index into a GraphSnapshot
using Timestamp = std::int64_t;   // integer ticks

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input record; `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace npp
