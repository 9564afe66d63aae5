#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace majority {

// Balls are 0-based indices into an Instance.
using Ball = std::uint32_t;
using ColorId = std::uint32_t;

// A precondition of a public operation was violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Malformed user input: instance files, distribution specs, CLI values.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace majority
