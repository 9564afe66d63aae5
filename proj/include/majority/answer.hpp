#pragma once

#include <cstddef>
#include <iosfwd>

#include "majority/types.hpp"

namespace majority {

/// Outcome of a majority query.
///
/// A majority answer names one ball of the majority color and the exact
/// number of balls sharing that color (strictly more than floor(n/2)).
struct Answer {
  enum class Kind { Majority, NoMajority };

  Kind kind = Kind::NoMajority;
  Ball witness = 0;
  std::size_t multiplicity = 0;

  static Answer majority(Ball witness, std::size_t multiplicity) {
    return Answer{Kind::Majority, witness, multiplicity};
  }
  static Answer none() { return Answer{}; }

  bool is_majority() const { return kind == Kind::Majority; }

  friend bool operator==(const Answer&, const Answer&) = default;
};

std::ostream& operator<<(std::ostream& os, const Answer& answer);

}  // namespace majority
