#pragma once

#include <stdexcept>
#include <string>

namespace purecensus {

// Invalid mathematical input (wrong residue, non-squarefree argument, ...).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Result or intermediate exceeds the supported integer/sieve range.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Two independent evaluation paths disagree beyond the pinned tolerance.
// Carries both values so the caller can report them.
struct cross_check_error : std::runtime_error {
  cross_check_error(const std::string& what, double first, double second)
      : std::runtime_error(what + " (first=" + std::to_string(first) +
                           ", second=" + std::to_string(second) + ")"),
        first_value(first),
        second_value(second) {}
  double first_value;
  double second_value;
};

}  // namespace purecensus
