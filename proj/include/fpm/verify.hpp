#pragma once

// Invariant suites behind `fpm verify`. Each check reports the measured
// worst-case quantity next to the limit it is held to.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fpm/scalar.hpp"

namespace fpm {

enum class Suite { sequences, dynamics, evaluator, moments, all };

Suite parse_suite(std::string_view text);
std::string_view to_string(Suite s);

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string relation;  // how measured compares to limit when passing
  double limit = 0.0;
};

std::vector<CheckResult> run_verify(Suite suite, std::uint64_t seed,
                                    Precision precision);

// One line per check; returns true iff every check passed.
bool print_results(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace fpm
