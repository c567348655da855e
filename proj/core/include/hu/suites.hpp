#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hu/formring.hpp"
#include "hu/groups.hpp"
#include "hu/report.hpp"

namespace hu {

struct SuiteConfig {
  std::string suite;
  FormRingPtr ring;
  std::string ring_echo;  // the spec text or a short description, for the report
  int n = 3;
  std::optional<std::uint64_t> seed;
  int samples = 50;
  std::size_t cap = kDefaultCap;
  bool exact_mode = true;  // false: necessary-condition mode (no enumerated U)
  bool timing = false;     // true: record wall-clock ms per check
};

// Suite names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

// Executes one verification suite. Unknown suite names and config problems
// raise ValidationError; missing seeds on randomized suites likewise.
Report run_suite(const SuiteConfig& cfg);

}  // namespace hu
