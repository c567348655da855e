#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hu {

struct CheckRecord {
  std::string name;
  std::string status;   // "pass" | "fail" | "skip"
  std::string witness;  // serialized payload for failures/skips; may be empty
  std::int64_t ms = 0;
};

/// Machine-readable suite outcome. Serializes to JSON with lexicographically
/// sorted keys so reports diff cleanly; timing values are zeroed unless the
/// caller opts in, keeping reports byte-identical for a fixed (config, seed).
struct Report {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  int skipped() const;
  int exit_code() const { return failed() == 0 ? 0 : 1; }

  void add(std::string name, bool ok, std::string witness = "", std::int64_t ms = 0);
  void add_skip(std::string name, std::string reason);

  std::string to_json() const;
};

}  // namespace hu
