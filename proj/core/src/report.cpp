#include "hu/report.hpp"

#include <algorithm>

#include "json.hpp"

namespace hu {

int Report::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckRecord& c) { return c.status == "pass"; }));
}

int Report::failed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckRecord& c) { return c.status == "fail"; }));
}

int Report::skipped() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckRecord& c) { return c.status == "skip"; }));
}

void Report::add(std::string name, bool ok, std::string witness, std::int64_t ms) {
  checks.push_back({std::move(name), ok ? "pass" : "fail", std::move(witness), ms});
}

void Report::add_skip(std::string name, std::string reason) {
  checks.push_back({std::move(name), "skip", std::move(reason), 0});
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckRecord& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    if (!c.witness.empty()) jc["witness"] = c.witness;
    jc["ms"] = c.ms;
    arr.push_back(jc);
  }
  j["checks"] = arr;
  j["summary"] = {{"pass", passed()}, {"fail", failed()}, {"skip", skipped()}};
  return j.dump(2) + "\n";
}

}  // namespace hu
