// Pass/fail results with witnesses, shared by every validator.
#pragma once

#include <string>
#include <vector>

namespace tvb {

struct CheckResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> witnesses;
};

struct Report {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }

  /// The named check, created as passing on first use.
  CheckResult& check(const std::string& name) {
    for (auto& c : checks)
      if (c.name == name) return c;
    checks.push_back({name, true, {}});
    return checks.back();
  }

  void fail(const std::string& name, const std::string& witness) {
    auto& c = check(name);
    c.ok = false;
    c.witnesses.push_back(witness);
  }

  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& c : other.checks) {
      auto& mine = check(prefix + c.name);
      mine.ok = mine.ok && c.ok;
      mine.witnesses.insert(mine.witnesses.end(), c.witnesses.begin(), c.witnesses.end());
    }
  }
};

}  // namespace tvb
