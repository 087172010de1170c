#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grs {

/// One named invariant check. A failed check carries a small counterexample.
struct Check {
  std::string name;
  bool passed = true;
  std::vector<std::uint64_t> witness;
  std::string note;
};

struct CheckList {
  std::vector<Check> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  const Check* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  void pass(std::string name) { checks.push_back({std::move(name), true, {}, {}}); }

  void fail(std::string name, std::vector<std::uint64_t> witness, std::string note = {}) {
    checks.push_back({std::move(name), false, std::move(witness), std::move(note)});
  }
};

}  // namespace grs
