#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace domwb {

/// Default cap on the number of elements any single enumeration may produce.
inline constexpr std::size_t kDefaultBudget = 4096;

/// Enumeration budget, overridable through the DOMWB_BUDGET environment
/// variable. Unparsable or zero values fall back to the default.
inline std::size_t default_budget() {
  const char* env = std::getenv("DOMWB_BUDGET");
  if (env == nullptr) return kDefaultBudget;
  try {
    const unsigned long long v = std::stoull(env);
    return v == 0 ? kDefaultBudget : static_cast<std::size_t>(v);
  } catch (...) {
    return kDefaultBudget;
  }
}

}  // namespace domwb
