#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lcmb/asymptotics.hpp"
#include "lcmb/bounds.hpp"

namespace lcmb {

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::string detail;  // summary of what was checked, or a finding
  std::string repro;   // first failing tuple
  double seconds = 0;
};

using MultiPrimeFn = std::function<BoundValue(const Progression&, u64, u64)>;

struct VerifyOptions {
  bool quick = false;
  /// Replaced in harness self-tests to inject a faulty bound.
  MultiPrimeFn multi_prime = bound_multi_prime;
  u64 sieve_cap = default_sieve_cap();
  /// Called after each property finishes.
  std::function<void(const PropertyResult&)> on_result;
};

/// Every (u0, r) with 1 <= u0 <= max_u0, min_r <= r <= max_r and gcd(u0, r) = 1,
/// ordered by r then u0.
std::vector<std::pair<u64, u64>> coprime_grid(u64 max_u0, u64 max_r, u64 min_r = 1);

std::vector<PropertyResult> run_verify(const VerifyOptions& options);

}  // namespace lcmb
