#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symdesign {

struct VerifyOptions {
  int n_min = 3;
  int n_max = 8;
  int trials = 1000;
  std::uint64_t seed = 42;
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // worst residuals etc., canonically formatted
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed = false;
  std::string text;  // deterministic rendering, one line per check
};

/// The self-check suite behind `symdesign verify`: group axioms,
/// representation homomorphisms, subgroup counts and lattice structure,
/// projection range/fixing/idempotence/linearity, blended projections,
/// the split identity, and pipeline realizability.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace symdesign
