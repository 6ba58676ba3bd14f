#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantorforge/construction.hpp"
#include "cantorforge/genus_spec.hpp"

namespace cantorforge {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  // first counterexample when failed
};

struct VerifyReport {
  std::string spec;
  std::uint32_t stages = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* first_failure() const;
};

struct VerifyOptions {
  std::size_t budget = kDefaultBudget;
  std::uint32_t oracle_depth = 7;  // the oracle diff runs to min(stages, oracle_depth)
  std::uint32_t lazy_depth = 7;    // lazy/eager agreement runs to min(stages, lazy_depth)
  FaultInjection fault;
};

/// Builds the stages and runs every construction invariant:
/// ih1_genus, ih1_cells, ih2, count_recurrence, diameter_decay, branching,
/// index_stability, genus_monotone, density, lazy_agreement, oracle_diff.
VerifyReport verify_construction(const GenusSpec& spec, std::uint32_t stages, const VerifyOptions& options = {});

/// Deterministic corpus of `count` specs. The first four are fixed
/// (all 2, all inf, 2 then inf, a mixed cycle); the rest are drawn from
/// `seed` with prefixes of 1..5 entries over {2..6, inf} and constant or
/// cyclic tails.
std::vector<GenusSpec> spec_corpus(std::size_t count, std::uint64_t seed);

}  // namespace cantorforge
