#pragma once

#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "cantorforge/component.hpp"
#include "cantorforge/genus_spec.hpp"

namespace cantorforge {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Links per handle in a size replacement.
inline constexpr std::uint32_t kChainLength = 6;

/// Deliberate construction faults. Only the differential tests and
/// `verify --inject-fault` use this; a default-constructed value is the
/// correct construction.
struct FaultInjection {
  bool flip_parity = false;
  std::uint32_t chain_length = kChainLength;

  bool active() const { return flip_parity || chain_length != kChainLength; }
};

/// Stage 1: one unknotted genus-2 handlebody labelled 1.
StageSet seed_stage(const GenusSpec& spec);

/// Replacement applied to a component of an odd stage k, producing its
/// stage-(k+1) successor with the same index: genus + 1 while the genus is
/// below its term, otherwise a same-genus shrink.
Component genus_replace(const Component& c, const GenusSpec& spec);

/// Replacement applied to a component of an even stage k: the central copy
/// (same index and genus) followed by 6g genus-2 chain links numbered
/// consecutively from next_free_index in (handle, position) order. Every
/// child halves the diameter bound.
std::vector<Component> size_replace(const Component& c, std::uint64_t next_free_index,
                                    const GenusSpec& spec);

/// Throws InvariantError unless every component has genus >= 2, genus <= its
/// term, indices 1..m and parents in the previous stage.
void check_inductive_hypotheses(const StageSet& stage, const GenusSpec& spec);

StageSet build_stage(const StageSet& prev, const GenusSpec& spec, const FaultInjection& fault = {});

/// Stages 1..depth. Throws ResourceError once the total number of
/// materialized components would exceed the budget.
std::vector<StageSet> build_stages(const GenusSpec& spec, std::uint32_t depth,
                                   std::size_t budget = kDefaultBudget,
                                   const FaultInjection& fault = {});

/// Lazy access to the construction. Stage sizes are computed from closed-form
/// cohort sums, so a component can be located without materializing its
/// stage; every evaluated component is memoized by id.
///
/// Thread-safe: any number of threads may query concurrently. All writers of
/// a memo slot compute identical values, and the first insertion wins.
class Construction {
 public:
  explicit Construction(GenusSpec spec, std::size_t budget = kDefaultBudget);

  Construction(const Construction&) = delete;
  Construction& operator=(const Construction&) = delete;

  const GenusSpec& spec() const { return spec_; }
  std::size_t budget() const { return budget_; }

  /// m(stage). Throws ResourceError if the count leaves the 64-bit range.
  std::uint64_t stage_size(std::uint32_t stage) const;

  /// Genus of M(stage, index) without building the component.
  std::uint32_t genus_at(ComponentId id) const;

  /// min{k : m(k) >= label}.
  std::uint32_t label_birth_stage(std::uint64_t label) const;

  /// Throws NotFoundError if the id does not exist.
  Component component_at(ComponentId id) const;

  /// Components of stage id.stage + 1 whose parent is id, in index order.
  std::vector<Component> children_of(ComponentId id) const;

  std::size_t memo_size() const;

 private:
  std::uint64_t stage_size_locked(std::uint32_t stage) const;
  std::uint32_t birth_stage_locked(std::uint64_t label) const;
  // Sum of genus(stage, i) over 1 <= i <= upto.
  std::uint64_t genus_sum_locked(std::uint32_t stage, std::uint64_t upto) const;
  // First chain-link index emitted by (stage, index) into stage + 1.
  std::uint64_t first_link_index(std::uint32_t stage, std::uint64_t index) const;

  struct LinkOrigin {
    std::uint64_t parent_index;
    std::uint64_t offset;  // zero-based within the parent's links
  };
  LinkOrigin locate_link(std::uint32_t stage, std::uint64_t index) const;

  Component remember(Component c) const;

  GenusSpec spec_;
  std::size_t budget_;

  mutable std::mutex counts_mutex_;
  mutable std::vector<std::uint64_t> counts_;  // counts_[k - 1] = m(k)

  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<ComponentId, Component> memo_;
};

}  // namespace cantorforge
