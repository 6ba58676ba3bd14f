#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cantorforge/component.hpp"
#include "cantorforge/genus_spec.hpp"

/// Deliberately naive, eager re-implementation of the stage construction.
/// It shares nothing with the engine except GenusSpec and exists to be diffed
/// against it.
namespace cantorforge::oracle {

inline constexpr std::size_t kDefaultNodeLimit = 100'000;

struct NaiveNode {
  std::uint64_t label = 0;
  std::uint32_t genus = 0;
  std::string birth;  // same vocabulary as birth_name()
  std::uint32_t handle = 0;
  std::uint32_t position = 0;
  std::uint64_t parent_label = 0;  // 0 at stage 1
  std::vector<std::uint32_t> cell;
  std::uint32_t halvings = 0;
  std::string term;  // rendered n_label
  std::vector<std::uint64_t> children;  // labels in the next stage
};

struct NaiveTree {
  std::vector<std::vector<NaiveNode>> stages;  // stages[k-1][i-1]
};

/// Throws ResourceError when the tree would exceed node_limit nodes.
NaiveTree naive_build(const GenusSpec& spec, std::uint32_t depth,
                      std::size_t node_limit = kDefaultNodeLimit);

struct Discrepancy {
  std::uint32_t stage = 0;
  std::uint64_t index = 0;  // 0 for stage-level fields
  std::string field;
  std::string oracle_value;
  std::string engine_value;

  std::string to_string() const;
};

/// Field-by-field comparison in stage, then index order. Empty iff the trees
/// agree exactly.
std::vector<Discrepancy> diff(const NaiveTree& oracle, std::span<const StageSet> engine);

}  // namespace cantorforge::oracle
