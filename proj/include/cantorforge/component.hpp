#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cantorforge/cell.hpp"
#include "cantorforge/genus_spec.hpp"

namespace cantorforge {

/// M(stage, index). Both coordinates are one-based.
struct ComponentId {
  std::uint32_t stage = 1;
  std::uint64_t index = 1;

  auto operator<=>(const ComponentId&) const = default;
  std::string to_string() const;  // "(k,i)"
};

enum class BirthKind : std::uint8_t {
  kSeed,
  kGenusBump,    // genus replacement raised the genus by one
  kShrink,       // genus already equals its term; boundary collar removed
  kCentralCopy,  // the smaller same-genus copy left by size replacement
  kChainLink,    // one genus-2 link of a handle chain from size replacement
};

std::string_view birth_name(BirthKind kind);

struct Component {
  ComponentId id;
  std::uint32_t genus = 2;
  ExtendedGenus assigned_term = ExtendedGenus::finite(2);
  std::optional<ComponentId> parent;  // empty only at stage 1
  BirthKind birth = BirthKind::kSeed;
  std::uint32_t handle = 0;    // chain links only: 1..parent genus
  std::uint32_t position = 0;  // chain links only: 1..6
  bool unknotted = true;       // structural tag, never computed
  CellId cell;
  std::uint32_t diam_exp = 0;  // diameter bound 2^(-diam_exp)

  bool operator==(const Component&) const = default;
};

/// All components of one stage, indices exactly 1..m in order.
struct StageSet {
  std::uint32_t stage = 1;
  std::vector<Component> components;

  std::uint64_t m() const { return components.size(); }
  const Component& at(std::uint64_t index) const { return components.at(index - 1); }

  bool operator==(const StageSet&) const = default;
};

}  // namespace cantorforge

template <>
struct std::hash<cantorforge::ComponentId> {
  std::size_t operator()(const cantorforge::ComponentId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.index * 0x9E3779B97F4A7C15ULL ^ id.stage);
  }
};
