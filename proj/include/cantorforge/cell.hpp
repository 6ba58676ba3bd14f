#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cantorforge {

/// A 3-cell, identified combinatorially by the path of child ordinals from
/// the root cell. Two cells are disjoint iff neither path is a prefix of the
/// other; a cell contains another iff its path is a prefix of the other's.
class CellId {
 public:
  CellId() = default;
  explicit CellId(std::vector<std::uint32_t> path) : path_(std::move(path)) {}

  std::span<const std::uint32_t> path() const { return path_; }
  std::size_t depth() const { return path_.size(); }

  /// The sub-cell with the given one-based ordinal.
  CellId child(std::uint32_t ordinal) const;

  bool is_prefix_of(const CellId& other) const;
  bool contains(const CellId& other) const { return is_prefix_of(other); }
  bool disjoint_from(const CellId& other) const {
    return !is_prefix_of(other) && !other.is_prefix_of(*this);
  }

  /// "[]" or "[1,13,2]".
  std::string to_string() const;

  auto operator<=>(const CellId&) const = default;
  bool operator==(const CellId&) const = default;

 private:
  std::vector<std::uint32_t> path_;
};

/// True iff the cells are pairwise disjoint (pairwise prefix-incomparable).
/// O(n log n): after lexicographic sorting, any prefix relation shows up
/// between neighbours.
bool pairwise_disjoint(std::vector<CellId> cells);

/// The dyadic number 2^(-exponent); used for diameter bounds so that no
/// floating point ever enters the construction.
struct DyadicBound {
  std::uint32_t exponent = 0;

  /// Ordered by value: a larger exponent is a smaller bound.
  friend constexpr auto operator<=>(DyadicBound a, DyadicBound b) { return b.exponent <=> a.exponent; }
  friend constexpr bool operator==(DyadicBound a, DyadicBound b) = default;

  constexpr DyadicBound halved() const { return DyadicBound{exponent + 1}; }

  /// "1" or "2^-3".
  std::string to_string() const;
};

}  // namespace cantorforge
