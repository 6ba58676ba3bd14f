#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cantorforge {

/// A genus value that is either a finite integer >= 2 or infinity.
/// Ordered 2 < 3 < ... < infinity.
class ExtendedGenus {
 public:
  static constexpr std::uint64_t kMaxFinite = std::numeric_limits<std::uint32_t>::max();

  /// Throws SpecValueError when value < 2 or value > kMaxFinite.
  static ExtendedGenus finite(std::uint64_t value);
  static constexpr ExtendedGenus infinity() { return ExtendedGenus(kInfinityRaw); }

  constexpr bool is_infinite() const { return raw_ == kInfinityRaw; }
  constexpr bool is_finite() const { return !is_infinite(); }

  /// Finite value; undefined for infinity (checked by assertion in debug builds).
  std::uint32_t value() const;

  /// min(this, cap) for a finite cap.
  constexpr std::uint64_t capped(std::uint64_t cap) const { return raw_ < cap ? raw_ : cap; }

  /// Lowercase "inf" or the decimal value.
  std::string to_string() const;

  constexpr auto operator<=>(const ExtendedGenus&) const = default;
  constexpr bool operator==(const ExtendedGenus&) const = default;

  friend constexpr bool operator==(const ExtendedGenus& g, std::uint64_t v) { return g.raw_ == v; }
  friend constexpr auto operator<=>(const ExtendedGenus& g, std::uint64_t v) { return g.raw_ <=> v; }

 private:
  static constexpr std::uint64_t kInfinityRaw = std::numeric_limits<std::uint64_t>::max();
  constexpr explicit ExtendedGenus(std::uint64_t raw) : raw_(raw) {}
  std::uint64_t raw_;
};

struct ConstantTail {
  ExtendedGenus value;
  bool operator==(const ConstantTail&) const = default;
};

struct CycleTail {
  std::vector<ExtendedGenus> values;  // nonempty
  bool operator==(const CycleTail&) const = default;
};

using TailRule = std::variant<ConstantTail, CycleTail>;

/// The genus sequence (n_1, n_2, ...): a finite prefix followed by a
/// constant or cyclic tail. Immutable after construction.
///
/// Tail indexing: for i > prefix length, t = i - prefix_length and the
/// cycle element is ((t - 1) mod L) + 1, one-based.
class GenusSpec {
 public:
  GenusSpec(std::vector<ExtendedGenus> prefix, TailRule tail);

  const std::vector<ExtendedGenus>& prefix() const { return prefix_; }
  const TailRule& tail() const { return tail_; }

  /// n_i for i >= 1. Throws IndexError for i < 1.
  ExtendedGenus entry(std::uint64_t i) const;

  /// Sum of min(n_i, cap) over lo <= i <= hi (one-based, inclusive).
  /// Empty when hi < lo. Runs in O(prefix length + cycle length).
  /// Throws ResourceError if the sum overflows 64 bits.
  std::uint64_t capped_sum(std::uint64_t lo, std::uint64_t hi, std::uint64_t cap) const;

  /// Canonical rendering. The default tail const:2 is omitted.
  std::string render() const;

  bool operator==(const GenusSpec&) const = default;

 private:
  // Sum of min(n_i, cap) for prefix_length < i <= x.
  std::uint64_t tail_sum_through(std::uint64_t x, std::uint64_t cap) const;

  std::vector<ExtendedGenus> prefix_;
  TailRule tail_;
};

/// Grammar: entry ("," entry)* (";" tailrule)?
///   entry    := integer >= 2 | "inf"
///   tailrule := "const:" entry | "cycle:" entry ("," entry)*
/// Omitted tail means const:2. Surrounding whitespace on tokens is ignored.
GenusSpec parse_spec(std::string_view text);

}  // namespace cantorforge
