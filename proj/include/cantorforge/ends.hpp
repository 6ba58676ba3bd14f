#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cantorforge/component.hpp"
#include "cantorforge/construction.hpp"

namespace cantorforge {

/// Deterministic choice of a chain link at each size-replacement stage.
///
/// Textual forms:
///   first        handle 1, position 1
///   last         last handle, position 6
///   fixed:H.P    handle ((H-1) mod genus) + 1, position P (1..6)
///   seed:N       a link chosen by hashing (N, stage, parent index)
class ChainHopRule {
 public:
  enum class Kind : std::uint8_t { kFirst, kLast, kFixed, kSeeded };

  static ChainHopRule first() { return ChainHopRule(Kind::kFirst); }
  static ChainHopRule last() { return ChainHopRule(Kind::kLast); }
  static ChainHopRule fixed(std::uint32_t handle, std::uint32_t position);
  static ChainHopRule seeded(std::uint64_t seed);

  /// Throws PolicyError on malformed text.
  static ChainHopRule parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::string to_string() const;

  /// Zero-based link offset among the 6g links of a genus-g parent.
  std::uint64_t select(const Component& parent) const;

  bool operator==(const ChainHopRule&) const = default;

 private:
  explicit ChainHopRule(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::uint32_t handle_ = 1;
  std::uint32_t position_ = 1;
  std::uint64_t seed_ = 0;
};

/// Stay on label j forever once it exists: the dense point x_j.
struct FollowLabel {
  std::uint64_t label = 1;
  bool operator==(const FollowLabel&) const = default;
};

/// Jump to a chain link at every size-replacement stage; follow the
/// index-preserving child otherwise.
struct ChainHop {
  ChainHopRule rule = ChainHopRule::first();
  bool operator==(const ChainHop&) const = default;
};

/// monostate: no declared tail, the branch is known only through its prefix.
using EndTail = std::variant<std::monostate, FollowLabel, ChainHop>;

/// A finitely described infinite branch through the component tree, i.e.
/// one end of the complement (equivalently one point of the Cantor set).
struct EndPolicy {
  std::vector<ComponentId> prefix;  // descending chain from (1,1); may be empty
  EndTail tail;

  std::string describe() const;
};

/// min{k : m(k) >= j}. Throws ResourceError if the stages preceding the
/// label's birth alone exceed the node budget.
std::uint32_t birth_stage(const Construction& engine, std::uint64_t label);

/// x_j: prefix is the ancestor chain of (birth_stage(j), j), tail FOLLOW_LABEL(j).
EndPolicy dense_point(const Construction& engine, std::uint64_t label);

EndPolicy chain_hop_end(std::vector<ComponentId> prefix, ChainHopRule rule);

/// The branch components at stages 1..depth; a prefix longer than depth is
/// validated in full and then cut. Throws PolicyError when the
/// prefix is not a parent/child chain from (1,1), when the tail cannot be
/// reached from the prefix, or when an undeclared tail is asked to extend.
std::vector<Component> trace(const Construction& engine, const EndPolicy& end, std::uint32_t depth);

struct LiminfCertificate {
  enum class Kind : std::uint8_t { kValue, kUnbounded, kUnstable };
  Kind kind = Kind::kUnstable;
  std::uint32_t value = 0;
  /// Stages at which the branch genus equals `value`, checked against the
  /// engine. They may lie beyond the profile depth; the tail rule forces
  /// recurrence after them.
  std::vector<std::uint32_t> witness_stages;
};

struct GenusProfile {
  std::vector<std::uint32_t> genera;  // genera[k - 1] = genus at stage k
  std::uint32_t sup_so_far = 0;
  LiminfCertificate certificate;
};

/// A tail is revealed once the depth reaches the first stage it governs:
/// the birth stage of the followed label, or the first hop stage.
GenusProfile genus_profile(const Construction& engine, const EndPolicy& end, std::uint32_t depth);

/// Minimal sup of the branch genus over cofinal stage subsequences, i.e. the
/// liminf of the branch genus: an upper bound on the local genus at the
/// point. Throws DepthTooShallowError for an unstable certificate.
ExtendedGenus local_genus_upper(const Construction& engine, const EndPolicy& end, std::uint32_t depth);

struct EndClassification {
  enum class Kind : std::uint8_t { kDense, kNonDense };
  Kind kind = Kind::kNonDense;
  std::uint64_t label = 0;  // dense only
  ExtendedGenus genus_upper = ExtendedGenus::finite(2);
  /// Exact local genus as established by the topological argument; empty
  /// means the range [1,2].
  std::optional<ExtendedGenus> exact;
  std::string provenance;

  std::string exact_to_string() const;
};

/// Throws PolicyError for an undeclared tail.
EndClassification classify(const GenusSpec& spec, const EndPolicy& end);

struct DensityReport {
  std::uint32_t depth = 0;
  std::uint64_t components_checked = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// Checks that every component (k, j) with k <= depth lies on the branch of
/// the dense point x_j.
DensityReport density_check(const Construction& engine, std::uint32_t depth);

struct BoundarySurface {
  ComponentId component;
  std::uint32_t genus = 0;
};

/// C_i, the closure of the complement of stage i, described by its boundary:
/// one closed surface per component of stage i.
struct ExhaustionElement {
  std::uint32_t stage = 0;
  std::vector<BoundarySurface> boundary;
};

struct DualityReport {
  std::vector<ExhaustionElement> exhaustion;
  std::string correspondence;

  /// Genus of the boundary surface that the given branch crosses at each
  /// stage: the end's genus sequence read off the complement side.
  std::vector<std::uint32_t> end_genus_sequence(const std::vector<ComponentId>& branch) const;
};

DualityReport ends_as_points(const Construction& engine, std::uint32_t depth);

}  // namespace cantorforge
