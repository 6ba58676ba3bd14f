#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cantorforge/component.hpp"
#include "cantorforge/genus_spec.hpp"

namespace cantorforge::io {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kLabelingNote =
    "chain links numbered by (parent index, handle, position), after the central copies";

/// Serialized construction. Canonical JSON form:
///
///   {"spec":..., "depth":k,
///    "stages":[{"stage":k,"m":m,"components":[
///       {"index":i,"genus":g,"birth":"chain_link","handle":h,"position":p,
///        "parent_index":i or null,"cell_path":[...],"diam_exp":e,
///        "assigned_term":n or "inf"}, ...]}, ...],
///    "metadata":{"tool_version":...,"labeling":...}}
///
/// "handle"/"position" appear only on chain links. No floating point values;
/// the diameter bound is 2^(-diam_exp).
struct TreeDocument {
  std::string spec;
  std::uint32_t depth = 0;
  std::vector<StageSet> stages;
  std::string tool_version{kToolVersion};
  std::string labeling{kLabelingNote};
};

TreeDocument make_document(const GenusSpec& spec, std::vector<StageSet> stages);

/// Compact canonical JSON followed by a newline.
std::string to_json(const TreeDocument& doc);

/// Throws cantorforge::Error on malformed input.
TreeDocument document_from_json(std::string_view text);

/// Graphviz digraph: nodes "(k,i):g" in (stage, index) order, parent->child
/// edges, chain links dashed, and the branch of the dense point for
/// `highlight_label` drawn in red.
std::string to_dot(std::span<const StageSet> stages, std::optional<std::uint64_t> highlight_label = {});

}  // namespace cantorforge::io
