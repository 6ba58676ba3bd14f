#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantorforge/cell.hpp"
#include "cantorforge/component.hpp"
#include "cantorforge/construction.hpp"

namespace cantorforge {

/// Cell of each component of one stage, position index - 1.
using CellTable = std::vector<CellId>;

/// Recomputes the cell of every component of `stage` from its birth kind and
/// the previous stage's table: stage 1 gets the root cell, genus-replacement
/// children inherit their parent's cell, size-replacement children refine it
/// by their sibling ordinal (central copy 1, links 2..1+6g).
CellTable assign_cells(const StageSet& stage, const CellTable& prev_cells);

DyadicBound diameter_bound(const Component& c);

struct LinkSlot {
  std::uint32_t handle = 1;
  std::uint32_t position = 1;
  bool operator==(const LinkSlot&) const = default;
};

/// Which foot of the handle a chain end is tied to on the central copy.
struct Attachment {
  LinkSlot slot;
  std::uint32_t foot;  // 1 or 2
};

/// How the chain links produced by size-replacing a component sit inside it:
/// one open chain of 6 links per handle, consecutive links linked, the two
/// end links tied to the central copy's handle feet. Links in different
/// handles are never linked.
struct LinkingLayout {
  std::uint32_t handle_count = 0;
  std::uint32_t chain_length = kChainLength;
  std::vector<std::pair<LinkSlot, LinkSlot>> adjacencies;
  std::vector<Attachment> attachments;

  std::size_t slot_count() const { return std::size_t{handle_count} * chain_length; }
  bool adjacent(LinkSlot a, LinkSlot b) const;
  /// Ordinal of the slot's link among the size-replacement children.
  std::uint32_t sibling_ordinal(LinkSlot s) const { return 1 + (s.handle - 1) * chain_length + s.position; }
};

/// Layout of the children of `c`, which must belong to an even stage.
LinkingLayout linking_layout(const Component& c);

struct TamenessRow {
  std::uint32_t stage = 0;
  std::uint64_t components = 0;
  std::uint64_t distinct_cells = 0;
  std::size_t min_cell_depth = 0;
  std::size_t max_cell_depth = 0;
  bool refined = false;  // cells were subdivided entering this stage
  DyadicBound max_diameter;
};

/// Per-stage comparison of cell refinement against component diameter bounds.
/// Cells have no diameter, so nothing here implies tameness.
struct TamenessReport {
  std::vector<TamenessRow> rows;
  std::string note = "no cell-diameter decay modeled";
};

TamenessReport tameness_caveat(const GenusSpec& spec, std::uint32_t depth,
                               std::size_t budget = kDefaultBudget);

}  // namespace cantorforge
