#include "cantorforge/geometry.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "cantorforge/errors.hpp"

namespace cantorforge {

CellTable assign_cells(const StageSet& stage, const CellTable& prev_cells) {
  CellTable cells;
  cells.reserve(stage.components.size());
  for (const auto& c : stage.components) {
    switch (c.birth) {
      case BirthKind::kSeed:
        cells.emplace_back();
        break;
      case BirthKind::kGenusBump:
      case BirthKind::kShrink:
        cells.push_back(prev_cells.at(c.parent->index - 1));
        break;
      case BirthKind::kCentralCopy:
        cells.push_back(prev_cells.at(c.parent->index - 1).child(1));
        break;
      case BirthKind::kChainLink:
        cells.push_back(prev_cells.at(c.parent->index - 1).child(1 + (c.handle - 1) * kChainLength + c.position));
        break;
    }
  }
  return cells;
}

DyadicBound diameter_bound(const Component& c) { return DyadicBound{c.diam_exp}; }

bool LinkingLayout::adjacent(LinkSlot a, LinkSlot b) const {
  return std::any_of(adjacencies.begin(), adjacencies.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

LinkingLayout linking_layout(const Component& c) {
  if (c.id.stage % 2 != 0) {
    throw StageParityError("linking layout describes size replacement, which needs an even stage; got " +
                           c.id.to_string());
  }
  LinkingLayout layout;
  layout.handle_count = c.genus;
  for (std::uint32_t h = 1; h <= c.genus; ++h) {
    for (std::uint32_t p = 1; p < kChainLength; ++p) {
      layout.adjacencies.push_back({{h, p}, {h, p + 1}});
    }
    layout.attachments.push_back({{h, 1}, 1});
    layout.attachments.push_back({{h, kChainLength}, 2});
  }
  return layout;
}

TamenessReport tameness_caveat(const GenusSpec& spec, std::uint32_t depth, std::size_t budget) {
  TamenessReport report;
  std::size_t prev_distinct = 0;
  for (const auto& stage : build_stages(spec, depth, budget)) {
    TamenessRow row;
    row.stage = stage.stage;
    row.components = stage.m();
    std::set<CellId> distinct;
    row.min_cell_depth = std::numeric_limits<std::size_t>::max();
    row.max_diameter = diameter_bound(stage.components.front());
    for (const auto& c : stage.components) {
      distinct.insert(c.cell);
      row.min_cell_depth = std::min(row.min_cell_depth, c.cell.depth());
      row.max_cell_depth = std::max(row.max_cell_depth, c.cell.depth());
      row.max_diameter = std::max(row.max_diameter, diameter_bound(c));
    }
    row.distinct_cells = distinct.size();
    row.refined = stage.stage > 1 && distinct.size() != prev_distinct;
    prev_distinct = distinct.size();
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace cantorforge
