#include "cantorforge/oracle.hpp"

#include "cantorforge/errors.hpp"

namespace cantorforge::oracle {

namespace {

std::string render_path(const std::vector<std::uint32_t>& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + std::to_string(path[i]);
  return s + "]";
}

std::vector<NaiveNode> next_stage(std::uint32_t k, std::vector<NaiveNode>& current, const GenusSpec& spec) {
  std::vector<NaiveNode> out;
  if (k % 2 == 1) {
    // odd stage: handles are added one at a time up to the term
    for (auto& node : current) {
      NaiveNode child;
      child.label = node.label;
      const ExtendedGenus n = spec.entry(node.label);
      if (n > node.genus) {
        child.genus = node.genus + 1;
        child.birth = "genus_bump";
      } else {
        child.genus = node.genus;
        child.birth = "shrink";
      }
      child.parent_label = node.label;
      child.cell = node.cell;
      child.halvings = node.halvings;
      child.term = n.to_string();
      node.children.push_back(child.label);
      out.push_back(child);
    }
    return out;
  }

  // even stage: smaller copy of each, plus 6 links along every handle
  std::vector<NaiveNode> links;
  std::uint64_t next_label = current.size() + 1;
  for (auto& node : current) {
    NaiveNode copy;
    copy.label = node.label;
    copy.genus = node.genus;
    copy.birth = "central_copy";
    copy.parent_label = node.label;
    copy.cell = node.cell;
    copy.cell.push_back(1);
    copy.halvings = node.halvings + 1;
    copy.term = spec.entry(node.label).to_string();
    node.children.push_back(copy.label);
    out.push_back(copy);

    std::uint32_t ordinal = 1;
    for (std::uint32_t handle = 1; handle <= node.genus; ++handle) {
      for (std::uint32_t pos = 1; pos <= 6; ++pos) {
        NaiveNode link;
        link.label = next_label++;
        link.genus = 2;
        link.birth = "chain_link";
        link.handle = handle;
        link.position = pos;
        link.parent_label = node.label;
        link.cell = node.cell;
        link.cell.push_back(++ordinal);
        link.halvings = node.halvings + 1;
        link.term = spec.entry(link.label).to_string();
        node.children.push_back(link.label);
        links.push_back(link);
      }
    }
  }
  for (auto& link : links) out.push_back(link);
  return out;
}

}  // namespace

NaiveTree naive_build(const GenusSpec& spec, std::uint32_t depth, std::size_t node_limit) {
  NaiveTree tree;
  if (depth == 0) return tree;
  NaiveNode root;
  root.label = 1;
  root.genus = 2;
  root.birth = "seed";
  root.term = spec.entry(1).to_string();
  tree.stages.push_back({root});
  std::size_t nodes = 1;
  for (std::uint32_t k = 1; k < depth; ++k) {
    auto stage = next_stage(k, tree.stages.back(), spec);
    nodes += stage.size();
    if (nodes > node_limit) {
      throw ResourceError("oracle tree exceeds " + std::to_string(node_limit) + " nodes at stage " +
                          std::to_string(k + 1));
    }
    tree.stages.push_back(std::move(stage));
  }
  return tree;
}

std::string Discrepancy::to_string() const {
  std::string where = "stage " + std::to_string(stage);
  if (index) where += " index " + std::to_string(index);
  return where + ": " + field + " oracle=" + oracle_value + " engine=" + engine_value;
}

std::vector<Discrepancy> diff(const NaiveTree& oracle, std::span<const StageSet> engine) {
  std::vector<Discrepancy> out;
  const std::size_t depth = std::max(oracle.stages.size(), engine.size());
  for (std::size_t s = 0; s < depth; ++s) {
    const auto stage = static_cast<std::uint32_t>(s + 1);
    if (s >= oracle.stages.size() || s >= engine.size()) {
      out.push_back({stage, 0, "present", s < oracle.stages.size() ? "yes" : "no",
                     s < engine.size() ? "yes" : "no"});
      continue;
    }
    const auto& naive = oracle.stages[s];
    const auto& built = engine[s].components;
    if (naive.size() != built.size()) {
      out.push_back({stage, 0, "m", std::to_string(naive.size()), std::to_string(built.size())});
    }
    for (std::size_t i = 0; i < std::min(naive.size(), built.size()); ++i) {
      const NaiveNode& a = naive[i];
      const Component& b = built[i];
      const std::uint64_t index = i + 1;
      auto check = [&](const char* field, const std::string& x, const std::string& y) {
        if (x != y) out.push_back({stage, index, field, x, y});
      };
      check("stage", std::to_string(stage), std::to_string(b.id.stage));
      check("index", std::to_string(a.label), std::to_string(b.id.index));
      check("genus", std::to_string(a.genus), std::to_string(b.genus));
      check("birth", a.birth, std::string(birth_name(b.birth)));
      check("handle", std::to_string(a.handle), std::to_string(b.handle));
      check("position", std::to_string(a.position), std::to_string(b.position));
      check("parent", std::to_string(a.parent_label), std::to_string(b.parent ? b.parent->index : 0));
      check("cell", render_path(a.cell), b.cell.to_string());
      check("diam_exp", std::to_string(a.halvings), std::to_string(b.diam_exp));
      check("assigned_term", a.term, b.assigned_term.to_string());
    }
  }
  return out;
}

}  // namespace cantorforge::oracle
