#include "cantorforge/io.hpp"

#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "cantorforge/errors.hpp"

namespace cantorforge::io {

using Json = nlohmann::ordered_json;

namespace {

Json genus_json(const ExtendedGenus& g) {
  if (g.is_infinite()) return "inf";
  return g.value();
}

ExtendedGenus genus_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw Error("genus must be an integer or \"inf\"");
    return ExtendedGenus::infinity();
  }
  return ExtendedGenus::finite(j.get<std::uint64_t>());
}

BirthKind birth_from_name(const std::string& name) {
  for (auto kind : {BirthKind::kSeed, BirthKind::kGenusBump, BirthKind::kShrink, BirthKind::kCentralCopy,
                    BirthKind::kChainLink}) {
    if (birth_name(kind) == name) return kind;
  }
  throw Error("unknown birth kind: " + name);
}

std::string node_name(const ComponentId& id) {
  return "\"" + std::to_string(id.stage) + "." + std::to_string(id.index) + "\"";
}

}  // namespace

TreeDocument make_document(const GenusSpec& spec, std::vector<StageSet> stages) {
  TreeDocument doc;
  doc.spec = spec.render();
  doc.depth = static_cast<std::uint32_t>(stages.size());
  doc.stages = std::move(stages);
  return doc;
}

std::string to_json(const TreeDocument& doc) {
  Json root;
  root["spec"] = doc.spec;
  root["depth"] = doc.depth;
  Json stages = Json::array();
  for (const auto& s : doc.stages) {
    Json components = Json::array();
    for (const auto& c : s.components) {
      Json comp;
      comp["index"] = c.id.index;
      comp["genus"] = c.genus;
      comp["birth"] = std::string(birth_name(c.birth));
      if (c.birth == BirthKind::kChainLink) {
        comp["handle"] = c.handle;
        comp["position"] = c.position;
      }
      comp["parent_index"] = c.parent ? Json(c.parent->index) : Json(nullptr);
      Json path = Json::array();
      for (auto p : c.cell.path()) path.push_back(p);
      comp["cell_path"] = std::move(path);
      comp["diam_exp"] = c.diam_exp;
      comp["assigned_term"] = genus_json(c.assigned_term);
      components.push_back(std::move(comp));
    }
    Json stage;
    stage["stage"] = s.stage;
    stage["m"] = s.m();
    stage["components"] = std::move(components);
    stages.push_back(std::move(stage));
  }
  root["stages"] = std::move(stages);
  root["metadata"] = Json{{"tool_version", doc.tool_version}, {"labeling", doc.labeling}};
  return root.dump() + "\n";
}

TreeDocument document_from_json(std::string_view text) {
  try {
    const Json root = Json::parse(text);
    TreeDocument doc;
    doc.spec = root.at("spec").get<std::string>();
    doc.depth = root.at("depth").get<std::uint32_t>();
    for (const auto& js : root.at("stages")) {
      StageSet stage;
      stage.stage = js.at("stage").get<std::uint32_t>();
      for (const auto& jc : js.at("components")) {
        Component c;
        c.id = {stage.stage, jc.at("index").get<std::uint64_t>()};
        c.genus = jc.at("genus").get<std::uint32_t>();
        c.birth = birth_from_name(jc.at("birth").get<std::string>());
        if (c.birth == BirthKind::kChainLink) {
          c.handle = jc.at("handle").get<std::uint32_t>();
          c.position = jc.at("position").get<std::uint32_t>();
        }
        if (!jc.at("parent_index").is_null()) {
          c.parent = ComponentId{stage.stage - 1, jc.at("parent_index").get<std::uint64_t>()};
        }
        c.cell = CellId(jc.at("cell_path").get<std::vector<std::uint32_t>>());
        c.diam_exp = jc.at("diam_exp").get<std::uint32_t>();
        c.assigned_term = genus_from_json(jc.at("assigned_term"));
        stage.components.push_back(std::move(c));
      }
      if (stage.m() != js.at("m").get<std::uint64_t>()) throw Error("stage m does not match its component list");
      doc.stages.push_back(std::move(stage));
    }
    const auto& meta = root.at("metadata");
    doc.tool_version = meta.at("tool_version").get<std::string>();
    doc.labeling = meta.at("labeling").get<std::string>();
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed tree document: ") + e.what());
  }
}

std::string to_dot(std::span<const StageSet> stages, std::optional<std::uint64_t> highlight_label) {
  std::set<ComponentId> marked;
  if (highlight_label) {
    const std::uint64_t j = *highlight_label;
    for (const auto& s : stages) {
      if (j > s.m()) continue;
      // Later stages keep the label; the first one that has it fixes the ancestry.
      if (marked.empty()) {
        std::optional<ComponentId> cur = ComponentId{s.stage, j};
        while (cur) {
          marked.insert(*cur);
          cur = stages[cur->stage - 1].at(cur->index).parent;
        }
      }
      marked.insert({s.stage, j});
    }
  }

  std::ostringstream out;
  out << "digraph cantorforge {\n";
  out << "  node [shape=ellipse];\n";
  for (const auto& s : stages) {
    for (const auto& c : s.components) {
      out << "  " << node_name(c.id) << " [label=\"" << c.id.to_string() << ":" << c.genus << "\"";
      if (c.birth == BirthKind::kChainLink) out << ", shape=box, style=dashed";
      if (marked.count(c.id)) out << ", color=red, penwidth=2";
      out << "];\n";
    }
  }
  for (const auto& s : stages) {
    for (const auto& c : s.components) {
      if (!c.parent) continue;
      out << "  " << node_name(*c.parent) << " -> " << node_name(c.id);
      std::string attrs;
      if (c.birth == BirthKind::kChainLink) attrs = "style=dashed";
      if (marked.count(c.id) && marked.count(*c.parent)) attrs += std::string(attrs.empty() ? "" : ", ") + "color=red";
      if (!attrs.empty()) out << " [" << attrs << "]";
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace cantorforge::io
