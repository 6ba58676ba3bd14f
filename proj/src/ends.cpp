#include "cantorforge/ends.hpp"

#include <algorithm>
#include <charconv>

#include "cantorforge/errors.hpp"

namespace cantorforge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw PolicyError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

Component fetch(const Construction& engine, ComponentId id) {
  try {
    return engine.component_at(id);
  } catch (const NotFoundError& e) {
    throw PolicyError(std::string("branch leaves the construction: ") + e.what());
  }
}

// Ancestor chain (stage 1 first) ending at `id`.
std::vector<ComponentId> ancestry(const Construction& engine, ComponentId id) {
  std::vector<ComponentId> chain;
  std::optional<ComponentId> cur = id;
  while (cur) {
    chain.push_back(*cur);
    cur = engine.component_at(*cur).parent;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

class Stepper {
 public:
  Stepper(const Construction& engine, const EndTail& tail) : engine_(engine), tail_(tail) {}

  Component next(const Component& cur) {
    const ComponentId id = cur.id;
    if (std::holds_alternative<std::monostate>(tail_)) {
      throw PolicyError("an end without a declared tail cannot extend past its prefix");
    }
    if (const auto* follow = std::get_if<FollowLabel>(&tail_)) {
      if (id.index == follow->label) return fetch(engine_, {id.stage + 1, id.index});
      if (!target_chain_) {
        const std::uint32_t b = birth_stage(engine_, follow->label);
        target_chain_ = ancestry(engine_, {b, follow->label});
      }
      if (id.stage >= target_chain_->size() || (*target_chain_)[id.stage - 1] != id) {
        throw PolicyError("branch at " + id.to_string() + " cannot reach label " +
                          std::to_string(follow->label));
      }
      return fetch(engine_, (*target_chain_)[id.stage]);
    }
    const auto& hop = std::get<ChainHop>(tail_);
    if ((id.stage + 1) % 2 == 0) return fetch(engine_, {id.stage + 1, id.index});
    const auto children = engine_.children_of(id);
    return children.at(1 + hop.rule.select(cur));
  }

 private:
  const Construction& engine_;
  const EndTail& tail_;
  std::optional<std::vector<ComponentId>> target_chain_;
};

std::uint32_t prefix_end_stage(const EndPolicy& end) {
  return end.prefix.empty() ? 1 : end.prefix.back().stage;
}

}  // namespace

// ---------------------------------------------------------------------------
// ChainHopRule

ChainHopRule ChainHopRule::fixed(std::uint32_t handle, std::uint32_t position) {
  if (handle < 1 || position < 1 || position > kChainLength) {
    throw PolicyError("fixed chain-hop needs handle >= 1 and position in 1..6");
  }
  ChainHopRule rule(Kind::kFixed);
  rule.handle_ = handle;
  rule.position_ = position;
  return rule;
}

ChainHopRule ChainHopRule::seeded(std::uint64_t seed) {
  ChainHopRule rule(Kind::kSeeded);
  rule.seed_ = seed;
  return rule;
}

ChainHopRule ChainHopRule::parse(std::string_view text) {
  if (text == "first") return first();
  if (text == "last") return last();
  if (text.starts_with("fixed:")) {
    const auto body = text.substr(6);
    const auto dot = body.find('.');
    if (dot == std::string_view::npos) throw PolicyError("fixed chain-hop is written fixed:H.P");
    return fixed(parse_number<std::uint32_t>(body.substr(0, dot), "handle"),
                 parse_number<std::uint32_t>(body.substr(dot + 1), "position"));
  }
  if (text.starts_with("seed:")) return seeded(parse_number<std::uint64_t>(text.substr(5), "seed"));
  throw PolicyError("unknown chain-hop rule: '" + std::string(text) + "'");
}

std::string ChainHopRule::to_string() const {
  switch (kind_) {
    case Kind::kFirst: return "first";
    case Kind::kLast: return "last";
    case Kind::kFixed: return "fixed:" + std::to_string(handle_) + "." + std::to_string(position_);
    case Kind::kSeeded: return "seed:" + std::to_string(seed_);
  }
  return "first";
}

std::uint64_t ChainHopRule::select(const Component& parent) const {
  const std::uint64_t genus = parent.genus;
  switch (kind_) {
    case Kind::kFirst: return 0;
    case Kind::kLast: return genus * kChainLength - 1;
    case Kind::kFixed: return ((handle_ - 1) % genus) * kChainLength + (position_ - 1);
    case Kind::kSeeded: {
      const std::uint64_t h = splitmix64(seed_ ^ splitmix64((std::uint64_t{parent.id.stage} << 40) ^ parent.id.index));
      return h % (genus * kChainLength);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Policies

std::string EndPolicy::describe() const {
  std::string out;
  if (const auto* f = std::get_if<FollowLabel>(&tail)) {
    out = "follow_label(" + std::to_string(f->label) + ")";
  } else if (const auto* h = std::get_if<ChainHop>(&tail)) {
    out = "chain_hop(" + h->rule.to_string() + ")";
  } else {
    out = "prefix_only";
  }
  if (!prefix.empty()) out += " from " + prefix.back().to_string();
  return out;
}

std::uint32_t birth_stage(const Construction& engine, std::uint64_t label) {
  if (label < 1) throw IndexError("labels start at 1");
  std::uint64_t materialized = 0;
  for (std::uint32_t k = 1;; ++k) {
    const std::uint64_t m = engine.stage_size(k);
    if (m >= label) return k;
    materialized += m;
    if (materialized > engine.budget()) {
      throw ResourceError("label " + std::to_string(label) + " is born beyond the node budget of " +
                          std::to_string(engine.budget()));
    }
  }
}

EndPolicy dense_point(const Construction& engine, std::uint64_t label) {
  const std::uint32_t b = birth_stage(engine, label);
  return EndPolicy{ancestry(engine, {b, label}), FollowLabel{label}};
}

EndPolicy chain_hop_end(std::vector<ComponentId> prefix, ChainHopRule rule) {
  return EndPolicy{std::move(prefix), ChainHop{rule}};
}

std::vector<Component> trace(const Construction& engine, const EndPolicy& end, std::uint32_t depth) {
  if (depth < 1) throw PolicyError("depth must be at least 1");
  std::vector<Component> branch;
  branch.reserve(depth);
  if (end.prefix.empty()) {
    branch.push_back(engine.component_at({1, 1}));
  } else {
    for (const auto& id : end.prefix) {
      Component c = fetch(engine, id);
      if (branch.empty() ? id != ComponentId{1, 1} : c.parent != branch.back().id) {
        throw PolicyError("prefix is not a descending chain from (1,1) at " + id.to_string());
      }
      branch.push_back(std::move(c));
    }
  }
  if (branch.size() > depth) {
    branch.resize(depth);
    return branch;
  }
  Stepper step(engine, end.tail);
  while (branch.size() < depth) branch.push_back(step.next(branch.back()));
  return branch;
}

GenusProfile genus_profile(const Construction& engine, const EndPolicy& end, std::uint32_t depth) {
  GenusProfile profile;
  const auto branch = trace(engine, end, depth);
  for (const auto& c : branch) profile.genera.push_back(c.genus);
  profile.sup_so_far = *std::max_element(profile.genera.begin(), profile.genera.end());

  auto& cert = profile.certificate;
  if (const auto* follow = std::get_if<FollowLabel>(&end.tail)) {
    const std::uint64_t j = follow->label;
    const std::uint32_t b = birth_stage(engine, j);
    if (depth < b) return profile;
    const ExtendedGenus term = engine.spec().entry(j);
    if (term.is_infinite()) {
      cert.kind = LiminfCertificate::Kind::kUnbounded;
      return profile;
    }
    // The label's genus climbs by one every other stage until it meets its
    // term and is constant afterwards.
    std::uint32_t s = b;
    while (term > engine.genus_at({s, j})) ++s;
    for (std::uint32_t k = s; k < s + 3; ++k) {
      if (engine.genus_at({k, j}) != term.value()) {
        throw InvariantError("label " + std::to_string(j) + " left its term at stage " + std::to_string(k));
      }
      cert.witness_stages.push_back(k);
    }
    cert.kind = LiminfCertificate::Kind::kValue;
    cert.value = term.value();
  } else if (std::holds_alternative<ChainHop>(end.tail)) {
    const std::uint32_t p = prefix_end_stage(end);
    const std::uint32_t first_hop = p % 2 == 0 ? p + 1 : p + 2;
    if (depth < first_hop) return profile;
    const auto extended = trace(engine, end, std::max(depth, first_hop + 4));
    for (std::uint32_t k = first_hop; k <= first_hop + 4; k += 2) {
      const Component& c = extended[k - 1];
      if (c.genus != 2 || c.birth != BirthKind::kChainLink) {
        throw InvariantError("chain hop at stage " + std::to_string(k) + " did not land on a genus-2 link");
      }
      cert.witness_stages.push_back(k);
    }
    cert.kind = LiminfCertificate::Kind::kValue;
    cert.value = 2;
  }
  return profile;
}

ExtendedGenus local_genus_upper(const Construction& engine, const EndPolicy& end, std::uint32_t depth) {
  const auto profile = genus_profile(engine, end, depth);
  switch (profile.certificate.kind) {
    case LiminfCertificate::Kind::kValue: return ExtendedGenus::finite(profile.certificate.value);
    case LiminfCertificate::Kind::kUnbounded: return ExtendedGenus::infinity();
    case LiminfCertificate::Kind::kUnstable: break;
  }
  throw DepthTooShallowError("depth " + std::to_string(depth) + " does not yet reveal the tail of " +
                             end.describe() + "; raise the depth");
}

std::string EndClassification::exact_to_string() const {
  return exact ? exact->to_string() : std::string("[1,2]");
}

EndClassification classify(const GenusSpec& spec, const EndPolicy& end) {
  EndClassification out;
  if (const auto* follow = std::get_if<FollowLabel>(&end.tail)) {
    out.kind = EndClassification::Kind::kDense;
    out.label = follow->label;
    out.genus_upper = spec.entry(follow->label);
    out.exact = out.genus_upper;
    out.provenance = "upper bound computed from the defining sequence; exact value is proven, not recomputed";
    return out;
  }
  if (std::holds_alternative<ChainHop>(end.tail)) {
    out.kind = EndClassification::Kind::kNonDense;
    out.genus_upper = ExtendedGenus::finite(2);
    out.provenance = "upper bound 2 computed from genus-2 hops; range [1,2] is proven, not recomputed";
    return out;
  }
  throw PolicyError("cannot classify an end without a declared tail");
}

DensityReport density_check(const Construction& engine, std::uint32_t depth) {
  DensityReport report;
  report.depth = depth;
  std::uint64_t expected = 0;
  for (std::uint32_t k = 1; k <= depth; ++k) expected += engine.stage_size(k);

  const std::uint64_t labels = engine.stage_size(depth);
  for (std::uint64_t j = 1; j <= labels; ++j) {
    const std::uint32_t b = engine.label_birth_stage(j);
    if (b > 1 && engine.stage_size(b - 1) >= j) {
      report.violations.push_back("label " + std::to_string(j) + " exists before its birth stage");
      continue;
    }
    const EndTail tail = FollowLabel{j};
    Stepper step(engine, tail);
    Component cur = engine.component_at({b, j});
    ++report.components_checked;
    for (std::uint32_t k = b; k < depth; ++k) {
      Component next = step.next(cur);
      if (next.id != ComponentId{k + 1, j} || next.parent != cur.id) {
        report.violations.push_back("x_" + std::to_string(j) + " leaves " + cur.id.to_string() + " for " +
                                    next.id.to_string());
        break;
      }
      cur = std::move(next);
      ++report.components_checked;
    }
  }
  if (report.passed() && report.components_checked != expected) {
    report.violations.push_back("visited " + std::to_string(report.components_checked) + " of " +
                                std::to_string(expected) + " components");
  }
  return report;
}

std::vector<std::uint32_t> DualityReport::end_genus_sequence(const std::vector<ComponentId>& branch) const {
  std::vector<std::uint32_t> out;
  for (const auto& id : branch) {
    if (id.stage > exhaustion.size()) break;
    out.push_back(exhaustion[id.stage - 1].boundary.at(id.index - 1).genus);
  }
  return out;
}

DualityReport ends_as_points(const Construction& engine, std::uint32_t depth) {
  DualityReport report;
  for (std::uint32_t k = 1; k <= depth; ++k) {
    ExhaustionElement element{k, {}};
    const std::uint64_t m = engine.stage_size(k);
    element.boundary.reserve(m);
    for (std::uint64_t j = 1; j <= m; ++j) element.boundary.push_back({{k, j}, engine.genus_at({k, j})});
    report.exhaustion.push_back(std::move(element));
  }
  report.correspondence =
      "C_i is the closure of the complement of stage i, bounded by one surface per stage-i component; "
      "an end of the complement is a nested chain of complementary regions, equivalently a branch "
      "M(1,x(1)) > M(2,x(2)) > ... converging to one Cantor-set point; the genus of the end equals the "
      "local genus of that point, both read from the same boundary genus sequence";
  return report;
}

}  // namespace cantorforge
