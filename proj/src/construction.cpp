#include "cantorforge/construction.hpp"

#include "cantorforge/errors.hpp"

namespace cantorforge {

namespace {

std::uint64_t add_or_throw(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceError("component count exceeds 64-bit range");
  return out;
}

std::uint64_t mul_or_throw(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("component count exceeds 64-bit range");
  return out;
}

bool is_odd(std::uint32_t stage) { return stage % 2 == 1; }

Component genus_successor(const Component& c, const GenusSpec& spec) {
  Component child = c;
  child.id = {c.id.stage + 1, c.id.index};
  child.parent = c.id;
  child.handle = child.position = 0;
  child.assigned_term = spec.entry(c.id.index);
  if (child.assigned_term > c.genus) {
    child.genus = c.genus + 1;
    child.birth = BirthKind::kGenusBump;
  } else {
    child.birth = BirthKind::kShrink;
  }
  return child;
}

Component central_copy(const Component& c) {
  Component child = c;
  child.id = {c.id.stage + 1, c.id.index};
  child.parent = c.id;
  child.birth = BirthKind::kCentralCopy;
  child.handle = child.position = 0;
  child.cell = c.cell.child(1);
  child.diam_exp = c.diam_exp + 1;
  return child;
}

Component chain_link(const Component& c, std::uint32_t handle, std::uint32_t position,
                     std::uint32_t chain_length, std::uint64_t index, const GenusSpec& spec) {
  Component link;
  link.id = {c.id.stage + 1, index};
  link.genus = 2;
  link.assigned_term = spec.entry(index);
  link.parent = c.id;
  link.birth = BirthKind::kChainLink;
  link.handle = handle;
  link.position = position;
  // Sibling ordinal: the central copy is 1, links follow in emission order.
  link.cell = c.cell.child(1 + (handle - 1) * chain_length + position);
  link.diam_exp = c.diam_exp + 1;
  return link;
}

std::vector<Component> size_step(const Component& c, std::uint64_t next_free_index,
                                 const GenusSpec& spec, std::uint32_t chain_length) {
  std::vector<Component> out;
  out.reserve(1 + std::size_t{chain_length} * c.genus);
  out.push_back(central_copy(c));
  for (std::uint32_t h = 1; h <= c.genus; ++h) {
    for (std::uint32_t p = 1; p <= chain_length; ++p) {
      out.push_back(chain_link(c, h, p, chain_length, next_free_index++, spec));
    }
  }
  return out;
}

}  // namespace

std::string ComponentId::to_string() const {
  return "(" + std::to_string(stage) + "," + std::to_string(index) + ")";
}

std::string_view birth_name(BirthKind kind) {
  switch (kind) {
    case BirthKind::kSeed: return "seed";
    case BirthKind::kGenusBump: return "genus_bump";
    case BirthKind::kShrink: return "shrink";
    case BirthKind::kCentralCopy: return "central_copy";
    case BirthKind::kChainLink: return "chain_link";
  }
  return "unknown";
}

StageSet seed_stage(const GenusSpec& spec) {
  Component seed;
  seed.id = {1, 1};
  seed.genus = 2;
  seed.assigned_term = spec.entry(1);
  seed.birth = BirthKind::kSeed;
  return StageSet{1, {seed}};
}

Component genus_replace(const Component& c, const GenusSpec& spec) {
  if (!is_odd(c.id.stage)) {
    throw StageParityError("genus replacement applies to odd stages, got stage " +
                           std::to_string(c.id.stage));
  }
  return genus_successor(c, spec);
}

std::vector<Component> size_replace(const Component& c, std::uint64_t next_free_index,
                                    const GenusSpec& spec) {
  if (is_odd(c.id.stage)) {
    throw StageParityError("size replacement applies to even stages, got stage " +
                           std::to_string(c.id.stage));
  }
  return size_step(c, next_free_index, spec, kChainLength);
}

void check_inductive_hypotheses(const StageSet& stage, const GenusSpec& spec) {
  for (std::uint64_t i = 1; i <= stage.m(); ++i) {
    const Component& c = stage.at(i);
    const auto where = c.id.to_string();
    if (c.id.stage != stage.stage || c.id.index != i) throw InvariantError("misplaced component " + where);
    if (c.genus < 2) throw InvariantError("genus below 2 at " + where);
    if (c.assigned_term != spec.entry(i)) throw InvariantError("wrong term at " + where);
    if (c.assigned_term < c.genus) throw InvariantError("genus exceeds its term at " + where);
    if (c.birth == BirthKind::kChainLink && c.genus != 2) throw InvariantError("chain link not genus 2 at " + where);
    if ((stage.stage == 1) != !c.parent.has_value()) throw InvariantError("bad parent at " + where);
    if (c.parent && c.parent->stage + 1 != stage.stage) throw InvariantError("parent not in previous stage at " + where);
  }
}

StageSet build_stage(const StageSet& prev, const GenusSpec& spec, const FaultInjection& fault) {
  StageSet next{prev.stage + 1, {}};
  const bool size_replacement = is_odd(prev.stage) == fault.flip_parity;
  if (!size_replacement) {
    next.components.reserve(prev.m());
    for (const auto& c : prev.components) next.components.push_back(genus_successor(c, spec));
  } else {
    // Central copies keep indices 1..m(prev); links are appended in
    // (parent index, handle, position) order.
    std::vector<Component> links;
    next.components.reserve(prev.m());
    std::uint64_t next_free = prev.m() + 1;
    for (const auto& c : prev.components) {
      auto children = size_step(c, next_free, spec, fault.chain_length);
      next_free += children.size() - 1;
      next.components.push_back(std::move(children.front()));
      links.insert(links.end(), std::make_move_iterator(children.begin() + 1),
                   std::make_move_iterator(children.end()));
    }
    next.components.insert(next.components.end(), std::make_move_iterator(links.begin()),
                           std::make_move_iterator(links.end()));
  }
  check_inductive_hypotheses(next, spec);
  return next;
}

std::vector<StageSet> build_stages(const GenusSpec& spec, std::uint32_t depth, std::size_t budget,
                                   const FaultInjection& fault) {
  std::vector<StageSet> stages;
  if (depth == 0) return stages;
  if (budget < 1) throw ResourceError("node budget of 0 cannot hold the seed");
  stages.push_back(seed_stage(spec));
  std::uint64_t total = 1;
  while (stages.size() < depth) {
    const StageSet& prev = stages.back();
    std::uint64_t next_size = prev.m();
    if (is_odd(prev.stage) == fault.flip_parity) {
      for (const auto& c : prev.components) {
        next_size = add_or_throw(next_size, mul_or_throw(fault.chain_length, c.genus));
      }
    }
    total = add_or_throw(total, next_size);
    if (total > budget) {
      throw ResourceError("stage " + std::to_string(prev.stage + 1) + " would bring the total to " +
                          std::to_string(total) + " components, over the budget of " +
                          std::to_string(budget));
    }
    stages.push_back(build_stage(prev, spec, fault));
  }
  return stages;
}

// ---------------------------------------------------------------------------
// Lazy engine

Construction::Construction(GenusSpec spec, std::size_t budget)
    : spec_(std::move(spec)), budget_(budget), counts_{1} {}

std::uint64_t Construction::stage_size(std::uint32_t stage) const {
  std::lock_guard lock(counts_mutex_);
  return stage_size_locked(stage);
}

std::uint64_t Construction::stage_size_locked(std::uint32_t stage) const {
  if (stage < 1) throw NotFoundError("stages start at 1");
  while (counts_.size() < stage) {
    const auto last = static_cast<std::uint32_t>(counts_.size());
    const std::uint64_t m = counts_.back();
    if (is_odd(last)) {
      counts_.push_back(m);
    } else {
      const std::uint64_t links = mul_or_throw(kChainLength, genus_sum_locked(last, m));
      counts_.push_back(add_or_throw(m, links));
    }
  }
  return counts_[stage - 1];
}

std::uint32_t Construction::birth_stage_locked(std::uint64_t label) const {
  std::uint32_t k = 1;
  while (stage_size_locked(k) < label) ++k;
  return k;
}

std::uint32_t Construction::label_birth_stage(std::uint64_t label) const {
  if (label < 1) throw NotFoundError("labels start at 1");
  std::lock_guard lock(counts_mutex_);
  return birth_stage_locked(label);
}

std::uint64_t Construction::genus_sum_locked(std::uint32_t stage, std::uint64_t upto) const {
  // Labels born at the same stage b form a contiguous cohort; each starts at
  // genus 2 and gains one per even stage after b until it meets its term.
  std::uint64_t sum = 0;
  std::uint64_t lo = 1;
  for (std::uint32_t b = 1; b <= stage && lo <= upto; b += 2) {
    const std::uint64_t hi = std::min(stage_size_locked(b), upto);
    if (hi >= lo) {
      const std::uint64_t cap = 2 + stage / 2 - b / 2;
      sum = add_or_throw(sum, spec_.capped_sum(lo, hi, cap));
      lo = hi + 1;
    }
  }
  return sum;
}

std::uint32_t Construction::genus_at(ComponentId id) const {
  std::lock_guard lock(counts_mutex_);
  if (id.index < 1 || id.index > stage_size_locked(id.stage)) {
    throw NotFoundError("no component " + id.to_string());
  }
  const std::uint32_t b = birth_stage_locked(id.index);
  return static_cast<std::uint32_t>(spec_.entry(id.index).capped(2 + id.stage / 2 - b / 2));
}

std::uint64_t Construction::first_link_index(std::uint32_t stage, std::uint64_t index) const {
  std::lock_guard lock(counts_mutex_);
  return stage_size_locked(stage) + kChainLength * genus_sum_locked(stage, index - 1) + 1;
}

Construction::LinkOrigin Construction::locate_link(std::uint32_t stage, std::uint64_t index) const {
  std::lock_guard lock(counts_mutex_);
  const std::uint32_t parent_stage = stage - 1;
  const std::uint64_t offset = index - stage_size_locked(parent_stage) - 1;
  // Smallest parent i with 6 * G(i) > offset.
  std::uint64_t lo = 1;
  std::uint64_t hi = stage_size_locked(parent_stage);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (kChainLength * genus_sum_locked(parent_stage, mid) > offset) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return {lo, offset - kChainLength * genus_sum_locked(parent_stage, lo - 1)};
}

Component Construction::remember(Component c) const {
  std::unique_lock lock(memo_mutex_);
  if (auto it = memo_.find(c.id); it != memo_.end()) return it->second;
  if (memo_.size() >= budget_) {
    throw ResourceError("lazy memo reached the node budget of " + std::to_string(budget_));
  }
  return memo_.emplace(c.id, std::move(c)).first->second;
}

Component Construction::component_at(ComponentId id) const {
  if (id.stage < 1 || id.index < 1 || id.index > stage_size(id.stage)) {
    throw NotFoundError("no component " + id.to_string());
  }
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
  }
  if (id.stage == 1) return remember(seed_stage(spec_).components.front());

  const std::uint32_t prev = id.stage - 1;
  if (id.index <= stage_size(prev)) {
    const Component parent = component_at({prev, id.index});
    return remember(is_odd(prev) ? genus_successor(parent, spec_) : central_copy(parent));
  }
  const LinkOrigin origin = locate_link(id.stage, id.index);
  const Component parent = component_at({prev, origin.parent_index});
  return remember(chain_link(parent, static_cast<std::uint32_t>(origin.offset / kChainLength) + 1,
                             static_cast<std::uint32_t>(origin.offset % kChainLength) + 1,
                             kChainLength, id.index, spec_));
}

std::vector<Component> Construction::children_of(ComponentId id) const {
  const Component c = component_at(id);
  std::vector<Component> out;
  out.push_back(component_at({id.stage + 1, id.index}));
  if (is_odd(id.stage)) return out;
  std::uint64_t index = first_link_index(id.stage, id.index);
  for (std::uint32_t h = 1; h <= c.genus; ++h) {
    for (std::uint32_t p = 1; p <= kChainLength; ++p) {
      out.push_back(remember(chain_link(c, h, p, kChainLength, index++, spec_)));
    }
  }
  return out;
}

std::size_t Construction::memo_size() const {
  std::shared_lock lock(memo_mutex_);
  return memo_.size();
}

}  // namespace cantorforge
