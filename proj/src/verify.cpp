#include "cantorforge/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "cantorforge/ends.hpp"
#include "cantorforge/errors.hpp"
#include "cantorforge/geometry.hpp"
#include "cantorforge/oracle.hpp"

namespace cantorforge {

namespace {

using Stages = std::vector<StageSet>;

// Each check returns an empty string on success, else the first counterexample.

std::string check_ih1_genus(const Stages& stages) {
  for (const auto& s : stages) {
    for (const auto& c : s.components) {
      if (c.genus < 2) return c.id.to_string() + " has genus " + std::to_string(c.genus);
    }
  }
  return {};
}

std::string check_ih1_cells(const Stages& stages) {
  CellTable prev;
  for (const auto& s : stages) {
    CellTable cells;
    cells.reserve(s.components.size());
    for (const auto& c : s.components) cells.push_back(c.cell);
    if (!pairwise_disjoint(cells)) return "stage " + std::to_string(s.stage) + " has overlapping cells";
    for (const auto& c : s.components) {
      if (c.parent && !prev.at(c.parent->index - 1).contains(c.cell)) {
        return c.id.to_string() + " cell " + c.cell.to_string() + " escapes its parent's cell";
      }
    }
    const CellTable recomputed = assign_cells(s, prev);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (recomputed[i] != cells[i]) {
        return s.components[i].id.to_string() + " cell " + cells[i].to_string() + " but assignment gives " +
               recomputed[i].to_string();
      }
    }
    prev = std::move(cells);
  }
  return {};
}

std::string check_ih2(const Stages& stages, const GenusSpec& spec) {
  for (const auto& s : stages) {
    for (const auto& c : s.components) {
      const ExtendedGenus n = spec.entry(c.id.index);
      if (c.assigned_term != n) return c.id.to_string() + " carries the wrong term";
      if (n < c.genus) return c.id.to_string() + " genus " + std::to_string(c.genus) + " exceeds n=" + n.to_string();
    }
  }
  return {};
}

std::string check_counts(const Stages& stages, const Construction& engine) {
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::uint32_t k = stages[s].stage;
    if (engine.stage_size(k) != stages[s].m()) {
      return "m(" + std::to_string(k) + ") built " + std::to_string(stages[s].m()) + ", counted " +
             std::to_string(engine.stage_size(k));
    }
    if (s + 1 == stages.size()) break;
    std::uint64_t expected = stages[s].m();
    if (k % 2 == 0) {
      for (const auto& c : stages[s].components) expected += std::uint64_t{kChainLength} * c.genus;
    }
    if (stages[s + 1].m() != expected) {
      return "m(" + std::to_string(k + 1) + ")=" + std::to_string(stages[s + 1].m()) + ", recurrence gives " +
             std::to_string(expected);
    }
  }
  return {};
}

std::string check_diameters(const Stages& stages) {
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const auto& stage = stages[s];
    DyadicBound max_bound{~std::uint32_t{0}};
    for (const auto& c : stage.components) {
      max_bound = std::max(max_bound, diameter_bound(c));
      if (c.parent && c.diam_exp < stages[s - 1].at(c.parent->index).diam_exp) {
        return c.id.to_string() + " is wider than its parent";
      }
    }
    if (stage.stage % 2 == 1) {
      const DyadicBound expected{(stage.stage - 1) / 2};
      if (max_bound != expected) {
        return "stage " + std::to_string(stage.stage) + " max diameter " + max_bound.to_string() + ", expected " +
               expected.to_string();
      }
    }
  }
  return {};
}

std::string check_branching(const Stages& stages) {
  for (std::size_t s = 0; s + 2 < stages.size(); ++s) {
    std::vector<std::uint64_t> descendants(stages[s].m(), 0);
    for (const auto& c : stages[s + 2].components) {
      const auto& parent = stages[s + 1].at(c.parent->index);
      ++descendants[parent.parent->index - 1];
    }
    for (std::size_t i = 0; i < descendants.size(); ++i) {
      if (descendants[i] < 2) {
        return stages[s].components[i].id.to_string() + " has " + std::to_string(descendants[i]) +
               " descendants two stages later";
      }
    }
  }
  return {};
}

std::string check_index_stability(const Stages& stages) {
  for (std::size_t s = 1; s < stages.size(); ++s) {
    for (std::uint64_t j = 1; j <= stages[s - 1].m(); ++j) {
      const auto& c = stages[s].at(j);
      if (!c.parent || c.parent->index != j) return c.id.to_string() + " does not descend from label " + std::to_string(j);
    }
  }
  return {};
}

std::string check_genus_monotone(const Stages& stages, const GenusSpec& spec) {
  for (std::size_t s = 1; s < stages.size(); ++s) {
    const bool bump_stage = stages[s].stage % 2 == 0;
    for (std::uint64_t j = 1; j <= stages[s - 1].m(); ++j) {
      const std::uint32_t before = stages[s - 1].at(j).genus;
      const std::uint32_t after = stages[s].at(j).genus;
      const bool below_term = spec.entry(j) > before;
      const std::uint32_t expected = bump_stage && below_term ? before + 1 : before;
      if (after != expected) {
        return "label " + std::to_string(j) + " genus " + std::to_string(before) + " -> " + std::to_string(after) +
               " entering stage " + std::to_string(stages[s].stage);
      }
    }
  }
  return {};
}

std::string check_lazy(const Stages& stages, const Construction& engine, std::uint32_t depth) {
  for (const auto& s : stages) {
    if (s.stage > depth) break;
    for (const auto& c : s.components) {
      if (engine.component_at(c.id) != c) return "lazy " + c.id.to_string() + " differs from the built stage";
    }
  }
  return {};
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const CheckResult* VerifyReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

VerifyReport verify_construction(const GenusSpec& spec, std::uint32_t stage_count, const VerifyOptions& options) {
  VerifyReport report{spec.render(), stage_count, {}};
  const Stages stages = build_stages(spec, stage_count, options.budget, options.fault);
  Construction engine(spec, options.budget);

  auto run = [&](std::string name, const std::function<std::string()>& body) {
    CheckResult result{std::move(name), true, {}};
    try {
      result.detail = body();
    } catch (const std::exception& e) {
      result.detail = std::string("error: ") + e.what();
    }
    result.passed = result.detail.empty();
    report.checks.push_back(std::move(result));
  };

  run("ih1_genus", [&] { return check_ih1_genus(stages); });
  run("ih1_cells", [&] { return check_ih1_cells(stages); });
  run("ih2", [&] { return check_ih2(stages, spec); });
  run("count_recurrence", [&] { return check_counts(stages, engine); });
  run("diameter_decay", [&] { return check_diameters(stages); });
  run("branching", [&] { return check_branching(stages); });
  run("index_stability", [&] { return check_index_stability(stages); });
  run("genus_monotone", [&] { return check_genus_monotone(stages, spec); });
  run("density", [&] {
    const auto density = density_check(engine, stage_count);
    return density.passed() ? std::string() : density.violations.front();
  });
  run("lazy_agreement", [&] { return check_lazy(stages, engine, options.lazy_depth); });
  run("oracle_diff", [&] {
    const std::uint32_t depth = std::min(stage_count, options.oracle_depth);
    const auto tree = oracle::naive_build(spec, depth);
    const auto diffs = oracle::diff(tree, std::span(stages).first(depth));
    return diffs.empty() ? std::string() : diffs.front().to_string();
  });
  return report;
}

std::vector<GenusSpec> spec_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<GenusSpec> corpus;
  for (const char* fixed : {"2", "inf", "2;const:inf", "3,2;cycle:2,inf"}) {
    if (corpus.size() == count) return corpus;
    corpus.push_back(parse_spec(fixed));
  }
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const auto v = std::uniform_int_distribution<int>(2, 7)(rng);
    return v == 7 ? ExtendedGenus::infinity() : ExtendedGenus::finite(static_cast<std::uint64_t>(v));
  };
  while (corpus.size() < count) {
    std::vector<ExtendedGenus> prefix;
    for (int n = std::uniform_int_distribution<int>(1, 5)(rng); n > 0; --n) prefix.push_back(draw());
    if (std::bernoulli_distribution(0.5)(rng)) {
      corpus.emplace_back(std::move(prefix), ConstantTail{draw()});
    } else {
      std::vector<ExtendedGenus> cycle;
      for (int n = std::uniform_int_distribution<int>(1, 3)(rng); n > 0; --n) cycle.push_back(draw());
      corpus.emplace_back(std::move(prefix), CycleTail{std::move(cycle)});
    }
  }
  return corpus;
}

}  // namespace cantorforge
