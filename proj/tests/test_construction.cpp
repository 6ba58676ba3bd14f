#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "brute_force.hpp"
#include "cantorforge/construction.hpp"
#include "cantorforge/errors.hpp"
#include "cantorforge/verify.hpp"

using namespace cantorforge;

namespace {

std::uint64_t pow13(unsigned t) {
  std::uint64_t v = 1;
  while (t-- > 0) v *= 13;
  return v;
}

Component stage_component(std::uint32_t stage, std::uint64_t index, std::uint32_t genus, const GenusSpec& spec) {
  Component c;
  c.id = {stage, index};
  c.genus = genus;
  c.assigned_term = spec.entry(index);
  c.parent = stage > 1 ? std::optional<ComponentId>(ComponentId{stage - 1, index}) : std::nullopt;
  c.birth = stage > 1 ? BirthKind::kCentralCopy : BirthKind::kSeed;
  return c;
}

}  // namespace

TEST(SeedStage, SingleGenusTwoComponent) {
  const auto s = seed_stage(parse_spec("5"));
  ASSERT_EQ(s.m(), 1u);
  const auto& c = s.at(1);
  EXPECT_EQ(c.id.stage, 1u);
  EXPECT_EQ(c.genus, 2u);
  EXPECT_EQ(c.birth, BirthKind::kSeed);
  EXPECT_FALSE(c.parent.has_value());
  EXPECT_TRUE(c.cell.path().empty());
  EXPECT_EQ(c.diam_exp, 0u);
  EXPECT_EQ(c.assigned_term, ExtendedGenus::finite(5));
}

TEST(GenusReplace, BumpsBelowTermAndShrinksAtTerm) {
  const auto two = parse_spec("2");
  const auto seed = seed_stage(two).at(1);
  const auto shrunk = genus_replace(seed, two);
  EXPECT_EQ(shrunk.genus, 2u);
  EXPECT_EQ(shrunk.birth, BirthKind::kShrink);
  EXPECT_EQ(shrunk.id.stage, 2u);
  EXPECT_EQ(shrunk.id.index, 1u);

  const auto inf = parse_spec("inf");
  const auto bumped = genus_replace(seed_stage(inf).at(1), inf);
  EXPECT_EQ(bumped.genus, 3u);
  EXPECT_EQ(bumped.birth, BirthKind::kGenusBump);
  EXPECT_EQ(bumped.cell, seed.cell);
  EXPECT_EQ(bumped.diam_exp, 0u);
}

TEST(GenusReplace, RejectsEvenStage) {
  const auto spec = parse_spec("3");
  EXPECT_THROW(genus_replace(stage_component(2, 1, 3, spec), spec), StageParityError);
}

TEST(SizeReplace, CentralCopyThenChainLinks) {
  const auto spec = parse_spec("3");
  const auto parent = stage_component(2, 1, 3, spec);
  const auto kids = size_replace(parent, 2, spec);
  ASSERT_EQ(kids.size(), 19u);
  EXPECT_EQ(kids[0].birth, BirthKind::kCentralCopy);
  EXPECT_EQ(kids[0].id.index, 1u);
  EXPECT_EQ(kids[0].genus, 3u);
  std::uint64_t expected_index = 2;
  for (std::uint32_t h = 1; h <= 3; ++h) {
    for (std::uint32_t p = 1; p <= kChainLength; ++p) {
      const auto& link = kids[expected_index - 1];
      EXPECT_EQ(link.birth, BirthKind::kChainLink);
      EXPECT_EQ(link.id.index, expected_index);
      EXPECT_EQ(link.handle, h);
      EXPECT_EQ(link.position, p);
      EXPECT_EQ(link.genus, 2u);
      EXPECT_EQ(link.assigned_term, spec.entry(expected_index));
      ++expected_index;
    }
  }
  for (const auto& k : kids) {
    EXPECT_EQ(k.id.stage, 3u);
    EXPECT_EQ(k.diam_exp, parent.diam_exp + 1);
    ASSERT_TRUE(k.parent.has_value());
    EXPECT_EQ(*k.parent, parent.id);
  }
}

TEST(SizeReplace, GenusTwoGivesThirteenChildren) {
  const auto spec = parse_spec("2");
  EXPECT_EQ(size_replace(stage_component(2, 1, 2, spec), 2, spec).size(), 13u);
}

TEST(SizeReplace, RejectsOddStage) {
  const auto spec = parse_spec("2");
  EXPECT_THROW(size_replace(seed_stage(spec).at(1), 2, spec), StageParityError);
}

TEST(BuildStages, AllTwoCountsArePowersOfThirteen) {
  const auto stages = build_stages(parse_spec("2"), 9);
  for (unsigned t = 0; t <= 4; ++t) {
    EXPECT_EQ(stages[2 * t].m(), pow13(t));
    if (2 * t + 1 < stages.size()) EXPECT_EQ(stages[2 * t + 1].m(), pow13(t));
  }
}

TEST(BuildStages, CountsMatchDirectRecurrence) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = parse_spec(reference::random_spec_text(rng));
    const auto expected = reference::stage_counts(spec, 7);
    const auto stages = build_stages(spec, 7);
    for (std::size_t k = 0; k < expected.size(); ++k) {
      EXPECT_EQ(stages[k].m(), expected[k]) << spec.render() << " stage " << k + 1;
    }
  }
}

TEST(BuildStages, InfiniteTermGrowsEveryOtherStage) {
  const auto spec = parse_spec("inf");
  const auto stages = build_stages(spec, 9);
  EXPECT_EQ(stages[0].at(1).genus, 2u);
  for (std::uint32_t t = 1; 2 * t + 1 <= 9; ++t) {
    EXPECT_EQ(stages[2 * t - 1].at(1).genus, t + 2);
    EXPECT_EQ(stages[2 * t].at(1).genus, t + 2);
  }
}

TEST(BuildStages, LabelOneGenusMatchesDirectIteration) {
  for (const char* text : {"2", "3", "4", "7", "inf", "5,2"}) {
    const auto spec = parse_spec(text);
    const auto expected = reference::label_one_genera(spec, 9);
    const auto stages = build_stages(spec, 9);
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(stages[k].at(1).genus, expected[k]) << text;
  }
}

TEST(BuildStages, BudgetIsEnforced) {
  EXPECT_THROW(build_stages(parse_spec("2"), 7, 100), ResourceError);
  EXPECT_NO_THROW(build_stages(parse_spec("2"), 3, 15));
  EXPECT_THROW(build_stages(parse_spec("2"), 3, 14), ResourceError);
}

TEST(InductiveHypotheses, RejectTamperedStages) {
  const auto spec = parse_spec("3");
  auto stages = build_stages(spec, 3);
  EXPECT_NO_THROW(check_inductive_hypotheses(stages[2], spec));

  auto low = stages[2];
  low.components[0].genus = 1;
  EXPECT_THROW(check_inductive_hypotheses(low, spec), InvariantError);

  auto high = stages[2];
  high.components[0].genus = 4;
  EXPECT_THROW(check_inductive_hypotheses(high, spec), InvariantError);

  auto shuffled = stages[2];
  std::swap(shuffled.components[0], shuffled.components[1]);
  EXPECT_THROW(check_inductive_hypotheses(shuffled, spec), InvariantError);
}

TEST(InvariantSuite, HoldsAcrossRandomSpecs) {
  for (const auto& spec : spec_corpus(25, 99)) {
    const auto report = verify_construction(spec, 7);
    const auto* bad = report.first_failure();
    EXPECT_TRUE(report.passed()) << spec.render() << ": " << (bad ? bad->name + " " + bad->detail : "");
  }
}

TEST(InvariantSuite, GenusEventuallyReachesItsTerm) {
  const auto spec = parse_spec("2,5,3;cycle:4,6");
  const Construction engine(spec);
  for (std::uint64_t label = 1; label <= 20; ++label) {
    const auto birth = engine.label_birth_stage(label);
    const auto term = spec.entry(label).value();
    const std::uint32_t settle = birth + 2 * (term - 2);
    EXPECT_EQ(engine.genus_at({settle + 1, label}), term) << label;
    EXPECT_EQ(engine.genus_at({settle + 6, label}), term) << label;
  }
}

TEST(Lazy, StageSizesWithoutMaterializing) {
  const Construction engine(parse_spec("2"), 1000);
  EXPECT_EQ(engine.stage_size(1), 1u);
  EXPECT_EQ(engine.stage_size(21), pow13(10));
  EXPECT_EQ(engine.memo_size(), 0u);
  EXPECT_EQ(engine.genus_at({21, pow13(10)}), 2u);
}

TEST(Lazy, StageSizeOverflowIsResourceError) {
  const Construction engine(parse_spec("2"));
  EXPECT_THROW(engine.stage_size(200), ResourceError);
}

TEST(Lazy, ComponentLookupExamples) {
  const Construction engine(parse_spec("2"));
  EXPECT_EQ(engine.component_at({1, 1}).birth, BirthKind::kSeed);
  const auto central = engine.component_at({3, 1});
  EXPECT_EQ(central.birth, BirthKind::kCentralCopy);
  EXPECT_EQ(central.genus, 2u);
  const auto last = engine.component_at({3, 13});
  EXPECT_EQ(last.birth, BirthKind::kChainLink);
  EXPECT_EQ(last.handle, 2u);
  EXPECT_EQ(last.position, 6u);
  EXPECT_THROW(engine.component_at({3, 14}), NotFoundError);
  EXPECT_THROW(engine.component_at({0, 1}), NotFoundError);
  EXPECT_THROW(engine.component_at({2, 0}), NotFoundError);
}

TEST(Lazy, ChildrenCounts) {
  const Construction two(parse_spec("2"));
  EXPECT_EQ(two.children_of({1, 1}).size(), 1u);
  EXPECT_EQ(two.children_of({2, 1}).size(), 13u);
  const Construction three(parse_spec("3"));
  EXPECT_EQ(three.children_of({2, 1}).size(), 19u);
  for (const auto& child : three.children_of({2, 1})) EXPECT_EQ(child.parent, ComponentId({2, 1}));
}

TEST(Lazy, AgreesWithEagerBuildToDepthSeven) {
  for (const auto& spec : spec_corpus(12, 5)) {
    const auto stages = build_stages(spec, 7);
    const Construction engine(spec);
    for (const auto& stage : stages) {
      ASSERT_EQ(engine.stage_size(stage.stage), stage.m()) << spec.render();
      for (const auto& c : stage.components) ASSERT_EQ(engine.component_at(c.id), c) << spec.render() << c.id.to_string();
    }
  }
}

TEST(Lazy, AgreesInReverseAccessOrder) {
  const auto spec = parse_spec("3,inf,2;cycle:4,2");
  const auto stages = build_stages(spec, 7);
  const Construction engine(spec);
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    for (auto c = it->components.rbegin(); c != it->components.rend(); ++c) ASSERT_EQ(engine.component_at(c->id), *c);
  }
}

TEST(Lazy, MemoRespectsBudget) {
  const Construction engine(parse_spec("2"), 5);
  EXPECT_NO_THROW(engine.component_at({5, 1}));
  EXPECT_THROW(
      {
        for (std::uint64_t i = 1; i <= 20; ++i) engine.component_at({5, i});
      },
      ResourceError);
  EXPECT_LE(engine.memo_size(), 5u);
}

TEST(Lazy, ConcurrentQueriesMatchEagerBuild) {
  const auto spec = parse_spec("2,3,inf;cycle:3,5");
  const auto stages = build_stages(spec, 7);
  const Construction engine(spec);
  std::vector<std::thread> workers;
  std::vector<int> mismatches(8, 0);
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      std::mt19937_64 rng(w);
      for (int q = 0; q < 4000; ++q) {
        const auto& stage = stages[std::uniform_int_distribution<std::size_t>(0, stages.size() - 1)(rng)];
        const auto& c = stage.at(std::uniform_int_distribution<std::uint64_t>(1, stage.m())(rng));
        if (!(engine.component_at(c.id) == c)) ++mismatches[w];
      }
    });
  }
  for (auto& t : workers) t.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}
