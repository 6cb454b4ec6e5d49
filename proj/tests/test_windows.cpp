#include "pfwin/mutation.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pfwin;

TEST(Build, W0HasTwentyOneGenerators) {
  const auto w = build_window({0, 0, 0});
  ASSERT_EQ(w.generators.size(), 21u);
  EXPECT_EQ(w.generators.front(), (SBundle{0, -6}));
  EXPECT_EQ(w.generators.back(), (SBundle{2, 0}));
  EXPECT_TRUE(std::is_sorted(w.generators.begin(), w.generators.end()));
  EXPECT_TRUE(w.contains({1, -3}));
  EXPECT_FALSE(w.contains({1, 1}));
  EXPECT_EQ(w.index_of({1, -6}), 7u);
  EXPECT_THROW((void)w.index_of({3, 0}), InvalidInput);
}

TEST(Build, RejectsBadTuples) {
  try {
    build_window({0, 2, 2});
    FAIL() << "expected InvalidWindow";
  } catch (const InvalidWindow &e) {
    EXPECT_NE(std::string(e.what()).find("m1 <= m0 + 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(build_window({1, 0, 0}), InvalidWindow);
  EXPECT_THROW(build_window({0, 0, 2}), InvalidWindow);
  EXPECT_NO_THROW(build_window({0, 1, 2}));
}

TEST(Build, NotationWindows) {
  EXPECT_EQ(notation_window(0), (WindowTuple{0, 0, 0}));
  EXPECT_EQ(notation_window(3), (WindowTuple{-1, -1, -1}));
  EXPECT_THROW(notation_window(4), InvalidInput);
}

TEST(Build, W3IsW0TwistedDown) {
  std::vector<SBundle> tw;
  for (auto g : build_window(notation_window(0)).generators) tw.push_back(g.twisted(-1));
  EXPECT_EQ(tw, build_window(notation_window(3)).generators);
}

TEST(Build, AdjacentNotationWindowsShareTwentyGenerators) {
  for (int k = 0; k < 3; ++k) {
    const auto a = build_window(notation_window(k)), b = build_window(notation_window(k + 1));
    std::size_t shared = 0;
    for (auto g : a.generators) shared += b.contains(g);
    EXPECT_EQ(shared, 20u);
    const SBundle moved{k, 0};
    EXPECT_TRUE(a.contains(moved));
    EXPECT_FALSE(b.contains(moved));
    EXPECT_TRUE(b.contains(moved.twisted(-7)));
  }
}

TEST(Exceptionality, W0) {
  const auto rep = check_exceptionality(build_window({0, 0, 0}));
  EXPECT_TRUE(rep.verdict);
  EXPECT_TRUE(rep.acyclic);
  EXPECT_TRUE(rep.cycle.empty());
  EXPECT_EQ(rep.order.size(), 21u);
  EXPECT_TRUE(is_exceptional_order(rep.order));
  EXPECT_GT(rep.edge_count, 0u);
}

TEST(Exceptionality, AdsWindow) {
  const auto rep = check_exceptionality(build_window(ads_window()));
  EXPECT_TRUE(rep.verdict);
  EXPECT_TRUE(is_exceptional_order(rep.order));
}

TEST(Exceptionality, RandomValidWindows) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> start(-15, 15), step(0, 1);
  for (int s = 0; s < 50; ++s) {
    WindowTuple m{start(rng), 0, 0};
    m[1] = m[0] + step(rng);
    m[2] = m[1] + step(rng);
    const auto rep = check_exceptionality(build_window(m), 2);
    EXPECT_TRUE(rep.verdict) << tuple_string(m);
    EXPECT_TRUE(is_exceptional_order(rep.order)) << tuple_string(m);
    EXPECT_EQ(rep.lefschetz_order_valid, is_exceptional_order(lefschetz_order(m))) << tuple_string(m);
  }
}

TEST(Exceptionality, TwistInvariance) {
  const auto base = check_exceptionality(build_window({0, 1, 1}));
  for (int k : {-5, 3, 11}) {
    const auto rep = check_exceptionality(build_window({k, k + 1, k + 1}));
    EXPECT_EQ(rep.edge_count, base.edge_count);
    ASSERT_EQ(rep.order.size(), base.order.size());
    for (std::size_t i = 0; i < rep.order.size(); ++i) EXPECT_EQ(rep.order[i], base.order[i].twisted(k));
  }
}

TEST(Exceptionality, JobsDoNotChangeTheReport) {
  const auto w = build_window({6, 7, 8});
  const auto a = check_exceptionality(w, 1), b = check_exceptionality(w, 4);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.edge_count, b.edge_count);
}

TEST(Exceptionality, CycleWitness) {
  // O and O(7) have Hom both ways once Serre duality kicks in: O(7) -> O has H^10.
  WindowSpec w{{0, 0, 0}, {{0, 0}, {0, 7}}};
  const auto rep = check_exceptionality(w);
  EXPECT_FALSE(rep.acyclic);
  EXPECT_FALSE(rep.verdict);
  ASSERT_EQ(rep.cycle.size(), 2u);
  EXPECT_NE(rep.cycle[0], rep.cycle[1]);
}

TEST(Exceptionality, OrderFunctionRejectsBackwardsOrder) {
  EXPECT_TRUE(is_exceptional_order({{0, -1}, {0, 0}}));
  EXPECT_FALSE(is_exceptional_order({{0, 0}, {0, -1}}));
}

TEST(Mutation, ChainReplays) {
  const auto c = mutation_chain();
  EXPECT_TRUE(c.ok());
  EXPECT_TRUE(c.d_is_a_twisted);
  ASSERT_EQ(c.steps.size(), 4u);
  for (const auto &s : c.steps) {
    EXPECT_TRUE(s.is_sink) << s.from << "->" << s.to;
    EXPECT_TRUE(s.set_equal) << s.from << "->" << s.to;
    EXPECT_TRUE(s.serre_identity) << s.from << "->" << s.to;
  }
}

TEST(Mutation, NonSinkIsReported) {
  const auto s = mutate_window("A", {0, 0, 0}, {0, -6}, "B", {-1, 0, 0});
  EXPECT_FALSE(s.is_sink);
  EXPECT_FALSE(s.set_equal);
  EXPECT_FALSE(s.ok());
}

TEST(Mutation, ObjectOutsideCollection) {
  EXPECT_THROW(mutate_window("A", {0, 0, 0}, {0, 3}, "B", {-1, 0, 0}), InvalidInput);
}
