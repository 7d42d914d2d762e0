#include <gtest/gtest.h>

#include <algorithm>

#include <syncmdp.hpp>

using namespace syncmdp;

namespace {
StateSet S(const Mdp &m, std::initializer_list<const char *> names) {
  StateSet s(m.num_states());
  for (auto n : names) s.insert(m.state_index(n));
  return s;
}

Distribution at(const Mdp &m, const char *q) { return Distribution::dirac(m.num_states(), m.state_index(q)); }

// two halves meet on the c0/c1 loop in phase, but land on c0 only at odd steps
Mdp rot_mdp() {
  return MdpBuilder({"s", "x", "y", "c0", "c1"}, {"a"})
      .row("s", "a", {{"c0", Rational(1, 2)}, {"x", Rational(1, 2)}})
      .all("x", "y")
      .all("y", "c0")
      .all("c0", "c1")
      .all("c1", "c0")
      .build();
}

bool is_cycle_of(const Mdp &m, const DeterministicCycle &c) {
  for (std::size_t i = 0; i < c.length(); ++i) {
    auto succ = m.successors(c.states[i], c.actions[i]);
    if (succ.size() != 1 || succ[0] != c.states[(i + 1) % c.length()]) return false;
  }
  return c.length() > 0;
}
} // namespace

TEST(DeterministicGraph, Fig11Components) {
  Mdp m = fixture_mdp("fig11");
  DeterministicGraph g = deterministic_graph(m);
  EXPECT_TRUE(g.has_edge(m.state_index("q1"), m.state_index("q3")));
  EXPECT_FALSE(g.has_edge(m.state_index("q_init"), m.state_index("q1")));
  EXPECT_EQ(g.edge_count(), 9u);
  auto comps = strongly_connected_components(g);
  std::size_t total = 0;
  std::vector<std::vector<StateId>> big;
  for (auto &c : comps) {
    total += c.size();
    if (nontrivial(g, c)) big.push_back(c);
  }
  EXPECT_EQ(total, m.num_states());
  ASSERT_EQ(big.size(), 1u);
  std::sort(big[0].begin(), big[0].end());
  EXPECT_EQ(big[0], (std::vector<StateId>{1, 2, 3, 4}));
}

TEST(DeterministicGraph, SelfLoopIsNontrivial) {
  Mdp m = fixture_mdp("fig12");
  DeterministicGraph g = deterministic_graph(m);
  auto comps = strongly_connected_components(g);
  std::size_t loops = 0;
  for (auto &c : comps)
    if (nontrivial(g, c)) ++loops;
  EXPECT_EQ(loops, 2u);
  auto cycles = candidate_cycles(m);
  ASSERT_EQ(cycles.size(), 2u);
  for (auto &c : cycles) EXPECT_TRUE(is_cycle_of(m, c));
}

TEST(Cycles, RotationKeepsEdges) {
  Mdp m = fixture_mdp("fig11");
  auto cycles = candidate_cycles(m);
  ASSERT_EQ(cycles.size(), 1u);
  const auto &c = cycles[0];
  for (std::size_t j = 0; j < c.length(); ++j) {
    DeterministicCycle r = rotate(c, j);
    EXPECT_TRUE(is_cycle_of(m, r));
    EXPECT_EQ(r.states[0], c.states[j]);
  }
}

TEST(Always, SafetyRegions) {
  Mdp m = fixture_mdp("fig12");
  EXPECT_EQ(deterministic_safety_region(m, S(m, {"q2", "q3"})), S(m, {"q2", "q3"}));
  EXPECT_EQ(deterministic_safety_region(m, S(m, {"q1", "q2", "q3"})), S(m, {"q1", "q2", "q3"}));
  EXPECT_EQ(deterministic_safety_region(m, S(m, {"q_init", "q1", "q2"})), S(m, {"q1"}));
  EXPECT_TRUE(always_max(m, at(m, "q2"), S(m, {"q2", "q3"})).answer);
  EXPECT_FALSE(always_max(m, at(m, "q_init"), S(m, {"q2", "q3"})).answer);
  EXPECT_TRUE(always_sum(m, at(m, "q1"), S(m, {"q1", "q2", "q3"})).answer);
  EXPECT_FALSE(always_sum(m, at(m, "q_init"), S(m, {"q_init", "q1", "q2"})).answer);
}

TEST(Always, MaxNeedsDirac) {
  Mdp m = fixture_mdp("fig12");
  Distribution d(std::vector<Rational>{0, 0, Rational(1, 2), Rational(1, 2)});
  EXPECT_TRUE(always_sum(m, d, S(m, {"q2", "q3"})).answer);
  EXPECT_FALSE(always_max(m, d, S(m, {"q2", "q3"})).answer);
}

TEST(Always, ModesCoincide) {
  Mdp m = fixture_mdp("fig13");
  for (auto w : {WinningMode::Sure, WinningMode::AlmostSure, WinningMode::LimitSure}) {
    Verdict v = decide(m, make_query(SyncMode::Always, w, TargetKind::Sum, S(m, {"q1", "q2"}), at(m, "q1")));
    EXPECT_TRUE(v.answer);
    EXPECT_EQ(v.method, "all winning modes coincide");
  }
}

TEST(StronglySum, Fig13) {
  Mdp m = fixture_mdp("fig13");
  StateSet t = S(m, {"q_init", "q2"});
  EXPECT_FALSE(strongly_sum(m, at(m, "q_init"), t, WinningMode::Sure).answer);
  EXPECT_TRUE(strongly_sum(m, at(m, "q_init"), t, WinningMode::AlmostSure).answer);
  EXPECT_TRUE(strongly_sum(m, at(m, "q_init"), t, WinningMode::LimitSure).answer);
  EXPECT_TRUE(strongly_sum(m, at(m, "q1"), t, WinningMode::Sure).answer);
}

TEST(StronglyMax, Fig12) {
  Mdp m = fixture_mdp("fig12");
  Verdict v = strongly_max(m, at(m, "q_init"), S(m, {"q2", "q3"}), WinningMode::Sure);
  ASSERT_TRUE(v.answer);
  ASSERT_TRUE(v.witness->cycle);
  EXPECT_EQ(v.witness->cycle->length(), 2u);
  EXPECT_EQ(*v.witness->period, 2u);
  EXPECT_TRUE(is_cycle_of(m, *v.witness->cycle));
  // q1 can wait but cannot stay in {q1}: nothing else joins it
  EXPECT_FALSE(strongly_max(m, at(m, "q_init"), S(m, {"q1"}), WinningMode::AlmostSure).answer);
  EXPECT_TRUE(strongly_max(m, at(m, "q1"), S(m, {"q1"}), WinningMode::Sure).answer);
}

TEST(StronglyMax, Fig11) {
  Mdp m = fixture_mdp("fig11");
  StateSet all = m.all_states();
  EXPECT_FALSE(strongly_max(m, at(m, "q_init"), all, WinningMode::Sure).answer);
  Verdict v = strongly_max(m, at(m, "q_init"), all, WinningMode::AlmostSure);
  ASSERT_TRUE(v.answer);
  EXPECT_TRUE(is_cycle_of(m, *v.witness->cycle));
  Verdict l = strongly_max(m, at(m, "q_init"), all, WinningMode::LimitSure);
  EXPECT_TRUE(l.answer);
  EXPECT_EQ(l.method, "decided via almost-sure equivalence");
}

TEST(StronglyMax, RotationMatters) {
  Mdp m = rot_mdp();
  auto cycles = candidate_cycles(m);
  ASSERT_EQ(cycles.size(), 1u);
  std::size_t hits = 0;
  for (std::size_t j = 0; j < 2; ++j) {
    StateSet r = cycle_reach_region(m, rotate(cycles[0], j), WinningMode::Sure);
    if (r.contains(counter_state(m.state_index("s"), 0, 2))) ++hits;
  }
  EXPECT_EQ(hits, 1u);
  Verdict v = strongly_max(m, at(m, "s"), S(m, {"c0", "c1"}), WinningMode::Sure);
  ASSERT_TRUE(v.answer);
  EXPECT_EQ(v.witness->cycle->states[0], m.state_index("c1"));
}

TEST(StronglyMax, OutOfPhaseHalves) {
  // one half takes a path one step longer and never catches up
  Mdp m = MdpBuilder({"s", "x", "c0", "c1"}, {"a"})
              .row("s", "a", {{"c0", Rational(1, 2)}, {"x", Rational(1, 2)}})
              .all("x", "c0")
              .all("c0", "c1")
              .all("c1", "c0")
              .build();
  EXPECT_FALSE(strongly_max(m, at(m, "s"), S(m, {"c0", "c1"}), WinningMode::AlmostSure).answer);
  EXPECT_TRUE(strongly_sum(m, at(m, "s"), S(m, {"c0", "c1"}), WinningMode::Sure).answer);
}

TEST(StronglyMax, EmptyTargetRejected) {
  Mdp m = fixture_mdp("fig12");
  EXPECT_THROW(strongly_max(m, at(m, "q1"), StateSet(4), WinningMode::Sure), PreconditionError);
}
