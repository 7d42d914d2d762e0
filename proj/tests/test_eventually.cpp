#include <gtest/gtest.h>

#include <syncmdp.hpp>

using namespace syncmdp;

namespace {
StateSet S(const Mdp &m, std::initializer_list<const char *> names) {
  StateSet s(m.num_states());
  for (auto n : names) s.insert(m.state_index(n));
  return s;
}

Distribution at(const Mdp &m, const char *q) { return Distribution::dirac(m.num_states(), m.state_index(q)); }
} // namespace

TEST(SureEventually, Fig4Step) {
  Mdp m = fixture_mdp("fig4");
  Verdict v = sure_eventually(m, at(m, "q_init"), S(m, {"q_T"}));
  ASSERT_TRUE(v.answer);
  EXPECT_EQ(*v.witness->step, 7u);
  EXPECT_EQ(sure_eventually_step(m, S(m, {"q1_2", "q2_3"}), S(m, {"q_T"})), 1u);
  EXPECT_EQ(sure_eventually_step(m, S(m, {"q1_1", "q2_1"}), S(m, {"q_T"})), 6u);
  EXPECT_FALSE(sure_eventually_step(m, S(m, {"q1_1", "q_bot"}), S(m, {"q_T"})));
}

TEST(SureEventually, ZeroSteps) {
  Mdp m = fixture_mdp("fig1");
  Verdict v = sure_eventually(m, at(m, "q2"), S(m, {"q2"}));
  ASSERT_TRUE(v.answer);
  EXPECT_EQ(*v.witness->step, 0u);
}

TEST(Eventually, Fig1Modes) {
  Mdp m = fixture_mdp("fig1");
  Distribution d0 = at(m, "q_init");
  EXPECT_FALSE(sure_eventually(m, d0, S(m, {"q2"})).answer);
  EXPECT_FALSE(almost_sure_eventually(m, d0, S(m, {"q2"})).answer);
  Verdict ls = limit_sure_eventually(m, d0, S(m, {"q2"}));
  ASSERT_TRUE(ls.answer);
  EXPECT_EQ(*ls.witness->prefix, 1u);
  EXPECT_EQ(*ls.witness->period, 1u);
  EXPECT_FALSE(ls.witness->step);

  Verdict as = almost_sure_eventually(m, d0, S(m, {"q1"}));
  ASSERT_TRUE(as.answer);
  EXPECT_EQ(*as.witness->set, S(m, {"q_init", "q1"}));
  EXPECT_EQ(*as.witness->step, 0u);
  EXPECT_FALSE(sure_eventually(m, d0, S(m, {"q1"})).answer);
}

TEST(Eventually, Fig3) {
  Mdp m = fixture_mdp("fig3");
  Distribution d0 = at(m, "q_init");
  StateSet t = S(m, {"q2"});
  EXPECT_FALSE(sure_eventually(m, d0, t).answer);
  EXPECT_TRUE(almost_sure_eventually(m, d0, t).answer);
  EXPECT_TRUE(limit_sure_eventually(m, d0, t).answer);
}

TEST(Eventually, Fig13AbsorbingTarget) {
  Mdp m = fixture_mdp("fig13");
  Distribution d0 = at(m, "q_init");
  EXPECT_FALSE(sure_eventually(m, d0, S(m, {"q2"})).answer);
  EXPECT_TRUE(almost_sure_eventually(m, d0, S(m, {"q2"})).answer);
  EXPECT_FALSE(limit_sure_eventually(m, d0, S(m, {"q1"})).answer);
}

TEST(LimitSureWithSupport, StaysInsideU) {
  Mdp m = fixture_mdp("fig3");
  StateSet supp = S(m, {"q_init"});
  EXPECT_TRUE(limit_sure_with_support(m, supp, S(m, {"q2"}), S(m, {"q_init", "q2"})).answer);
  // the mass at q_init must be parked somewhere in u
  EXPECT_FALSE(limit_sure_with_support(m, supp, S(m, {"q2"}), S(m, {"q1", "q2"})).answer);
  EXPECT_THROW(limit_sure_with_support(m, supp, S(m, {"q2"}), S(m, {"q1"})), PreconditionError);
}

TEST(Eventually, MaxGoesThroughSingleton) {
  Mdp m = fixture_mdp("fig1");
  Verdict v = decide(m, make_query(SyncMode::Eventually, WinningMode::Sure, TargetKind::Max, S(m, {"q2", "q3"}), at(m, "q1")));
  ASSERT_TRUE(v.answer);
  EXPECT_EQ(*v.witness->via, m.state_index("q2"));
  EXPECT_EQ(*v.witness->step, 1u);
  // q_init keeps some mass at every step
  EXPECT_FALSE(decide_answer(m, SyncMode::Eventually, WinningMode::Sure, TargetKind::Sum, S(m, {"q2", "q3"}), at(m, "q_init")));
  EXPECT_THROW(decide(m, make_query(SyncMode::Eventually, WinningMode::Sure, TargetKind::Max, StateSet(4), at(m, "q1"))),
               PreconditionError);
}

TEST(Eventually, RegionsMatchDecide) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Mdp m = random_mdp(seed, 2 + seed % 4, 1 + seed % 2, 2);
    const std::size_t n = m.num_states();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 3) {
      StateSet t = StateSet::from_mask(n, mask);
      StateSet rs = sure_eventually_region(m, t), ra = almost_sure_eventually_region(m, t),
               rl = limit_sure_eventually_region(m, t);
      EXPECT_TRUE(rs.subset_of(ra));
      EXPECT_TRUE(ra.subset_of(rl));
      for (std::size_t q = 0; q < n; ++q) {
        Distribution d0 = Distribution::dirac(n, static_cast<StateId>(q));
        auto qi = static_cast<StateId>(q);
        EXPECT_EQ(sure_eventually(m, d0, t).answer, rs.contains(qi)) << seed << " " << mask << " " << q;
        EXPECT_EQ(almost_sure_eventually(m, d0, t).answer, ra.contains(qi)) << seed << " " << mask << " " << q;
        EXPECT_EQ(limit_sure_eventually(m, d0, t).answer, rl.contains(qi)) << seed << " " << mask << " " << q;
      }
    }
  }
}

TEST(Eventually, MethodNames) {
  Mdp m = fixture_mdp("fig1");
  auto q = make_query(SyncMode::Eventually, WinningMode::LimitSure, TargetKind::Sum, S(m, {"q2"}), at(m, "q_init"));
  EXPECT_EQ(decide(m, q).method, "Pre pair sequence");
  q.mode = WinningMode::Sure;
  EXPECT_EQ(decide(m, q).method, "Pre iteration");
}
