// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <syncmdp.hpp>

#include "support/afa_brute.hpp"
#include "support/cells.hpp"

using namespace syncmdp;
using testsupport::Cell;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string &why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

StateSet states(const Mdp &m, std::initializer_list<const char *> names) {
  StateSet s(m.num_states());
  for (const char *n : names) s.insert(m.state_index(n));
  return s;
}

Distribution at(const Mdp &m, const char *q) { return Distribution::dirac(m.num_states(), m.state_index(q)); }

struct MatrixRow {
  std::string fixture;
  SyncMode sync;
  WinningMode mode;
  TargetKind kind;
  std::vector<const char *> target;
  bool expected;
};

const std::vector<MatrixRow> &matrix() {
  using S = SyncMode;
  using W = WinningMode;
  using K = TargetKind;
  static const std::vector<MatrixRow> rows{
      {"fig1", S::Eventually, W::LimitSure, K::Sum, {"q2"}, true},
      {"fig1", S::Eventually, W::AlmostSure, K::Sum, {"q2"}, false},
      {"fig1", S::Eventually, W::Sure, K::Sum, {"q1"}, false},
      {"fig1", S::Strongly, W::AlmostSure, K::Max, {"q1"}, true},
      {"fig1", S::Strongly, W::Sure, K::Max, {"q1"}, false},
      {"fig3", S::Eventually, W::AlmostSure, K::Sum, {"q2"}, true},
      {"fig3", S::Weakly, W::AlmostSure, K::Sum, {"q2"}, true},
      {"fig9", S::Weakly, W::AlmostSure, K::Sum, {"q4"}, true},
      {"fig10", S::Weakly, W::LimitSure, K::Sum, {"q3"}, true},
      {"fig11", S::Strongly, W::AlmostSure, K::Max, {"q_init", "q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8"}, true},
      {"fig12", S::Strongly, W::Sure, K::Max, {"q2", "q3"}, true},
      {"fig13", S::Strongly, W::Sure, K::Sum, {"q_init", "q2"}, false},
      {"fig13", S::Strongly, W::AlmostSure, K::Sum, {"q_init", "q2"}, true},
  };
  return rows;
}

AnalysisQuery row_query(const Mdp &m, const MatrixRow &r) {
  StateSet t(m.num_states());
  for (const char *n : r.target) t.insert(m.state_index(n));
  return make_query(r.sync, r.mode, r.kind, t, at(m, "q_init"));
}

// ---------------------------------------------------------------------------

Outcome figure_matrix() {
  Outcome o;
  auto t0 = Clock::now();
  int checked = 0;
  for (const auto &r : matrix()) {
    Mdp m = fixture_mdp(r.fixture);
    bool got = decide(m, row_query(m, r)).answer;
    ++checked;
    if (got != r.expected)
      o.fail(r.fixture + " " + to_string(r.sync) + " " + to_string(r.mode) + " " + to_string(r.kind) + " gave " +
             (got ? "true" : "false"));
  }
  Mdp m13 = fixture_mdp("fig13");
  ++checked;
  if (sure_safety_region(m13, states(m13, {"q_init", "q2"})) != states(m13, {"q2"})) o.fail("fig13 safety region");
  double s = seconds_since(t0);
  if (s >= 1.0) o.fail("took " + std::to_string(s) + " s");
  if (o.ok) o.detail = std::to_string(checked) + " cells in " + std::to_string(s) + " s";
  return o;
}

Outcome afa_suite() {
  Outcome o;
  Afa a = fixture_afa("afa_fig5");
  StateId q0 = a.state_index("q_init");
  if (emptiness(a, q0)) o.fail("fig5 reported empty");
  if (finiteness(a, q0)) o.fail("fig5 reported finite");
  PreSequence seq = pre_sequence(a);
  for (std::size_t n : {3, 5, 7})
    if (!seq.at(n).contains(q0)) o.fail("length " + std::to_string(n) + " rejected");
  for (std::size_t n : {0, 1, 2, 4})
    if (seq.at(n).contains(q0)) o.fail("length " + std::to_string(n) + " accepted");
  std::size_t instances = 200, compared = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    std::size_t nq = 1 + i % 5;
    Afa r = random_afa(1000 + i, nq, 3, 3);
    testsupport::AfaBrute brute(r);
    PreSequence ps = pre_sequence(r);
    for (std::size_t q = 0; q < nq; ++q) {
      auto qi = static_cast<StateId>(q);
      for (std::size_t n = 0; n < 2 * brute.bound(); ++n, ++compared)
        if (ps.at(n).contains(qi) != brute.accepts(qi, n)) o.fail("random AFA " + std::to_string(i) + " differs at length " + std::to_string(n));
      if (emptiness(r, qi) != brute.empty(qi)) o.fail("random AFA " + std::to_string(i) + " emptiness");
      if (finiteness(r, qi) != brute.finite(qi)) o.fail("random AFA " + std::to_string(i) + " finiteness");
    }
  }
  if (o.ok) o.detail = "fig5 ok; " + std::to_string(instances) + " random automata, " + std::to_string(compared) + " memberships";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t checks = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const Mdp m = corpus_instance(i).mdp;
    const auto targets = testsupport::small_targets(m.num_states());
    for (std::size_t q = 0; q < m.num_states(); ++q) {
      SupportGraph g = support_graph(m, static_cast<StateId>(q));
      Distribution d0 = Distribution::dirac(m.num_states(), static_cast<StateId>(q));
      for (const auto &t : targets)
        for (auto s : testsupport::kSync)
          for (auto k : testsupport::kKinds) {
            ++checks;
            bool dec = decide(m, make_query(s, WinningMode::Sure, k, t, d0)).answer;
            if (dec != oracle_sure(g, t, s, k))
              o.fail("instance " + std::to_string(i) + " from q" + std::to_string(q) + " " + to_string(s) + " " + to_string(k));
          }
    }
  }
  double sec = seconds_since(t0);
  if (sec >= 60) o.fail("took " + std::to_string(sec) + " s");
  if (o.ok) o.detail = std::to_string(checks) + " verdicts in " + std::to_string(sec) + " s";
  return o;
}

Outcome lattice() {
  Outcome o;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const Mdp m = corpus_instance(i).mdp;
    for (const auto &t : testsupport::small_targets(m.num_states())) {
      auto r = testsupport::cell_regions(m, t);
      cells += r.size() * m.num_states();
      auto bad = testsupport::lattice_violations(r);
      if (!bad.empty()) o.fail("instance " + std::to_string(i) + ": " + bad.front());
    }
    // limit-sure equals almost-sure for weakly and strongly, through the deciders
    if (i % 5 == 0) {
      for (std::size_t q = 0; q < m.num_states(); ++q)
        for (const auto &t : testsupport::small_targets(m.num_states()))
          for (auto s : {SyncMode::Weakly, SyncMode::Strongly})
            for (auto k : testsupport::kKinds) {
              Distribution d0 = Distribution::dirac(m.num_states(), static_cast<StateId>(q));
              bool ls = decide(m, make_query(s, WinningMode::LimitSure, k, t, d0)).answer;
              bool as = decide(m, make_query(s, WinningMode::AlmostSure, k, t, d0)).answer;
              if (ls != as) o.fail("instance " + std::to_string(i) + " limit-sure != almost-sure " + to_string(s));
            }
    }
  }
  if (o.ok) o.detail = std::to_string(cells) + " cells";
  return o;
}

Outcome support_invariance() {
  Outcome o;
  for (std::size_t i = 0; i < 100; ++i) {
    const Mdp m = corpus_instance(i).mdp;
    const Mdp w = reweight(m, 77 + i);
    for (const auto &t : testsupport::small_targets(m.num_states()))
      if (testsupport::cell_regions(m, t) != testsupport::cell_regions(w, t)) o.fail("instance " + std::to_string(i));
    for (std::size_t q = 0; q < m.num_states(); ++q)
      for (const auto &t : testsupport::small_targets(m.num_states()))
        for (auto s : testsupport::kSync)
          for (auto mode : testsupport::kModes) {
            Distribution d0 = Distribution::dirac(m.num_states(), static_cast<StateId>(q));
            auto qm = make_query(s, mode, TargetKind::Sum, t, d0);
            if (decide(m, qm).answer != decide(w, qm).answer) o.fail("instance " + std::to_string(i) + " decide");
          }
  }
  if (o.ok) o.detail = "100 reweighted instances";
  return o;
}

Outcome reductions() {
  Outcome o;
  std::size_t dup_checks = 0, wrap_checks = 0, gadget_checks = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const Mdp m = corpus_instance(i).mdp;
    const std::size_t n = m.num_states();
    for (std::size_t keep = 0; keep < n; ++keep) {
      Duplication dup = duplicate_except_mapped(m, static_cast<StateId>(keep));
      StateSet all = dup.mdp.all_states();
      StateSet single = StateSet::single(n, static_cast<StateId>(keep));
      for (std::size_t q = 0; q < n; ++q) {
        Distribution d0 = Distribution::dirac(n, static_cast<StateId>(q));
        Distribution d1 = dup.map(d0);
        for (auto s : testsupport::kSync)
          for (auto mode : testsupport::kModes) {
            ++dup_checks;
            bool a = decide(m, make_query(s, mode, TargetKind::Sum, single, d0)).answer;
            bool b = decide(dup.mdp, make_query(s, mode, TargetKind::Max, all, d1)).answer;
            if (a != b)
              o.fail("duplicate_except instance " + std::to_string(i) + " " + to_string(s) + " " + to_string(mode));
          }
      }
    }
    // a spread initial distribution against its wrapped Dirac form
    StateSet spread(n);
    for (std::size_t q = 0; q < n; q += 2) spread.insert(static_cast<StateId>(q));
    if (n > 1) spread.insert(static_cast<StateId>(n - 1));
    Distribution d0 = Distribution::uniform(spread);
    auto [wm, fresh] = dirac_wrap(m, d0);
    Distribution dw = Distribution::dirac(wm.num_states(), fresh);
    for (const auto &t : testsupport::small_targets(n)) {
      StateSet tw(wm.num_states());
      t.for_each([&](StateId q) { tw.insert(q); });
      for (auto s : {SyncMode::Eventually, SyncMode::Weakly, SyncMode::Strongly})
        for (auto mode : testsupport::kModes)
          for (auto k : testsupport::kKinds) {
            ++wrap_checks;
            bool a = decide(m, make_query(s, mode, k, t, d0)).answer;
            bool b = decide(wm, make_query(s, mode, k, tw, dw)).answer;
            if (a != b) o.fail("dirac_wrap instance " + std::to_string(i) + " " + to_string(s) + " " + to_string(mode));
          }
    }
  }
  for (std::size_t i = 0; i < 100; ++i) {
    std::size_t nq = 1 + i % 4;
    Afa a = random_afa(5000 + i, nq, 3, 3);
    for (std::size_t q = 0; q < nq; ++q) {
      ++gadget_checks;
      bool e = emptiness(a, static_cast<StateId>(q));
      bool u = universal_finiteness(build_uf_gadget(a, static_cast<StateId>(q)));
      if (e != u) o.fail("gadget on automaton " + std::to_string(i));
    }
  }
  if (o.ok)
    o.detail = std::to_string(dup_checks) + " duplication, " + std::to_string(wrap_checks) + " wrapping, " +
               std::to_string(gadget_checks) + " gadget checks";
  return o;
}

Outcome closed_forms() {
  Outcome o;
  Mdp m1 = fixture_mdp("fig1");
  const StateId q1 = m1.state_index("q1"), q2 = m1.state_index("q2"), qi = m1.state_index("q_init");
  auto seq = symbolic_outcome(m1, at(m1, "q_init"), FiniteStrategy::memoryless(2, {0, 0, 0, 0}), 30);
  for (unsigned k = 0; k <= 30; ++k) {
    if (seq.dists[k][q1] != 1 - pow2_inverse(k)) o.fail("fig1 d_" + std::to_string(k) + "(q1)");
    if (seq.dists[k][qi] != pow2_inverse(k)) o.fail("fig1 d_" + std::to_string(k) + "(q_init)");
  }
  Mdp m3 = fixture_mdp("fig3");
  const StateId p2 = m3.state_index("q2");
  for (unsigned n = 0; n <= 20; ++n) {
    Plan plan(n, std::vector<ActionId>(3, 0));
    plan.push_back(std::vector<ActionId>(3, 1));
    auto s = symbolic_outcome(m3, at(m3, "q_init"), FiniteStrategy::time_indexed(3, 2, plan), n + 1);
    if (s.dists[n + 1][p2] != 1 - pow2_inverse(n)) o.fail("fig3 a^" + std::to_string(n) + " b");
  }
  for (unsigned k = 1; k <= 20; ++k) {
    auto e = synth_eventually_epsilon(m1, at(m1, "q_init"), StateSet::single(4, q2), m1.all_states(), pow2_inverse(k));
    auto s = symbolic_outcome(m1, at(m1, "q_init"), e.strategy, e.n);
    if (e.n != k + 1 || s.dists[k + 1][q2] != 1 - pow2_inverse(k)) o.fail("epsilon strategy for k=" + std::to_string(k));
  }
  if (o.ok) o.detail = "31 + 21 + 20 exact values";
  return o;
}

Outcome strategy_validation() {
  Outcome o;
  std::size_t validated = 0;
  auto need = [&](const ValidationReport &r, const std::string &what) {
    ++validated;
    if (!r.ok) o.fail(what + ": " + r.detail);
  };
  for (const auto &row : matrix()) {
    if (!row.expected) continue;
    Mdp m = fixture_mdp(row.fixture);
    AnalysisQuery q = row_query(m, row);
    const StateSet &t = q.function.target;
    std::string what = row.fixture + " " + to_string(row.sync) + " " + to_string(row.mode);
    try {
      if (row.sync == SyncMode::Strongly) {
        auto sp = synth_strongly(m, q.initial, t, row.kind, row.mode);
        if (row.mode == WinningMode::Sure)
          need(validate_sure_suffix(m, q.initial, sp.strategy, q.function, 60), what);
        else
          need(validate_at_step(m, q.initial, sp.strategy, q.function, 200, 1 - pow2_inverse(10)), what);
      } else if (row.mode == WinningMode::LimitSure && row.sync == SyncMode::Eventually) {
        for (unsigned i = 1; i <= 3; ++i) {
          auto e = synth_eventually_epsilon(m, q.initial, t, m.all_states(), pow2_inverse(i));
          need(validate_at_step(m, q.initial, e.strategy, q.function, e.n, 1 - pow2_inverse(i)), what);
        }
      } else {
        auto sch = synth_almost_sure_schedule(m, q.initial, t, row.sync, 3);
        need(validate_schedule(m, q.initial, sch, t), what);
      }
    } catch (const Error &e) {
      o.fail(what + ": " + e.what());
    }
  }
  Mdp m13 = fixture_mdp("fig13");
  StateSet q2 = states(m13, {"q2"});
  auto s13 = synth_always(m13, at(m13, "q2"), q2, TargetKind::Sum);
  need(validate_always(m13, at(m13, "q2"), s13, TargetFunction{TargetKind::Sum, q2}, 50), "fig13 safety");

  Mdp m4 = fixture_mdp("fig4:2");
  StateSet qt = states(m4, {"q_T"});
  TargetFunction ft{TargetKind::Sum, qt};
  Distribution d4 = at(m4, "q_init");
  auto c = synth_sure_eventually(m4, d4, qt);
  auto seq = symbolic_outcome(m4, d4, c.strategy, 8);
  bool hit = false;
  for (std::size_t n = 0; n <= 8; ++n) hit = hit || eval_target(seq.dists[n], ft) == 1;
  ++validated;
  if (!hit) o.fail("fig4(2) never reaches q_T with probability 1 within 8 steps");
  for (std::size_t n = 0; n <= 5; ++n) {
    bool threw = false;
    try {
      synth_sure_eventually_at(m4, d4, qt, n);
    } catch (const NotWinningError &) {
      threw = true;
    }
    if (!threw) o.fail("fig4(2) synthesized with " + std::to_string(n) + " steps");
  }
  // the winning plan cut down to fewer than 6 modes
  for (std::size_t k = 1; k < 6; ++k) {
    FiniteStrategy cut(m4.num_states(), m4.num_actions(), k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t q = 0; q < m4.num_states(); ++q)
        cut.set_next(i, static_cast<StateId>(q), c.strategy.next(i, static_cast<StateId>(q)));
      cut.set_update_all(i, std::min(i + 1, k - 1));
    }
    auto s = symbolic_outcome(m4, d4, cut, 60);
    for (const auto &d : s.dists)
      if (eval_target(d, ft) == 1) o.fail("truncated strategy with " + std::to_string(k) + " modes wins");
  }
  if (o.ok)
    o.detail = std::to_string(validated) + " postconditions; fig4(2) wins in " + std::to_string(c.n) + " steps with " +
               std::to_string(c.strategy.num_modes()) + " modes";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"figure verdict matrix", figure_matrix},
      {"alternating automata", afa_suite},
      {"support-graph oracle equivalence", oracle_equivalence},
      {"lattice invariants", lattice},
      {"support invariance", support_invariance},
      {"reduction consistency", reductions},
      {"closed-form traces", closed_forms},
      {"strategy witnesses", strategy_validation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.ok) ++failed;
    std::printf("%s %zu %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
