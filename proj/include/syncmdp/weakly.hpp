#ifndef SYNCMDP_WEAKLY_HPP
#define SYNCMDP_WEAKLY_HPP

#include <optional>
#include <string>

#include "eventually.hpp"
#include "limits.hpp"
#include "mdp.hpp"
#include "query.hpp"
#include "reach.hpp"
#include "sequence.hpp"

namespace syncmdp {

// Pre^L(x) for L a common multiple of every period and prefix up to 2^|Q|.
inline StateSet pre_omega(const Mdp &m, const StateSet &x) {
  PreSequence seq = iterate_pre(m, x);
  return seq.at(seq.aligned_index());
}

// Greatest S ⊆ t with S ⊆ Pre^n(S) for some n >= 1. Valid sets are closed
// under union, and each has a period that divides L, so this is the greatest
// fixpoint of S -> t ∩ Pre^L(S).
inline StateSet sure_weakly_core(const Mdp &m, const StateSet &t) {
  StateSet s = t;
  for (;;) {
    StateSet next = t & pre_omega(m, s);
    if (next == s) return s;
    s = std::move(next);
  }
}

// smallest n >= 1 with s ⊆ Pre^n(s)
inline std::optional<std::size_t> self_period(const PreSequence &seq, const StateSet &s) {
  std::size_t end = seq.prefix + seq.period;
  for (std::size_t i = 1; i <= end; ++i)
    if (s.subset_of(seq.at(i))) return i;
  return std::nullopt;
}

inline Verdict sure_weakly(const Mdp &m, const Distribution &d0, const StateSet &t) {
  detail::check_query(m, d0, t);
  Verdict v;
  v.query = make_query(SyncMode::Weakly, WinningMode::Sure, TargetKind::Sum, t, d0);
  StateSet core = sure_weakly_core(m, t);
  if (core.empty()) return v;
  PreSequence seq = iterate_pre(m, core);
  auto mstep = seq.first_superset(d0.support());
  if (!mstep) return v;
  v.answer = true;
  v.witness = Witness{};
  v.witness->set = core;
  v.witness->step = *mstep;
  v.witness->period = self_period(seq, core).value();
  return v;
}

inline StateSet sure_weakly_region(const Mdp &m, const StateSet &t) {
  StateSet core = sure_weakly_core(m, t);
  if (core.empty()) return core;
  return iterate_pre(m, core).union_all();
}

// Per-period search: for n = 1..cap the greatest fixpoint of
// S -> t ∩ Pre^n(S). Incomplete when 2^|Q| exceeds the cap, which is then
// reported as a resource error instead of a negative answer.
inline Verdict sure_weakly_by_period(const Mdp &m, const Distribution &d0, const StateSet &t,
                                     std::size_t cap = limits().period_search_cap) {
  detail::check_query(m, d0, t);
  Verdict v;
  v.query = make_query(SyncMode::Weakly, WinningMode::Sure, TargetKind::Sum, t, d0);
  StateSet supp = d0.support();
  std::size_t bound = m.num_states() >= 63 ? cap : std::min<std::size_t>(cap, std::size_t{1} << m.num_states());
  for (std::size_t n = 1; n <= bound; ++n) {
    StateSet s = t;
    for (;;) {
      StateSet next = t & pre_power(m, s, n);
      if (next == s) break;
      s = std::move(next);
    }
    if (s.empty()) continue;
    PreSequence seq = iterate_pre(m, s);
    if (auto mstep = seq.first_superset(supp)) {
      v.answer = true;
      v.witness = Witness{};
      v.witness->set = s;
      v.witness->step = *mstep;
      v.witness->period = n;
      return v;
    }
  }
  if (m.num_states() >= 63 || (std::size_t{1} << m.num_states()) > cap)
    throw ResourceError("sure weakly period search exhausted its cap of " + std::to_string(cap));
  return v;
}

// Every S ⊆ t checked directly; for validation on small targets.
inline bool sure_weakly_exhaustive(const Mdp &m, const StateSet &supp, const StateSet &t) {
  auto members = t.members();
  if (members.size() > 20) throw ResourceError("exhaustive sure weakly needs |t| <= 20");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << members.size()); ++mask) {
    StateSet s(m.num_states());
    for (std::size_t i = 0; i < members.size(); ++i)
      if (mask >> i & 1) s.insert(members[i]);
    PreSequence seq = iterate_pre(m, s);
    if (self_period(seq, s) && seq.first_superset(supp)) return true;
  }
  return false;
}

// U in the almost-sure characterisation: from support U, limit-sure
// eventually in Pre(t ∩ U) while keeping the mass in Pre(U).
inline bool almost_sure_weakly_recurrent(const Mdp &m, const StateSet &u, const StateSet &t) {
  StateSet a = pre(m, t & u);
  if (a.empty()) return false;
  StateSet b = pre(m, u);
  return limit_sure_with_support(m, u, a, b).answer;
}

inline Verdict almost_sure_weakly(const Mdp &m, const Distribution &d0, const StateSet &t) {
  detail::check_query(m, d0, t);
  detail::check_enumerable(m);
  Verdict v;
  v.query = make_query(SyncMode::Weakly, WinningMode::AlmostSure, TargetKind::Sum, t, d0);
  StateSet supp = d0.support();
  detail::for_each_subset_by_size(m.num_states(), 1, [&](const StateSet &u) {
    if (!u.intersects(t)) return false;
    auto n = sure_eventually_step(m, supp, u);
    if (!n) return false;
    if (!almost_sure_weakly_recurrent(m, u, t)) return false;
    v.answer = true;
    v.witness = Witness{};
    v.witness->set = u;
    v.witness->step = *n;
    return true;
  });
  return v;
}

inline StateSet almost_sure_weakly_region(const Mdp &m, const StateSet &t) {
  detail::check_enumerable(m);
  StateSet out(m.num_states());
  detail::for_each_subset_by_size(m.num_states(), 1, [&](const StateSet &u) {
    if (!u.intersects(t)) return false;
    StateSet reach = sure_eventually_region(m, u);
    if (reach.subset_of(out)) return false;
    if (almost_sure_weakly_recurrent(m, u, t)) out |= reach;
    return false;
  });
  return out;
}

inline constexpr const char *kAlmostSureEquivalence = "decided via almost-sure equivalence";

inline Verdict limit_sure_weakly(const Mdp &m, const Distribution &d0, const StateSet &t) {
  Verdict v = almost_sure_weakly(m, d0, t);
  v.query.mode = WinningMode::LimitSure;
  v.method = kAlmostSureEquivalence;
  if (v.witness) v.witness->note = kAlmostSureEquivalence;
  return v;
}

inline Verdict dispatch_weakly(const Mdp &m, const AnalysisQuery &q) {
  if (q.sync != SyncMode::Weakly) throw PreconditionError("not a weakly query");
  auto decide_sum = [&](const StateSet &t) {
    switch (q.mode) {
    case WinningMode::Sure: return sure_weakly(m, q.initial, t);
    case WinningMode::AlmostSure: return almost_sure_weakly(m, q.initial, t);
    case WinningMode::LimitSure: return limit_sure_weakly(m, q.initial, t);
    }
    return Verdict{};
  };
  if (q.function.kind == TargetKind::Sum) {
    Verdict v = decide_sum(q.function.target);
    v.query = q;
    return v;
  }
  Verdict v = detail::max_by_singletons(q, decide_sum);
  if (q.mode == WinningMode::LimitSure && !v.answer) v.method += "; " + std::string(kAlmostSureEquivalence);
  return v;
}

} // namespace syncmdp

#endif
