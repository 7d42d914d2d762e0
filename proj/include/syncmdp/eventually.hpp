#ifndef SYNCMDP_EVENTUALLY_HPP
#define SYNCMDP_EVENTUALLY_HPP

#include <optional>
#include <string>

#include "limits.hpp"
#include "mdp.hpp"
#include "query.hpp"
#include "reach.hpp"
#include "sequence.hpp"

namespace syncmdp {

// Support-level outcome of the support-restricted limit-sure check.
struct LimitSureCheck {
  bool answer = false;
  bool sure = false;
  std::size_t step = 0;                   // sure branch: n
  std::size_t prefix = 0, period = 1, shift = 0; // product branch: k, r, s
};

// smallest n with supp ⊆ Pre^n(t)
inline std::optional<std::size_t> sure_eventually_step(const Mdp &m, const StateSet &supp, const StateSet &t) {
  return iterate_pre(m, t).first_superset(supp);
}

// Limit-sure eventually in t with the whole mass in u, from any distribution
// with support supp. Needs t ⊆ u.
inline LimitSureCheck limit_sure_with_support(const Mdp &m, const StateSet &supp, const StateSet &t, const StateSet &u) {
  if (!t.subset_of(u)) throw PreconditionError("limit-sure eventually with support needs t ⊆ u");
  LimitSureCheck res;
  if (auto n = sure_eventually_step(m, supp, t)) {
    res.answer = res.sure = true;
    res.step = *n;
    return res;
  }
  PrePairSequence pairs = iterate_pre_pair(m, t, u);
  const std::size_t k = pairs.prefix, r = pairs.period;
  const StateSet &R = pairs.pairs[k].first;
  const StateSet &Z = pairs.pairs[k].second;
  res.prefix = k;
  res.period = r;
  if (R.empty()) return res;
  SupportMdp prod = mod_counter_support(m, Z, r);
  StateSet region = almost_sure_reach_region(prod, lift(R, 0, r, prod.num_states()));
  for (std::size_t s = 0; s < r; ++s) {
    bool all = true;
    supp.for_each([&](StateId q) {
      if (!region.contains(counter_state(q, s, r))) all = false;
    });
    if (all) {
      res.answer = true;
      res.shift = s;
      return res;
    }
  }
  return res;
}

namespace detail {
inline Verdict eventually_verdict(const Mdp &, SyncMode s, WinningMode w, const StateSet &t, const Distribution &d0) {
  Verdict v;
  v.query = make_query(s, w, TargetKind::Sum, t, d0);
  return v;
}

inline Witness witness_of(const LimitSureCheck &c) {
  Witness w;
  if (c.sure) {
    w.step = c.step;
  } else {
    w.prefix = c.prefix;
    w.period = c.period;
    w.shift = c.shift;
  }
  return w;
}

inline void check_enumerable(const Mdp &m) {
  if (m.num_states() > static_cast<std::size_t>(limits().subset_enumeration_max))
    throw ResourceError("subset enumeration needs |Q| <= " + std::to_string(limits().subset_enumeration_max));
}
} // namespace detail

inline Verdict sure_eventually(const Mdp &m, const Distribution &d0, const StateSet &t) {
  detail::check_query(m, d0, t);
  Verdict v = detail::eventually_verdict(m, SyncMode::Eventually, WinningMode::Sure, t, d0);
  if (auto n = sure_eventually_step(m, d0.support(), t)) {
    v.answer = true;
    v.witness = Witness{};
    v.witness->step = *n;
  }
  return v;
}

inline Verdict limit_sure_eventually_support(const Mdp &m, const Distribution &d0, const StateSet &t, const StateSet &u) {
  detail::check_query(m, d0, t);
  Verdict v = detail::eventually_verdict(m, SyncMode::Eventually, WinningMode::LimitSure, t, d0);
  LimitSureCheck c = limit_sure_with_support(m, d0.support(), t, u);
  v.answer = c.answer;
  if (c.answer) {
    v.witness = detail::witness_of(c);
    v.witness->set = u;
  }
  return v;
}

inline Verdict limit_sure_eventually(const Mdp &m, const Distribution &d0, const StateSet &t) {
  Verdict v = limit_sure_eventually_support(m, d0, t, m.all_states());
  if (v.witness) v.witness->set.reset();
  return v;
}

// Sets U in the almost-sure characterisation: every distribution with
// support U is limit-sure eventually synchronizing in t ∩ U with support U.
inline bool almost_sure_eventually_recurrent(const Mdp &m, const StateSet &u, const StateSet &t) {
  StateSet tu = t & u;
  if (tu.empty()) return false;
  return limit_sure_with_support(m, u, tu, u).answer;
}

inline Verdict almost_sure_eventually(const Mdp &m, const Distribution &d0, const StateSet &t) {
  detail::check_query(m, d0, t);
  detail::check_enumerable(m);
  Verdict v = detail::eventually_verdict(m, SyncMode::Eventually, WinningMode::AlmostSure, t, d0);
  StateSet supp = d0.support();
  detail::for_each_subset_by_size(m.num_states(), 1, [&](const StateSet &u) {
    if (!u.intersects(t)) return false;
    auto n = sure_eventually_step(m, supp, u);
    if (!n) return false;
    if (!almost_sure_eventually_recurrent(m, u, t)) return false;
    v.answer = true;
    v.witness = Witness{};
    v.witness->set = u;
    v.witness->step = *n;
    return true;
  });
  return v;
}

// Dirac-winning states, one pass for all initial states.
inline StateSet sure_eventually_region(const Mdp &m, const StateSet &t) { return iterate_pre(m, t).union_all(); }

inline StateSet limit_sure_eventually_region(const Mdp &m, const StateSet &t) {
  StateSet out(m.num_states());
  StateSet sure = sure_eventually_region(m, t);
  PrePairSequence pairs = iterate_pre_pair(m, t, m.all_states());
  const std::size_t k = pairs.prefix, r = pairs.period;
  const StateSet &R = pairs.pairs[k].first;
  const StateSet &Z = pairs.pairs[k].second;
  out = sure;
  if (R.empty()) return out;
  SupportMdp prod = mod_counter_support(m, Z, r);
  StateSet region = almost_sure_reach_region(prod, lift(R, 0, r, prod.num_states()));
  for (std::size_t q = 0; q < m.num_states(); ++q)
    for (std::size_t s = 0; s < r; ++s)
      if (region.contains(counter_state(static_cast<StateId>(q), s, r))) out.insert(static_cast<StateId>(q));
  return out;
}

inline StateSet almost_sure_eventually_region(const Mdp &m, const StateSet &t) {
  detail::check_enumerable(m);
  StateSet out(m.num_states());
  detail::for_each_subset_by_size(m.num_states(), 1, [&](const StateSet &u) {
    if (!u.intersects(t)) return false;
    StateSet reach = sure_eventually_region(m, u);
    if (reach.subset_of(out)) return false;
    if (almost_sure_eventually_recurrent(m, u, t)) out |= reach;
    return false;
  });
  return out;
}

namespace detail {
template <class F> Verdict max_by_singletons(const AnalysisQuery &q, F &&decide_sum) {
  if (q.function.target.empty()) throw PreconditionError("max over an empty target");
  Verdict v;
  v.query = q;
  v.method = "union of singleton sum verdicts";
  q.function.target.for_each([&](StateId s) {
    if (v.answer) return;
    Verdict one = decide_sum(StateSet::single(q.function.target.universe(), s));
    if (one.answer) {
      v.answer = true;
      v.witness = one.witness ? *one.witness : Witness{};
      v.witness->via = s;
      if (!one.method.empty()) v.method += "; " + one.method;
    }
  });
  return v;
}
} // namespace detail

inline Verdict dispatch_eventually(const Mdp &m, const AnalysisQuery &q) {
  if (q.sync != SyncMode::Eventually) throw PreconditionError("not an eventually query");
  auto decide_sum = [&](const StateSet &t) {
    switch (q.mode) {
    case WinningMode::Sure: return sure_eventually(m, q.initial, t);
    case WinningMode::AlmostSure: return almost_sure_eventually(m, q.initial, t);
    case WinningMode::LimitSure: return limit_sure_eventually(m, q.initial, t);
    }
    return Verdict{};
  };
  if (q.function.kind == TargetKind::Sum) {
    Verdict v = decide_sum(q.function.target);
    v.query = q;
    return v;
  }
  return detail::max_by_singletons(q, decide_sum);
}

} // namespace syncmdp

#endif
