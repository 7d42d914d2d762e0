#ifndef SYNCMDP_SYNTHESIS_HPP
#define SYNCMDP_SYNTHESIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "always_strongly.hpp"
#include "analysis.hpp"
#include "eventually.hpp"
#include "reach.hpp"
#include "strategy.hpp"
#include "weakly.hpp"

namespace syncmdp {

using Plan = std::vector<std::vector<ActionId>>; // plan[i][q]: action at step i

namespace detail {

// [t, Pre(t), ..., Pre^n(t)]
inline std::vector<StateSet> pre_chain(const Mdp &m, const StateSet &t, std::size_t n) {
  std::vector<StateSet> c{t};
  for (std::size_t i = 0; i < n; ++i) c.push_back(pre(m, c.back()));
  return c;
}

inline Distribution step(const Mdp &m, const Distribution &d, const std::vector<ActionId> &act) {
  Distribution out(m.num_states());
  for (std::size_t q = 0; q < d.size(); ++q) {
    const Rational &mass = d[static_cast<StateId>(q)];
    if (mass == 0) continue;
    ActionId a = act[q] < 0 ? 0 : act[q];
    auto succ = m.successors(static_cast<StateId>(q), a);
    auto prob = m.probabilities(static_cast<StateId>(q), a);
    for (std::size_t i = 0; i < succ.size(); ++i) out[succ[i]] += mass * prob[i];
  }
  return out;
}

inline Distribution run(const Mdp &m, Distribution d, const Plan &plan) {
  for (const auto &act : plan) d = step(m, d, act);
  return d;
}

inline Rational mass_in(const Distribution &d, const StateSet &s) {
  return eval_target(d, TargetFunction{TargetKind::Sum, s});
}

// n steps into t: states in Pre^{n-i}(t) move into Pre^{n-i-1}(t); others,
// if a fallback set u is given, do the same along the chain of u.
inline Plan countdown_plan(const Mdp &m, const StateSet &t, std::size_t n, const StateSet *u = nullptr) {
  auto tc = pre_chain(m, t, n);
  std::vector<StateSet> uc;
  if (u) uc = pre_chain(m, *u, n);
  Plan plan(n, std::vector<ActionId>(m.num_states(), 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < m.num_states(); ++q) {
      auto qi = static_cast<StateId>(q);
      ActionId a = -1;
      if (tc[n - i].contains(qi)) a = action_into(m, qi, tc[n - i - 1]);
      else if (u && uc[n - i].contains(qi)) a = action_into(m, qi, uc[n - i - 1]);
      plan[i][q] = a < 0 ? 0 : a;
    }
  return plan;
}

inline FiniteStrategy from_plan(const Mdp &m, const Plan &plan) {
  return FiniteStrategy::time_indexed(m.num_states(), m.num_actions(), plan);
}

} // namespace detail

// ---- sure eventually -------------------------------------------------------

struct CountdownPlan {
  FiniteStrategy strategy;
  std::size_t n = 0;
};

// Countdown with max(n, 1) modes; mode i plays into Pre^{n-i-1}(t).
inline CountdownPlan synth_sure_eventually_at(const Mdp &m, const Distribution &d0, const StateSet &t, std::size_t n) {
  auto chain = detail::pre_chain(m, t, n);
  if (!d0.support().subset_of(chain[n]))
    throw NotWinningError("initial support is not inside Pre^" + std::to_string(n) + "(t)");
  CountdownPlan res;
  res.n = n;
  res.strategy = detail::from_plan(m, detail::countdown_plan(m, t, n));
  for (std::size_t i = 0; i < res.strategy.num_modes(); ++i) res.strategy.set_mode_name(i, "c" + std::to_string(n - i));
  return res;
}

inline CountdownPlan synth_sure_eventually(const Mdp &m, const Distribution &d0, const StateSet &t) {
  auto n = sure_eventually_step(m, d0.support(), t);
  if (!n) throw NotWinningError("not sure eventually synchronizing");
  return synth_sure_eventually_at(m, d0, t, *n);
}

// ---- sure weakly -----------------------------------------------------------

struct SureWeaklyPlan {
  FiniteStrategy strategy;
  std::size_t m0 = 0, n = 1;
  StateSet core;
};

// m0 prefix modes reaching S, then n modes cycling S back into itself.
inline SureWeaklyPlan synth_sure_weakly(const Mdp &m, const Distribution &d0, const StateSet &t) {
  Verdict v = sure_weakly(m, d0, t);
  if (!v.answer) throw NotWinningError("not sure weakly synchronizing");
  SureWeaklyPlan res;
  res.core = *v.witness->set;
  res.m0 = *v.witness->step;
  res.n = *v.witness->period;
  FiniteStrategy s(m.num_states(), m.num_actions(), res.m0 + res.n);
  Plan prefix = detail::countdown_plan(m, res.core, res.m0);
  for (std::size_t i = 0; i < res.m0; ++i) {
    for (std::size_t q = 0; q < m.num_states(); ++q) s.set_next(i, static_cast<StateId>(q), prefix[i][q]);
    s.set_update_all(i, i + 1);
    s.set_mode_name(i, "reach" + std::to_string(i));
  }
  auto chain = detail::pre_chain(m, res.core, res.n);
  for (std::size_t p = 0; p < res.n; ++p) {
    std::size_t mode = res.m0 + p;
    for (std::size_t q = 0; q < m.num_states(); ++q) {
      auto qi = static_cast<StateId>(q);
      ActionId a = chain[res.n - p].contains(qi) ? action_into(m, qi, chain[res.n - p - 1]) : 0;
      s.set_next(mode, qi, a < 0 ? 0 : a);
    }
    s.set_update_all(mode, res.m0 + (p + 1) % res.n);
    s.set_mode_name(mode, "cycle" + std::to_string(p));
  }
  res.strategy = std::move(s);
  return res;
}

// ---- always ----------------------------------------------------------------

inline FiniteStrategy synth_always(const Mdp &m, const Distribution &d0, const StateSet &t, TargetKind f) {
  if (f == TargetKind::Sum) {
    if (!always_sum(m, d0, t).answer) throw NotWinningError("not always synchronizing");
    return FiniteStrategy::memoryless(m.num_actions(), sure_safety_certificate(m, t).action);
  }
  if (!always_max(m, d0, t).answer) throw NotWinningError("not always synchronizing");
  StateSet region = deterministic_safety_region(m, t);
  DeterministicGraph g = deterministic_graph(m);
  std::vector<ActionId> act(m.num_states(), 0);
  region.for_each([&](StateId q) {
    for (const auto &[p, a] : g.edges[q])
      if (region.contains(p)) {
        act[q] = a;
        return;
      }
  });
  return FiniteStrategy::memoryless(m.num_actions(), act);
}

// ---- strongly --------------------------------------------------------------

struct StronglyPlan {
  FiniteStrategy strategy;
  std::optional<DeterministicCycle> cycle;
};

inline StronglyPlan synth_strongly(const Mdp &m, const Distribution &d0, const StateSet &t, TargetKind f, WinningMode mode) {
  StronglyPlan res;
  if (mode == WinningMode::LimitSure) mode = WinningMode::AlmostSure;
  if (f == TargetKind::Sum) {
    if (!strongly_sum(m, d0, t, mode).answer) throw NotWinningError("not strongly synchronizing");
    auto safe = sure_safety_certificate(m, t);
    auto reach = mode == WinningMode::Sure ? sure_reach_certificate(m, safe.region)
                                           : almost_sure_reach_certificate(m, safe.region);
    std::vector<ActionId> act(m.num_states(), 0);
    for (std::size_t q = 0; q < m.num_states(); ++q) {
      ActionId a = safe.region.contains(static_cast<StateId>(q)) ? safe.action[q] : reach.action[q];
      act[q] = a < 0 ? 0 : a;
    }
    res.strategy = FiniteStrategy::memoryless(m.num_actions(), act);
    return res;
  }
  Verdict v = strongly_max(m, d0, t, mode);
  if (!v.answer) throw NotWinningError("not strongly synchronizing");
  const DeterministicCycle &c = *v.witness->cycle;
  const std::size_t ell = c.length();
  SupportMdp prod = cycle_counter_support(m, ell);
  StateSet target = StateSet::single(prod.num_states(), counter_state(c.states[0], 0, ell));
  auto cert = mode == WinningMode::Sure ? sure_reach_certificate(prod, target) : almost_sure_reach_certificate(prod, target);
  // mode = counter value -n mod ell
  FiniteStrategy s(m.num_states(), m.num_actions(), ell);
  for (std::size_t cnt = 0; cnt < ell; ++cnt) {
    std::size_t pos = (ell - cnt) % ell;
    for (std::size_t q = 0; q < m.num_states(); ++q) {
      auto qi = static_cast<StateId>(q);
      ActionId a = qi == c.states[pos] ? c.actions[pos] : cert.action[counter_state(qi, cnt, ell)];
      s.set_next(cnt, qi, a < 0 ? 0 : a);
    }
    s.set_update_all(cnt, (cnt + ell - 1) % ell);
    s.set_mode_name(cnt, "k" + std::to_string(cnt));
  }
  res.strategy = std::move(s);
  res.cycle = c;
  return res;
}

// ---- limit-sure eventually with support -----------------------------------

struct EpsilonPlan {
  FiniteStrategy strategy;
  std::size_t n = 0;
  Plan plan;
};

// Play the almost-sure reachability strategy of M_Z x [r] towards R x {0},
// switching to R-safe actions once on the R chain; when the mass on R at an
// aligned step reaches 1 - eps, finish with k steps into t (inside u).
inline EpsilonPlan synth_eventually_epsilon(const Mdp &m, const Distribution &d0, const StateSet &t, const StateSet &u,
                                            const Rational &eps) {
  if (eps <= 0) throw PreconditionError("eps must be positive");
  if (!t.subset_of(u)) throw PreconditionError("needs t ⊆ u");
  EpsilonPlan res;
  StateSet supp = d0.support();
  LimitSureCheck c = limit_sure_with_support(m, supp, t, u);
  if (!c.answer) throw NotWinningError("not limit-sure eventually synchronizing with the given support");
  if (c.sure) {
    res.plan = detail::countdown_plan(m, t, c.step);
  } else {
    PrePairSequence pairs = iterate_pre_pair(m, t, u);
    const std::size_t k = c.prefix, r = c.period, s = c.shift;
    const StateSet &R = pairs.pairs[k].first;
    const StateSet &Z = pairs.pairs[k].second;
    auto rl = periodic_layers(m, R, r);
    SupportMdp prod = mod_counter_support(m, Z, r);
    auto cert = almost_sure_reach_certificate(prod, lift(R, 0, r, prod.num_states()));
    Distribution d = d0;
    for (std::size_t j = 0;; ++j) {
      std::size_t p = (s + r - j % r) % r;
      if (p == 0 && detail::mass_in(d, R) >= 1 - eps) break;
      if (j >= limits().horizon_cap) throw ResourceError("epsilon schedule exceeded the horizon cap");
      std::vector<ActionId> act(m.num_states(), 0);
      for (std::size_t q = 0; q < m.num_states(); ++q) {
        auto qi = static_cast<StateId>(q);
        ActionId a = rl[p].contains(qi) ? action_into(m, qi, rl[(p + r - 1) % r]) : cert.action[counter_state(qi, p, r)];
        act[q] = a < 0 ? 0 : a;
      }
      d = detail::step(m, d, act);
      res.plan.push_back(std::move(act));
    }
    Plan tail = detail::countdown_plan(m, t, k, &u);
    res.plan.insert(res.plan.end(), tail.begin(), tail.end());
  }
  res.n = res.plan.size();
  res.strategy = detail::from_plan(m, res.plan);
  return res;
}

// ---- almost-sure schedules -------------------------------------------------

struct Schedule {
  FiniteStrategy strategy;
  Plan plan;
  StateSet recurrent;                // U
  std::vector<std::size_t> checkpoints; // step at which phase i attains 1 - 2^-i
};

inline Schedule synth_almost_sure_schedule(const Mdp &m, const Distribution &d0, const StateSet &t, SyncMode objective,
                                           std::size_t phases) {
  if (objective != SyncMode::Eventually && objective != SyncMode::Weakly)
    throw PreconditionError("schedules exist for eventually and weakly objectives");
  Verdict v = objective == SyncMode::Eventually ? almost_sure_eventually(m, d0, t) : almost_sure_weakly(m, d0, t);
  if (!v.answer) throw NotWinningError("not almost-sure synchronizing");
  Schedule res;
  res.recurrent = *v.witness->set;
  const StateSet &u = res.recurrent;
  if (phases == 0) {
    res.strategy = detail::from_plan(m, res.plan);
    return res;
  }
  res.plan = detail::countdown_plan(m, u, *v.witness->step);
  Distribution d = detail::run(m, d0, res.plan);
  const StateSet tu = t & u;
  const StateSet a = pre(m, tu), b = pre(m, u);
  for (std::size_t i = 1; i <= phases; ++i) {
    Rational eps = pow2_inverse(static_cast<unsigned>(i));
    EpsilonPlan e = objective == SyncMode::Eventually ? synth_eventually_epsilon(m, d, tu, u, eps)
                                                      : synth_eventually_epsilon(m, d, a, b, eps);
    d = detail::run(m, d, e.plan);
    res.plan.insert(res.plan.end(), e.plan.begin(), e.plan.end());
    if (objective == SyncMode::Weakly) {
      std::vector<ActionId> act(m.num_states(), 0);
      for (std::size_t q = 0; q < m.num_states(); ++q) {
        auto qi = static_cast<StateId>(q);
        ActionId x = a.contains(qi) ? action_into(m, qi, tu) : b.contains(qi) ? action_into(m, qi, u) : 0;
        act[q] = x < 0 ? 0 : x;
      }
      d = detail::step(m, d, act);
      res.plan.push_back(std::move(act));
    }
    res.checkpoints.push_back(res.plan.size());
  }
  res.strategy = detail::from_plan(m, res.plan);
  return res;
}

// ---- postconditions --------------------------------------------------------

struct ValidationReport {
  bool ok = false;
  std::string detail;
  Rational value = 0; // f at the decisive step
};

inline ValidationReport validate_at_step(const Mdp &m, const Distribution &d0, const FiniteStrategy &s,
                                         const TargetFunction &f, std::size_t n, const Rational &bound) {
  OutcomeSequence seq = symbolic_outcome(m, d0, s, n);
  ValidationReport r;
  r.value = eval_target(seq.dists[n], f);
  r.ok = r.value >= bound;
  r.detail = "f(d_" + std::to_string(n) + ") = " + to_string(r.value);
  return r;
}

// f(d_n) = 1 for every n in [N, horizon] with N <= horizon / 2
inline ValidationReport validate_sure_suffix(const Mdp &m, const Distribution &d0, const FiniteStrategy &s,
                                             const TargetFunction &f, std::size_t horizon) {
  OutcomeSequence seq = symbolic_outcome(m, d0, s, horizon);
  ValidationReport r;
  std::size_t first = horizon + 1;
  for (std::size_t k = horizon + 1; k-- > 0;) {
    if (eval_target(seq.dists[k], f) != 1) break;
    first = k;
  }
  r.ok = first <= horizon / 2;
  r.value = eval_target(seq.dists[horizon], f);
  r.detail = r.ok ? "f(d_n) = 1 for n in [" + std::to_string(first) + ", " + std::to_string(horizon) + "]"
                  : "no synchronized suffix within horizon " + std::to_string(horizon);
  return r;
}

inline ValidationReport validate_always(const Mdp &m, const Distribution &d0, const FiniteStrategy &s,
                                        const TargetFunction &f, std::size_t horizon) {
  OutcomeSequence seq = symbolic_outcome(m, d0, s, horizon);
  ValidationReport r;
  r.ok = true;
  for (std::size_t k = 0; k <= horizon; ++k)
    if (eval_target(seq.dists[k], f) != 1) {
      r.ok = false;
      r.detail = "f(d_" + std::to_string(k) + ") < 1";
      return r;
    }
  r.value = 1;
  r.detail = "f(d_n) = 1 for n <= " + std::to_string(horizon);
  return r;
}

inline ValidationReport validate_schedule(const Mdp &m, const Distribution &d0, const Schedule &sch, const StateSet &t) {
  ValidationReport r;
  r.ok = true;
  if (sch.checkpoints.empty()) {
    r.detail = "no phases";
    return r;
  }
  OutcomeSequence seq = symbolic_outcome(m, d0, sch.strategy, sch.checkpoints.back());
  for (std::size_t i = 0; i < sch.checkpoints.size(); ++i) {
    Rational v = detail::mass_in(seq.dists[sch.checkpoints[i]], t);
    Rational bound = 1 - pow2_inverse(static_cast<unsigned>(i + 1));
    r.detail += (i ? ", " : "") + std::string("phase ") + std::to_string(i + 1) + ": d_" +
                std::to_string(sch.checkpoints[i]) + "(t) = " + to_string(v);
    if (v < bound) r.ok = false;
    r.value = v;
  }
  return r;
}

inline ValidationReport validate_sure_weakly(const Mdp &m, const Distribution &d0, const SureWeaklyPlan &p,
                                             const StateSet &t, std::size_t rounds = 3) {
  std::size_t horizon = p.m0 + rounds * p.n;
  OutcomeSequence seq = symbolic_outcome(m, d0, p.strategy, horizon);
  ValidationReport r;
  r.ok = true;
  for (std::size_t k = 0; k <= rounds; ++k) {
    std::size_t at = p.m0 + k * p.n;
    if (detail::mass_in(seq.dists[at], t) != 1) {
      r.ok = false;
      r.detail = "d_" + std::to_string(at) + "(t) < 1";
      return r;
    }
  }
  r.value = 1;
  r.detail = "d_n(t) = 1 for n = " + std::to_string(p.m0) + " + k*" + std::to_string(p.n) + ", k <= " + std::to_string(rounds);
  return r;
}

// ---- dispatch --------------------------------------------------------------

struct SynthesisOptions {
  Rational eps{BigInt(1), BigInt(8)}; // limit-sure eventually
  std::size_t phases = 3;             // almost-sure schedules
  std::size_t horizon = 200;          // almost-sure strongly check
  unsigned report_exponent = 10;      // f(d_horizon) >= 1 - 2^-report_exponent
};

struct SynthesisResult {
  FiniteStrategy strategy;
  std::string construction;
  std::optional<std::size_t> step;
  std::vector<std::size_t> checkpoints;
  ValidationReport validation;
};

// Strategy for a winning query, validated by exact simulation. Max targets
// for eventually and weakly go through the singleton named by the verdict.
inline SynthesisResult synthesize(const Mdp &m, const AnalysisQuery &q, const SynthesisOptions &opt = {}) {
  Verdict v = decide(m, q);
  if (!v.answer) throw NotWinningError("query is not winning; nothing to synthesize");
  const Distribution &d0 = q.initial;
  StateSet t = q.function.target;
  if (q.function.kind == TargetKind::Max && (q.sync == SyncMode::Eventually || q.sync == SyncMode::Weakly))
    t = StateSet::single(m.num_states(), *v.witness->via);
  const TargetFunction sum{TargetKind::Sum, t};
  SynthesisResult res;
  switch (q.sync) {
  case SyncMode::Always:
    res.strategy = synth_always(m, d0, t, q.function.kind);
    res.construction = "memoryless safety";
    res.validation = validate_always(m, d0, res.strategy, q.function, opt.horizon);
    break;
  case SyncMode::Strongly: {
    auto p = synth_strongly(m, d0, t, q.function.kind, q.mode);
    res.strategy = p.strategy;
    if (p.cycle) res.step = p.cycle->length();
    res.construction = q.function.kind == TargetKind::Sum ? "reach then safety" : "cycle counter";
    if (q.mode == WinningMode::Sure) {
      std::size_t h = 2 * (m.num_states() + 1) * std::max<std::size_t>(res.strategy.num_modes(), 1) + 20;
      res.validation = validate_sure_suffix(m, d0, res.strategy, q.function, h);
    } else {
      res.validation = validate_at_step(m, d0, res.strategy, q.function, opt.horizon, 1 - pow2_inverse(opt.report_exponent));
    }
    break;
  }
  case SyncMode::Eventually:
    if (q.mode == WinningMode::Sure) {
      auto p = synth_sure_eventually(m, d0, t);
      res.strategy = p.strategy;
      res.step = p.n;
      res.construction = "countdown";
      res.validation = validate_at_step(m, d0, p.strategy, sum, p.n, 1);
    } else if (q.mode == WinningMode::LimitSure) {
      auto p = synth_eventually_epsilon(m, d0, t, m.all_states(), opt.eps);
      res.strategy = p.strategy;
      res.step = p.n;
      res.construction = "epsilon schedule";
      res.validation = validate_at_step(m, d0, p.strategy, sum, p.n, 1 - opt.eps);
    } else {
      auto p = synth_almost_sure_schedule(m, d0, t, SyncMode::Eventually, opt.phases);
      res.strategy = p.strategy;
      res.checkpoints = p.checkpoints;
      res.construction = "phased schedule";
      res.validation = validate_schedule(m, d0, p, t);
    }
    break;
  case SyncMode::Weakly:
    if (q.mode == WinningMode::Sure) {
      auto p = synth_sure_weakly(m, d0, t);
      res.strategy = p.strategy;
      res.step = p.m0;
      res.checkpoints = {p.m0, p.m0 + p.n};
      res.construction = "prefix then cycle";
      res.validation = validate_sure_weakly(m, d0, p, t);
    } else {
      auto p = synth_almost_sure_schedule(m, d0, t, SyncMode::Weakly, opt.phases);
      res.strategy = p.strategy;
      res.checkpoints = p.checkpoints;
      res.construction = "phased schedule";
      res.validation = validate_schedule(m, d0, p, t);
    }
    break;
  }
  return res;
}

} // namespace syncmdp

#endif
