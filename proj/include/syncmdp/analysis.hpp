#ifndef SYNCMDP_ANALYSIS_HPP
#define SYNCMDP_ANALYSIS_HPP

#include "always_strongly.hpp"
#include "eventually.hpp"
#include "query.hpp"
#include "weakly.hpp"

namespace syncmdp {

namespace detail {
inline const char *procedure(SyncMode s, WinningMode w, TargetKind k) {
  switch (s) {
  case SyncMode::Always: return k == TargetKind::Sum ? "safety region" : "deterministic safety region";
  case SyncMode::Eventually:
    return w == WinningMode::Sure ? "Pre iteration" : w == WinningMode::LimitSure ? "Pre pair sequence" : "recurrent set search";
  case SyncMode::Weakly: return w == WinningMode::Sure ? "greatest self-reachable set" : "recurrent set search";
  case SyncMode::Strongly: return k == TargetKind::Sum ? "safety region and reachability" : "deterministic cycle product";
  }
  return "";
}
} // namespace detail

inline Verdict decide(const Mdp &m, const AnalysisQuery &q) {
  detail::check_query(m, q.initial, q.function.target);
  Verdict v;
  switch (q.sync) {
  case SyncMode::Always: v = dispatch_always(m, q); break;
  case SyncMode::Eventually: v = dispatch_eventually(m, q); break;
  case SyncMode::Weakly: v = dispatch_weakly(m, q); break;
  case SyncMode::Strongly: v = dispatch_strongly(m, q); break;
  }
  if (v.method.empty()) v.method = detail::procedure(q.sync, q.mode, q.function.kind);
  return v;
}

inline bool decide_answer(const Mdp &m, SyncMode s, WinningMode w, TargetKind k, const StateSet &t, const Distribution &d0) {
  return decide(m, make_query(s, w, k, t, d0)).answer;
}

} // namespace syncmdp

#endif
