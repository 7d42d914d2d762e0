#ifndef SYNCMDP_QUERY_HPP
#define SYNCMDP_QUERY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mdp.hpp"
#include "state_set.hpp"

namespace syncmdp {

enum class SyncMode { Always, Eventually, Weakly, Strongly };
enum class WinningMode { Sure, AlmostSure, LimitSure };

inline const char *to_string(SyncMode s) {
  switch (s) {
  case SyncMode::Always: return "always";
  case SyncMode::Eventually: return "eventually";
  case SyncMode::Weakly: return "weakly";
  case SyncMode::Strongly: return "strongly";
  }
  return "?";
}

inline const char *to_string(WinningMode w) {
  switch (w) {
  case WinningMode::Sure: return "sure";
  case WinningMode::AlmostSure: return "almost-sure";
  case WinningMode::LimitSure: return "limit-sure";
  }
  return "?";
}

inline const char *to_string(TargetKind k) { return k == TargetKind::Sum ? "sum" : "max"; }

inline SyncMode parse_sync_mode(const std::string &s) {
  if (s == "always") return SyncMode::Always;
  if (s == "eventually") return SyncMode::Eventually;
  if (s == "weakly") return SyncMode::Weakly;
  if (s == "strongly") return SyncMode::Strongly;
  throw ParseError("unknown objective '" + s + "'");
}

inline WinningMode parse_winning_mode(const std::string &s) {
  if (s == "sure") return WinningMode::Sure;
  if (s == "almost-sure" || s == "almost") return WinningMode::AlmostSure;
  if (s == "limit-sure" || s == "limit") return WinningMode::LimitSure;
  throw ParseError("unknown winning mode '" + s + "'");
}

inline TargetKind parse_target_kind(const std::string &s) {
  if (s == "sum") return TargetKind::Sum;
  if (s == "max") return TargetKind::Max;
  throw ParseError("unknown target function '" + s + "'");
}

struct AnalysisQuery {
  SyncMode sync = SyncMode::Eventually;
  WinningMode mode = WinningMode::Sure;
  TargetFunction function;
  Distribution initial;
};

// q̂_0 ... q̂_{ℓ-1} with actions[i] moving q̂_i to q̂_{i+1 mod ℓ} with probability 1
struct DeterministicCycle {
  std::vector<StateId> states;
  std::vector<ActionId> actions;
  std::size_t length() const { return states.size(); }
};

struct Witness {
  std::optional<std::size_t> step;   // eventually: n; weakly: m
  std::optional<std::size_t> prefix; // k of the pair sequence
  std::optional<std::size_t> period; // r, or the weakly period n
  std::optional<std::size_t> shift;  // s
  std::optional<StateSet> set;       // U or S
  std::optional<DeterministicCycle> cycle;
  std::optional<StateId> via;        // singleton used for a max target
  std::string note;
};

struct Verdict {
  AnalysisQuery query;
  bool answer = false;
  std::optional<Witness> witness;
  std::string method;
};

inline AnalysisQuery make_query(SyncMode s, WinningMode w, TargetKind k, const StateSet &t, const Distribution &d0) {
  return AnalysisQuery{s, w, TargetFunction{k, t}, d0};
}

namespace detail {
inline void check_query(const Mdp &m, const Distribution &d0, const StateSet &t) {
  if (d0.size() != m.num_states() || !d0.valid())
    throw PreconditionError("initial distribution is not a distribution over the MDP's states");
  if (t.universe() != m.num_states()) throw PreconditionError("target set has the wrong universe");
}

// k-subsets of {0..n-1} in lexicographic order of their sorted members, by
// increasing k; f returns true to stop
template <class F> bool for_each_subset_by_size(std::size_t n, std::size_t kmin, F &&f) {
  for (std::size_t k = kmin; k <= n; ++k) {
    std::vector<StateId> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<StateId>(i);
    for (;;) {
      StateSet s(n);
      for (StateId q : idx) s.insert(q);
      if (f(s)) return true;
      std::size_t i = k;
      while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}
} // namespace detail

} // namespace syncmdp

#endif
