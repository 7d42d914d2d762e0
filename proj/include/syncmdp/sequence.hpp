#ifndef SYNCMDP_SEQUENCE_HPP
#define SYNCMDP_SEQUENCE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "limits.hpp"
#include "state_set.hpp"

namespace syncmdp {

// Ultimately periodic sequence S_0 S_1 ... with S_{k+r} = S_k.
struct PreSequence {
  std::vector<StateSet> sets;
  std::size_t prefix = 0;
  std::size_t period = 1;

  const StateSet &at(std::size_t i) const {
    if (i < sets.size()) return sets[i];
    return sets[prefix + (i - prefix) % period];
  }

  // Smallest j >= max(k, 1) divisible by r. S_j equals S_L for every L >= k
  // that is a multiple of r, in particular for any common multiple of all
  // candidate periods.
  std::size_t aligned_index() const {
    std::size_t lo = prefix == 0 ? 1 : prefix;
    return (lo + period - 1) / period * period;
  }

  // smallest n with s ⊆ S_n
  std::optional<std::size_t> first_superset(const StateSet &s) const {
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (s.subset_of(sets[i])) return i;
    return std::nullopt;
  }

  bool appears(StateId q) const {
    for (const auto &s : sets)
      if (s.contains(q)) return true;
    return false;
  }
  bool appears_periodically(StateId q) const {
    for (std::size_t i = prefix; i < sets.size(); ++i)
      if (sets[i].contains(q)) return true;
    return false;
  }

  StateSet union_all() const {
    StateSet u(sets.empty() ? 0 : sets[0].universe());
    for (const auto &s : sets) u |= s;
    return u;
  }
};

template <class Step> PreSequence detect_sequence(StateSet start, Step &&step, std::size_t cap = limits().sequence_cap) {
  PreSequence seq;
  std::unordered_map<StateSet, std::size_t, StateSetHash> seen;
  StateSet cur = std::move(start);
  for (;;) {
    auto [it, fresh] = seen.emplace(cur, seq.sets.size());
    if (!fresh) {
      seq.prefix = it->second;
      seq.period = seq.sets.size() - it->second;
      return seq;
    }
    if (seq.sets.size() >= cap)
      throw ResourceError("predecessor sequence exceeded " + std::to_string(cap) + " distinct sets");
    seq.sets.push_back(cur);
    cur = step(seq.sets.back());
  }
}

struct SetPair {
  StateSet first, second;
  friend bool operator==(const SetPair &, const SetPair &) = default;
};

struct SetPairHash {
  std::size_t operator()(const SetPair &p) const { return p.first.hash() * 31 + p.second.hash(); }
};

struct PrePairSequence {
  std::vector<SetPair> pairs;
  std::size_t prefix = 0;
  std::size_t period = 1;
};

template <class Step>
PrePairSequence detect_pair_sequence(SetPair start, Step &&step, std::size_t cap = limits().sequence_cap) {
  PrePairSequence seq;
  std::unordered_map<SetPair, std::size_t, SetPairHash> seen;
  SetPair cur = std::move(start);
  for (;;) {
    auto [it, fresh] = seen.emplace(cur, seq.pairs.size());
    if (!fresh) {
      seq.prefix = it->second;
      seq.period = seq.pairs.size() - it->second;
      return seq;
    }
    if (seq.pairs.size() >= cap)
      throw ResourceError("predecessor pair sequence exceeded " + std::to_string(cap) + " pairs");
    seq.pairs.push_back(cur);
    const SetPair &last = seq.pairs.back();
    cur = SetPair{step(last.first), step(last.second)};
  }
}

} // namespace syncmdp

#endif
