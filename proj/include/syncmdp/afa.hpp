#ifndef SYNCMDP_AFA_HPP
#define SYNCMDP_AFA_HPP

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "mdp.hpp"
#include "reach.hpp"
#include "sequence.hpp"
#include "state_set.hpp"

namespace syncmdp {

// One-letter alternating automaton; delta[q] is a disjunction of clauses,
// each clause a conjunction of states.
class Afa {
public:
  Afa() = default;
  Afa(std::vector<std::string> states, std::vector<std::vector<StateSet>> delta, StateSet accepting)
      : states_(std::move(states)), delta_(std::move(delta)), accepting_(std::move(accepting)) {
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (!index_.emplace(states_[i], static_cast<StateId>(i)).second)
        throw PreconditionError("duplicate state name '" + states_[i] + "'");
    if (delta_.size() != states_.size()) throw PreconditionError("one clause list per state is required");
    if (accepting_.universe() != states_.size()) throw PreconditionError("accepting set has the wrong universe");
    for (std::size_t q = 0; q < delta_.size(); ++q) {
      if (delta_[q].empty()) throw PreconditionError("state '" + states_[q] + "' has no clause");
      for (const auto &c : delta_[q]) {
        if (c.universe() != states_.size()) throw PreconditionError("clause has the wrong universe");
        if (c.empty()) throw PreconditionError("state '" + states_[q] + "' has an empty clause");
      }
    }
  }

  std::size_t num_states() const { return states_.size(); }
  const std::vector<std::string> &state_names() const { return states_; }
  const std::string &state_name(StateId q) const { return states_.at(q); }
  StateId state_index(const std::string &name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw LookupError("unknown state '" + name + "'");
    return it->second;
  }
  const std::vector<StateSet> &clauses(StateId q) const { return delta_.at(q); }
  const StateSet &accepting() const { return accepting_; }

private:
  std::vector<std::string> states_;
  std::vector<std::vector<StateSet>> delta_;
  StateSet accepting_;
  std::unordered_map<std::string, StateId> index_;
};

inline StateSet acc_step(const Afa &a, const StateSet &s) {
  StateSet out(a.num_states());
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (const auto &c : a.clauses(static_cast<StateId>(q)))
      if (c.subset_of(s)) {
        out.insert(static_cast<StateId>(q));
        break;
      }
  return out;
}

inline PreSequence pre_sequence(const Afa &a) {
  return detect_sequence(a.accepting(), [&](const StateSet &s) { return acc_step(a, s); });
}

inline StateSet acc_n(const Afa &a, std::size_t n) { return pre_sequence(a).at(n); }

// true when the language from q is empty
inline bool emptiness(const Afa &a, StateId q) { return !pre_sequence(a).appears(q); }

// true when the language from q is finite
inline bool finiteness(const Afa &a, StateId q) { return !pre_sequence(a).appears_periodically(q); }

inline bool universal_finiteness(const Afa &a) {
  for (const auto &s : pre_sequence(a).sets)
    if (s.empty()) return true;
  return false;
}

namespace detail {
inline std::string action_label(std::size_t k, std::size_t count) {
  if (count <= 26) return std::string(1, static_cast<char>('a' + k));
  return "a" + std::to_string(k + 1);
}
} // namespace detail

// Clause k of every state becomes action k with the uniform distribution over
// the clause; states with fewer clauses repeat their last one.
inline Mdp afa_to_mdp(const Afa &a) {
  std::size_t width = 1;
  for (std::size_t q = 0; q < a.num_states(); ++q) width = std::max(width, a.clauses(static_cast<StateId>(q)).size());
  std::vector<std::string> actions;
  for (std::size_t k = 0; k < width; ++k) actions.push_back(detail::action_label(k, width));
  std::vector<Row> rows;
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    const auto &cl = a.clauses(static_cast<StateId>(q));
    for (std::size_t k = 0; k < width; ++k) {
      const StateSet &c = cl[std::min(k, cl.size() - 1)];
      Rational w(BigInt(1), BigInt(c.count()));
      Row row;
      c.for_each([&](StateId p) { row.emplace_back(p, w); });
      rows.push_back(std::move(row));
    }
  }
  return Mdp(a.state_names(), std::move(actions), rows);
}

// delta(q) = OR over actions of AND post(q, a); duplicate clauses dropped.
inline Afa mdp_to_afa(const Mdp &m, const StateSet &t) {
  std::vector<std::vector<StateSet>> delta(m.num_states());
  for (std::size_t q = 0; q < m.num_states(); ++q)
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      StateSet c = post_set(m, static_cast<StateId>(q), static_cast<ActionId>(a));
      if (std::find(delta[q].begin(), delta[q].end(), c) == delta[q].end()) delta[q].push_back(std::move(c));
    }
  return Afa(m.state_names(), std::move(delta), t);
}

// first n primes starting from `from`
inline std::vector<std::size_t> primes_from(std::size_t from, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t c = std::max<std::size_t>(from, 2); out.size() < n; ++c) {
    bool prime = true;
    for (std::size_t d = 2; d * d <= c; ++d)
      if (c % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(c);
  }
  return out;
}

// Layout of the universal-finiteness gadget inside the built automaton.
struct UfGadget {
  Afa automaton;
  StateId entry = -1;                          // x
  std::vector<std::vector<StateId>> components; // C_i, in cycle order
  std::vector<std::size_t> lengths;             // p_i
};

// Gadget of the emptiness -> universal finiteness reduction; p_i is the
// (i+1)-th prime and n = |Q| components are used.
inline UfGadget build_uf_gadget_layout(const Afa &a, StateId q0) {
  const std::size_t nq = a.num_states();
  if (q0 < 0 || static_cast<std::size_t>(q0) >= nq) throw LookupError("q0 out of range");
  UfGadget g;
  g.lengths = primes_from(3, nq);
  std::size_t total = nq + 1;
  for (auto p : g.lengths) total += p;
  std::vector<std::string> names = a.state_names();
  auto fresh = [&](std::string base) {
    bool clash = true;
    while (clash) {
      clash = false;
      for (const auto &n : names)
        if (n == base) {
          base = "_" + base;
          clash = true;
          break;
        }
    }
    names.push_back(base);
    return static_cast<StateId>(names.size() - 1);
  };
  g.entry = fresh("x");
  for (std::size_t i = 0; i < g.lengths.size(); ++i) {
    std::vector<StateId> comp;
    for (std::size_t j = 0; j < g.lengths[i]; ++j)
      comp.push_back(fresh("c" + std::to_string(i + 1) + "_" + std::to_string(j)));
    g.components.push_back(std::move(comp));
  }
  std::vector<std::vector<StateSet>> delta(total);
  for (std::size_t q = 0; q < nq; ++q) {
    auto qi = static_cast<StateId>(q);
    if (qi == q0) delta[q].push_back(StateSet(total, {q0}));
    for (const auto &c : a.clauses(qi)) {
      StateSet lifted(total);
      c.for_each([&](StateId p) { lifted.insert(p); });
      lifted.insert(g.entry);
      delta[q].push_back(std::move(lifted));
    }
  }
  for (const auto &comp : g.components) delta[g.entry].push_back(StateSet(total, {comp[0]}));
  StateSet acc(total);
  a.accepting().for_each([&](StateId p) { acc.insert(p); });
  acc.insert(g.entry);
  for (const auto &comp : g.components)
    for (std::size_t j = 0; j < comp.size(); ++j) {
      delta[comp[j]].push_back(StateSet(total, {g.entry, comp[(j + 1) % comp.size()]}));
      if (j + 1 < comp.size()) acc.insert(comp[j]);
    }
  g.automaton = Afa(std::move(names), std::move(delta), std::move(acc));
  return g;
}

inline Afa build_uf_gadget(const Afa &a, StateId q0) { return build_uf_gadget_layout(a, q0).automaton; }

} // namespace syncmdp

#endif
