#ifndef SYNCMDP_MDP_HPP
#define SYNCMDP_MDP_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "state_set.hpp"

namespace syncmdp {

using ActionId = int;

struct Successor {
  StateId state;
  Rational prob;
};

using Row = std::vector<std::pair<StateId, Rational>>;

// Finite MDP. Rows are stored in CSR form, sorted by successor index,
// duplicate successors merged.
class Mdp {
public:
  Mdp() = default;

  // rows[q * |A| + a] lists the successors of (q, a)
  Mdp(std::vector<std::string> states, std::vector<std::string> actions, const std::vector<Row> &rows)
      : states_(std::move(states)), actions_(std::move(actions)) {
    if (actions_.empty() && !states_.empty()) throw PreconditionError("an MDP needs at least one action");
    index_names(states_, state_index_, "state");
    index_names(actions_, action_index_, "action");
    if (rows.size() != states_.size() * actions_.size())
      throw PreconditionError("transition table has " + std::to_string(rows.size()) + " rows, expected " +
                              std::to_string(states_.size() * actions_.size()));
    offsets_.reserve(rows.size() + 1);
    offsets_.push_back(0);
    for (const Row &row : rows) {
      std::map<StateId, Rational> merged;
      for (const auto &[q, p] : row) {
        if (q < 0 || static_cast<std::size_t>(q) >= states_.size())
          throw PreconditionError("successor index out of range");
        merged[q] += p;
      }
      for (auto &[q, p] : merged) {
        succ_.push_back(q);
        prob_.push_back(p);
      }
      offsets_.push_back(succ_.size());
    }
  }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions() const { return actions_.size(); }

  const std::vector<std::string> &state_names() const { return states_; }
  const std::vector<std::string> &action_names() const { return actions_; }
  const std::string &state_name(StateId q) const { return states_.at(q); }
  const std::string &action_name(ActionId a) const { return actions_.at(a); }

  StateId state_index(const std::string &name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) throw LookupError("unknown state '" + name + "'");
    return it->second;
  }
  ActionId action_index(const std::string &name) const {
    auto it = action_index_.find(name);
    if (it == action_index_.end()) throw LookupError("unknown action '" + name + "'");
    return it->second;
  }
  bool has_state(const std::string &name) const { return state_index_.count(name) != 0; }

  std::span<const StateId> successors(StateId q, ActionId a) const {
    std::size_t r = row_index(q, a);
    return {succ_.data() + offsets_[r], succ_.data() + offsets_[r + 1]};
  }
  std::span<const Rational> probabilities(StateId q, ActionId a) const {
    std::size_t r = row_index(q, a);
    return {prob_.data() + offsets_[r], prob_.data() + offsets_[r + 1]};
  }
  Rational prob(StateId q, ActionId a, StateId target) const {
    auto s = successors(q, a);
    auto it = std::lower_bound(s.begin(), s.end(), target);
    if (it == s.end() || *it != target) return Rational(0);
    return probabilities(q, a)[it - s.begin()];
  }
  Row row(StateId q, ActionId a) const {
    Row out;
    auto s = successors(q, a);
    auto p = probabilities(q, a);
    for (std::size_t i = 0; i < s.size(); ++i) out.emplace_back(s[i], p[i]);
    return out;
  }
  std::vector<Row> rows() const {
    std::vector<Row> out;
    for (std::size_t q = 0; q < num_states(); ++q)
      for (std::size_t a = 0; a < num_actions(); ++a) out.push_back(row(static_cast<StateId>(q), static_cast<ActionId>(a)));
    return out;
  }

  // smallest listed probability
  Rational eta() const {
    if (prob_.empty()) return Rational(0);
    return *std::min_element(prob_.begin(), prob_.end());
  }

  StateSet empty_set() const { return StateSet(num_states()); }
  StateSet all_states() const { return StateSet::full(num_states()); }

private:
  std::size_t row_index(StateId q, ActionId a) const {
    if (q < 0 || static_cast<std::size_t>(q) >= states_.size()) throw LookupError("state index out of range");
    if (a < 0 || static_cast<std::size_t>(a) >= actions_.size()) throw LookupError("action index out of range");
    return static_cast<std::size_t>(q) * actions_.size() + static_cast<std::size_t>(a);
  }

  static void index_names(const std::vector<std::string> &names, std::unordered_map<std::string, int> &idx,
                          const char *what) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!idx.emplace(names[i], static_cast<int>(i)).second)
        throw PreconditionError(std::string("duplicate ") + what + " name '" + names[i] + "'");
  }

  std::vector<std::string> states_, actions_;
  std::unordered_map<std::string, int> state_index_, action_index_;
  std::vector<std::size_t> offsets_;
  std::vector<StateId> succ_;
  std::vector<Rational> prob_;
};

inline StateSet post_set(const Mdp &m, StateId q, ActionId a) {
  StateSet s(m.num_states());
  for (StateId p : m.successors(q, a)) s.insert(p);
  return s;
}

inline std::vector<std::string> validate_mdp(const Mdp &m) {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < m.num_states(); ++q)
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      auto qi = static_cast<StateId>(q);
      auto ai = static_cast<ActionId>(a);
      std::string where = "(" + m.state_name(qi) + ", " + m.action_name(ai) + ")";
      auto probs = m.probabilities(qi, ai);
      if (probs.empty()) {
        out.push_back(where + ": no successors");
        continue;
      }
      Rational sum = 0;
      bool positive = true;
      for (const auto &p : probs) {
        sum += p;
        if (p <= 0) positive = false;
      }
      if (!positive) out.push_back(where + ": non-positive probability");
      if (sum != 1) out.push_back(where + ": probabilities sum to " + to_string(sum));
    }
  return out;
}

// Exact distribution over a fixed state space.
class Distribution {
public:
  Distribution() = default;
  explicit Distribution(std::size_t n) : mass_(n, Rational(0)) {}
  explicit Distribution(std::vector<Rational> mass) : mass_(std::move(mass)) {}

  static Distribution dirac(std::size_t n, StateId q) {
    Distribution d(n);
    d.mass_.at(q) = 1;
    return d;
  }
  static Distribution uniform(const StateSet &s) {
    Distribution d(s.universe());
    std::size_t c = s.count();
    if (c == 0) throw PreconditionError("uniform distribution over the empty set");
    Rational w(BigInt(1), BigInt(c));
    s.for_each([&](StateId q) { d.mass_[q] = w; });
    return d;
  }

  std::size_t size() const { return mass_.size(); }
  const Rational &operator[](StateId q) const { return mass_.at(q); }
  Rational &operator[](StateId q) { return mass_.at(q); }
  const std::vector<Rational> &masses() const { return mass_; }

  StateSet support() const {
    StateSet s(mass_.size());
    for (std::size_t q = 0; q < mass_.size(); ++q)
      if (mass_[q] > 0) s.insert(static_cast<StateId>(q));
    return s;
  }
  Rational total() const {
    Rational t = 0;
    for (const auto &p : mass_) t += p;
    return t;
  }
  bool valid() const {
    for (const auto &p : mass_)
      if (p < 0 || p > 1) return false;
    return total() == 1;
  }
  std::optional<StateId> dirac_state() const {
    StateSet s = support();
    if (s.count() == 1) return s.first();
    return std::nullopt;
  }

  friend bool operator==(const Distribution &, const Distribution &) = default;

private:
  std::vector<Rational> mass_;
};

enum class TargetKind { Sum, Max };

struct TargetFunction {
  TargetKind kind = TargetKind::Sum;
  StateSet target;
};

inline Rational eval_target(const Distribution &d, const TargetFunction &f) {
  if (f.kind == TargetKind::Sum) {
    Rational s = 0;
    f.target.for_each([&](StateId q) { s += d[q]; });
    return s;
  }
  if (f.target.empty()) throw PreconditionError("max over an empty target");
  Rational best = 0;
  f.target.for_each([&](StateId q) { best = std::max(best, d[q]); });
  return best;
}

namespace detail {
inline std::string fresh_name(const Mdp &m, std::string base) {
  while (m.has_state(base)) base += "'";
  return base;
}
} // namespace detail

// Fresh initial state whose every action yields d0.
inline std::pair<Mdp, StateId> dirac_wrap(const Mdp &m, const Distribution &d0) {
  if (d0.size() != m.num_states() || !d0.valid()) throw PreconditionError("initial distribution is not valid for the MDP");
  std::vector<std::string> names = m.state_names();
  names.push_back(detail::fresh_name(m, "init"));
  std::vector<Row> rows = m.rows();
  Row start;
  for (std::size_t q = 0; q < d0.size(); ++q)
    if (d0[static_cast<StateId>(q)] > 0) start.emplace_back(static_cast<StateId>(q), d0[static_cast<StateId>(q)]);
  for (std::size_t a = 0; a < m.num_actions(); ++a) rows.push_back(start);
  auto fresh = static_cast<StateId>(m.num_states());
  return {Mdp(std::move(names), m.action_names(), rows), fresh};
}

// Result of duplicating a set of states; copies[q] lists the new indices of q.
struct Duplication {
  Mdp mdp;
  std::vector<std::vector<StateId>> copies;

  Distribution map(const Distribution &d) const {
    Distribution out(mdp.num_states());
    for (std::size_t q = 0; q < copies.size(); ++q) {
      const auto &c = copies[q];
      Rational share = d[static_cast<StateId>(q)] / static_cast<int>(c.size());
      for (StateId x : c) out[x] = share;
    }
    return out;
  }
  StateSet map(const StateSet &s) const {
    StateSet out(mdp.num_states());
    s.for_each([&](StateId q) {
      for (StateId x : copies[q]) out.insert(x);
    });
    return out;
  }
};

// Every state in dup becomes two copies with the same out-rows; mass entering
// a duplicated state is split evenly between its copies.
inline Duplication duplicate_states(const Mdp &m, const StateSet &dup) {
  Duplication res;
  std::vector<std::string> names;
  res.copies.resize(m.num_states());
  for (std::size_t q = 0; q < m.num_states(); ++q) {
    auto qi = static_cast<StateId>(q);
    if (dup.contains(qi)) {
      for (int c = 1; c <= 2; ++c) {
        res.copies[q].push_back(static_cast<StateId>(names.size()));
        names.push_back(m.state_name(qi) + "#" + std::to_string(c));
      }
    } else {
      res.copies[q].push_back(static_cast<StateId>(names.size()));
      names.push_back(m.state_name(qi));
    }
  }
  std::vector<Row> rows(names.size() * m.num_actions());
  for (std::size_t q = 0; q < m.num_states(); ++q)
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      Row r;
      auto s = m.successors(static_cast<StateId>(q), static_cast<ActionId>(a));
      auto p = m.probabilities(static_cast<StateId>(q), static_cast<ActionId>(a));
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto &c = res.copies[s[i]];
        Rational share = p[i] / static_cast<int>(c.size());
        for (StateId x : c) r.emplace_back(x, share);
      }
      for (StateId x : res.copies[q]) rows[static_cast<std::size_t>(x) * m.num_actions() + a] = r;
    }
  res.mdp = Mdp(std::move(names), m.action_names(), rows);
  return res;
}

inline Duplication duplicate_except_mapped(const Mdp &m, StateId keep) {
  return duplicate_states(m, m.all_states() - StateSet::single(m.num_states(), keep));
}

inline Mdp duplicate_except(const Mdp &m, StateId keep) { return duplicate_except_mapped(m, keep).mdp; }

inline Duplication duplicate_outside_mapped(const Mdp &m, const StateSet &t) {
  return duplicate_states(m, t.complement());
}

inline Mdp duplicate_outside(const Mdp &m, const StateSet &t) { return duplicate_outside_mapped(m, t).mdp; }

} // namespace syncmdp

#endif
