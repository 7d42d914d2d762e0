#ifndef SYNCMDP_STRATEGY_HPP
#define SYNCMDP_STRATEGY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "limits.hpp"
#include "mdp.hpp"

namespace syncmdp {

// Pure finite-memory transducer. next[mode][q] is the action played,
// update[(mode * |A| + a) * |Q| + q'] the mode after playing a into q'.
class FiniteStrategy {
public:
  FiniteStrategy() = default;
  FiniteStrategy(std::size_t states, std::size_t actions, std::size_t modes)
      : nq_(states), na_(actions), names_(modes), next_(modes * states, -1), update_(modes * actions * states, 0) {
    for (std::size_t i = 0; i < modes; ++i) names_[i] = "m" + std::to_string(i);
  }

  // one mode, next[q] fixed
  static FiniteStrategy memoryless(std::size_t actions, const std::vector<ActionId> &next) {
    FiniteStrategy s(next.size(), actions, 1);
    for (std::size_t q = 0; q < next.size(); ++q) s.set_next(0, static_cast<StateId>(q), next[q] < 0 ? 0 : next[q]);
    return s;
  }

  // mode = time step; plan[i][q] is the action at step i, the last mode repeats
  static FiniteStrategy time_indexed(std::size_t states, std::size_t actions, const std::vector<std::vector<ActionId>> &plan) {
    std::size_t modes = std::max<std::size_t>(plan.size(), 1);
    FiniteStrategy s(states, actions, modes);
    for (std::size_t i = 0; i < modes; ++i) {
      for (std::size_t q = 0; q < states; ++q) {
        ActionId a = plan.empty() ? 0 : plan[i][q];
        s.set_next(i, static_cast<StateId>(q), a < 0 ? 0 : a);
      }
      s.set_update_all(i, std::min(i + 1, modes - 1));
    }
    return s;
  }

  std::size_t num_modes() const { return names_.size(); }
  std::size_t num_states() const { return nq_; }
  std::size_t num_actions() const { return na_; }
  std::size_t initial() const { return initial_; }
  void set_initial(std::size_t m) { initial_ = m; }
  const std::string &mode_name(std::size_t m) const { return names_.at(m); }
  void set_mode_name(std::size_t m, std::string n) { names_.at(m) = std::move(n); }

  ActionId next(std::size_t mode, StateId q) const { return next_.at(mode * nq_ + static_cast<std::size_t>(q)); }
  void set_next(std::size_t mode, StateId q, ActionId a) { next_.at(mode * nq_ + static_cast<std::size_t>(q)) = a; }

  std::size_t update(std::size_t mode, ActionId a, StateId q) const {
    return update_.at((mode * na_ + static_cast<std::size_t>(a)) * nq_ + static_cast<std::size_t>(q));
  }
  void set_update(std::size_t mode, ActionId a, StateId q, std::size_t to) {
    update_.at((mode * na_ + static_cast<std::size_t>(a)) * nq_ + static_cast<std::size_t>(q)) = to;
  }
  void set_update_all(std::size_t mode, std::size_t to) {
    for (std::size_t a = 0; a < na_; ++a)
      for (std::size_t q = 0; q < nq_; ++q) set_update(mode, static_cast<ActionId>(a), static_cast<StateId>(q), to);
  }

  friend bool operator==(const FiniteStrategy &, const FiniteStrategy &) = default;

private:
  std::size_t nq_ = 0, na_ = 0;
  std::vector<std::string> names_;
  std::size_t initial_ = 0;
  std::vector<ActionId> next_;
  std::vector<std::size_t> update_;
};

struct OutcomeSequence {
  std::vector<Distribution> dists;
  std::size_t horizon() const { return dists.empty() ? 0 : dists.size() - 1; }
};

// Exact distribution sequence d_0..d_horizon under s, tracking the joint
// (mode, state) mass.
inline OutcomeSequence symbolic_outcome(const Mdp &m, const Distribution &d0, const FiniteStrategy &s, std::size_t horizon) {
  if (horizon > limits().horizon_cap)
    throw ResourceError("horizon " + std::to_string(horizon) + " exceeds cap " + std::to_string(limits().horizon_cap));
  if (s.num_states() != m.num_states() || s.num_actions() != m.num_actions())
    throw PreconditionError("strategy does not match the MDP");
  if (d0.size() != m.num_states()) throw PreconditionError("initial distribution does not match the MDP");
  OutcomeSequence out;
  out.dists.reserve(horizon + 1);
  out.dists.push_back(d0);
  std::map<std::pair<std::size_t, StateId>, Rational> joint;
  for (std::size_t q = 0; q < d0.size(); ++q)
    if (d0[static_cast<StateId>(q)] > 0) joint[{s.initial(), static_cast<StateId>(q)}] = d0[static_cast<StateId>(q)];
  for (std::size_t k = 0; k < horizon; ++k) {
    std::map<std::pair<std::size_t, StateId>, Rational> nj;
    Distribution d(m.num_states());
    for (const auto &[key, mass] : joint) {
      auto [mode, q] = key;
      ActionId a = s.next(mode, q);
      if (a < 0) throw PreconditionError("strategy has no move in mode " + s.mode_name(mode) + " at " + m.state_name(q));
      auto succ = m.successors(q, a);
      auto prob = m.probabilities(q, a);
      for (std::size_t i = 0; i < succ.size(); ++i) {
        Rational p = mass * prob[i];
        nj[{s.update(mode, a, succ[i]), succ[i]}] += p;
        d[succ[i]] += p;
      }
    }
    joint.swap(nj);
    out.dists.push_back(std::move(d));
  }
  return out;
}

struct OutcomeClass {
  bool always = false, eventually = false, weakly_within = false, strongly_within = false;
};

// Weak/strong flags look at the last third of the horizon.
inline OutcomeClass classify_outcome(const OutcomeSequence &seq, const TargetFunction &f, const Rational &p) {
  OutcomeClass c;
  const std::size_t n = seq.horizon();
  const std::size_t window = n - n / 3;
  c.always = true;
  c.strongly_within = true;
  for (std::size_t k = 0; k <= n && k < seq.dists.size(); ++k) {
    bool hit = eval_target(seq.dists[k], f) >= p;
    c.always = c.always && hit;
    c.eventually = c.eventually || hit;
    if (k >= window) {
      c.weakly_within = c.weakly_within || hit;
      c.strongly_within = c.strongly_within && hit;
    }
  }
  if (seq.dists.empty()) c = OutcomeClass{};
  return c;
}

} // namespace syncmdp

#endif
