#ifndef SYNCMDP_REACH_HPP
#define SYNCMDP_REACH_HPP

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "limits.hpp"
#include "mdp.hpp"
#include "sequence.hpp"
#include "state_set.hpp"

namespace syncmdp {

// Support-only transition structure; products are built as these internally.
class SupportMdp {
public:
  SupportMdp() = default;
  SupportMdp(std::size_t n, std::size_t na) : n_(n), na_(na) { off_.push_back(0); }

  template <class G> static SupportMdp of(const G &g) {
    SupportMdp s(g.num_states(), g.num_actions());
    for (std::size_t q = 0; q < g.num_states(); ++q)
      for (std::size_t a = 0; a < g.num_actions(); ++a) {
        auto succ = g.successors(static_cast<StateId>(q), static_cast<ActionId>(a));
        s.push_row(succ.begin(), succ.end());
      }
    return s;
  }

  template <class It> void push_row(It first, It last) {
    succ_.insert(succ_.end(), first, last);
    off_.push_back(succ_.size());
  }
  void push_single(StateId q) {
    succ_.push_back(q);
    off_.push_back(succ_.size());
  }

  std::size_t num_states() const { return n_; }
  std::size_t num_actions() const { return na_; }
  std::span<const StateId> successors(StateId q, ActionId a) const {
    std::size_t r = static_cast<std::size_t>(q) * na_ + static_cast<std::size_t>(a);
    return {succ_.data() + off_[r], succ_.data() + off_[r + 1]};
  }

private:
  std::size_t n_ = 0, na_ = 0;
  std::vector<std::size_t> off_;
  std::vector<StateId> succ_;
};

namespace detail {

template <class G> bool row_within(const G &g, StateId q, ActionId a, const StateSet &t) {
  for (StateId p : g.successors(q, a))
    if (!t.contains(p)) return false;
  return true;
}

template <class G> bool row_meets(const G &g, StateId q, ActionId a, const StateSet &t) {
  for (StateId p : g.successors(q, a))
    if (t.contains(p)) return true;
  return false;
}

// pred[q'] = all (q, a) with q' in post(q, a), encoded as q * |A| + a
template <class G> std::vector<std::vector<std::size_t>> predecessors(const G &g) {
  std::vector<std::vector<std::size_t>> pred(g.num_states());
  for (std::size_t q = 0; q < g.num_states(); ++q)
    for (std::size_t a = 0; a < g.num_actions(); ++a)
      for (StateId p : g.successors(static_cast<StateId>(q), static_cast<ActionId>(a)))
        pred[p].push_back(q * g.num_actions() + a);
  return pred;
}

inline void check_state_cap(std::size_t n, const char *what) {
  if (n > limits().state_cap)
    throw ResourceError(std::string(what) + " would have " + std::to_string(n) + " states, cap is " +
                        std::to_string(limits().state_cap));
}

} // namespace detail

template <class G> StateSet pre(const G &g, const StateSet &t) {
  StateSet out(g.num_states());
  for (std::size_t q = 0; q < g.num_states(); ++q)
    for (std::size_t a = 0; a < g.num_actions(); ++a)
      if (detail::row_within(g, static_cast<StateId>(q), static_cast<ActionId>(a), t)) {
        out.insert(static_cast<StateId>(q));
        break;
      }
  return out;
}

// Pre^n(t)
template <class G> StateSet pre_power(const G &g, StateSet t, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) t = pre(g, t);
  return t;
}

template <class G> PreSequence iterate_pre(const G &g, const StateSet &t) {
  return detect_sequence(t, [&](const StateSet &s) { return pre(g, s); });
}

template <class G> PrePairSequence iterate_pre_pair(const G &g, const StateSet &t, const StateSet &u) {
  if (!t.subset_of(u)) throw PreconditionError("iterate_pre_pair needs t ⊆ u");
  return detect_pair_sequence(SetPair{t, u}, [&](const StateSet &s) { return pre(g, s); });
}

// smallest action whose successors all lie in t, or -1
template <class G> ActionId action_into(const G &g, StateId q, const StateSet &t) {
  for (std::size_t a = 0; a < g.num_actions(); ++a)
    if (detail::row_within(g, q, static_cast<ActionId>(a), t)) return static_cast<ActionId>(a);
  return -1;
}

// Region plus a memoryless certificate. action[q] is -1 on target states and
// outside the region.
struct ReachCertificate {
  StateSet region;
  std::vector<ActionId> action;
  std::vector<int> rank;
};

// Attractor: least fixpoint of X -> target ∪ Pre(X), computed layer by layer.
template <class G> ReachCertificate sure_reach_certificate(const G &g, const StateSet &target) {
  const std::size_t n = g.num_states(), na = g.num_actions();
  ReachCertificate c{target, std::vector<ActionId>(n, -1), std::vector<int>(n, -1)};
  auto pred = detail::predecessors(g);
  std::vector<std::size_t> missing(n * na);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < na; ++a) {
      std::size_t k = 0;
      for (StateId p : g.successors(static_cast<StateId>(q), static_cast<ActionId>(a)))
        if (!target.contains(p)) ++k;
      missing[q * na + a] = k;
    }
  std::vector<StateId> frontier = target.members();
  for (StateId q : frontier) c.rank[q] = 0;
  // rows already complete (e.g. all successors in the target)
  std::vector<StateId> next;
  auto consider = [&](std::size_t q, std::size_t a) {
    if (c.region.contains(static_cast<StateId>(q))) return;
    auto ai = static_cast<ActionId>(a);
    if (c.action[q] == -1) next.push_back(static_cast<StateId>(q));
    if (c.action[q] == -1 || ai < c.action[q]) c.action[q] = ai;
  };
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < na; ++a)
      if (missing[q * na + a] == 0) consider(q, a);
  int layer = 1;
  while (!next.empty()) {
    for (StateId q : next) {
      c.region.insert(q);
      c.rank[q] = layer;
    }
    frontier.swap(next);
    next.clear();
    for (StateId p : frontier)
      for (std::size_t qa : pred[p])
        if (--missing[qa] == 0) consider(qa / na, qa % na);
    ++layer;
  }
  return c;
}

template <class G> StateSet sure_reach_region(const G &g, const StateSet &target) {
  return sure_reach_certificate(g, target).region;
}

// Greatest fixpoint of X -> t ∩ Pre(X); action[q] is the smallest action
// staying inside the region.
template <class G> ReachCertificate sure_safety_certificate(const G &g, const StateSet &t) {
  StateSet x = t;
  for (;;) {
    StateSet nx = t & pre(g, x);
    if (nx == x) break;
    x = std::move(nx);
  }
  ReachCertificate c{x, std::vector<ActionId>(g.num_states(), -1), {}};
  x.for_each([&](StateId q) { c.action[q] = action_into(g, q, x); });
  return c;
}

template <class G> StateSet sure_safety_region(const G &g, const StateSet &t) {
  return sure_safety_certificate(g, t).region;
}

// Almost-sure reachability: repeatedly keep the states that reach the target
// with positive probability using actions that stay in the current set.
template <class G> ReachCertificate almost_sure_reach_certificate(const G &g, const StateSet &target) {
  const std::size_t n = g.num_states(), na = g.num_actions();
  auto pred = detail::predecessors(g);
  StateSet w = StateSet::full(n);
  std::vector<char> safe(n * na);
  std::vector<int> rank(n, -1);
  for (;;) {
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t a = 0; a < na; ++a)
        safe[q * na + a] = w.contains(static_cast<StateId>(q)) &&
                           detail::row_within(g, static_cast<StateId>(q), static_cast<ActionId>(a), w);
    std::fill(rank.begin(), rank.end(), -1);
    StateSet r = target & w;
    std::vector<StateId> queue = r.members();
    for (StateId q : queue) rank[q] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      StateId p = queue[head];
      for (std::size_t qa : pred[p]) {
        auto q = static_cast<StateId>(qa / na);
        if (!safe[qa] || r.contains(q)) continue;
        r.insert(q);
        rank[q] = rank[p] + 1;
        queue.push_back(q);
      }
    }
    if (r == w) break;
    w = std::move(r);
  }
  ReachCertificate c{w, std::vector<ActionId>(n, -1), rank};
  w.for_each([&](StateId q) {
    if (target.contains(q)) return;
    for (std::size_t a = 0; a < na; ++a) {
      if (!safe[q * na + a]) continue;
      for (StateId p : g.successors(q, static_cast<ActionId>(a)))
        if (rank[p] >= 0 && rank[p] < rank[q]) {
          c.action[q] = static_cast<ActionId>(a);
          return;
        }
    }
  });
  return c;
}

template <class G> StateSet almost_sure_reach_region(const G &g, const StateSet &target) {
  return almost_sure_reach_certificate(g, target).region;
}

// ---- products ------------------------------------------------------------

// Pre^i(z) for i = 0..r-1, checking Pre^r(z) = z.
template <class G> std::vector<StateSet> periodic_layers(const G &g, const StateSet &z, std::size_t r) {
  if (r == 0) throw PreconditionError("period must be at least 1");
  std::vector<StateSet> layers{z};
  for (std::size_t i = 1; i < r; ++i) layers.push_back(pre(g, layers.back()));
  if (pre(g, layers.back()) != z) throw PreconditionError("z is not periodic with period " + std::to_string(r));
  return layers;
}

inline StateId counter_state(StateId q, std::size_t i, std::size_t r) {
  return static_cast<StateId>(static_cast<std::size_t>(q) * r + i);
}

// M_Z x [r] over supports: state <q,i> has index q*r+i, the sink is |Q|*r.
template <class G> SupportMdp mod_counter_support(const G &g, const StateSet &z, std::size_t r) {
  auto layers = periodic_layers(g, z, r);
  const std::size_t n = g.num_states(), na = g.num_actions();
  detail::check_state_cap(n * r + 1, "product M_Z x [r]");
  auto sink = static_cast<StateId>(n * r);
  SupportMdp s(n * r + 1, na);
  std::vector<StateId> buf;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t j = (i + r - 1) % r;
      for (std::size_t a = 0; a < na; ++a) {
        auto qi = static_cast<StateId>(q);
        auto ai = static_cast<ActionId>(a);
        if (detail::row_within(g, qi, ai, layers[j])) {
          buf.clear();
          for (StateId p : g.successors(qi, ai)) buf.push_back(counter_state(p, j, r));
          s.push_row(buf.begin(), buf.end());
        } else {
          s.push_single(sink);
        }
      }
    }
  for (std::size_t a = 0; a < na; ++a) s.push_single(sink);
  return s;
}

inline Mdp product_mod_counter(const Mdp &m, const StateSet &z, std::size_t r) {
  auto layers = periodic_layers(m, z, r);
  const std::size_t n = m.num_states(), na = m.num_actions();
  detail::check_state_cap(n * r + 1, "product M_Z x [r]");
  std::vector<std::string> names;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < r; ++i) names.push_back(m.state_name(static_cast<StateId>(q)) + "@" + std::to_string(i));
  auto sink = static_cast<StateId>(n * r);
  std::string sink_name = "sink";
  while (m.has_state(sink_name)) sink_name += "'";
  names.push_back(sink_name);
  std::vector<Row> rows;
  rows.reserve((n * r + 1) * na);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t j = (i + r - 1) % r;
      for (std::size_t a = 0; a < na; ++a) {
        auto qi = static_cast<StateId>(q);
        auto ai = static_cast<ActionId>(a);
        Row row;
        if (detail::row_within(m, qi, ai, layers[j])) {
          auto succ = m.successors(qi, ai);
          auto prob = m.probabilities(qi, ai);
          for (std::size_t k = 0; k < succ.size(); ++k) row.emplace_back(counter_state(succ[k], j, r), prob[k]);
        } else {
          row.emplace_back(sink, Rational(1));
        }
        rows.push_back(std::move(row));
      }
    }
  for (std::size_t a = 0; a < na; ++a) rows.push_back(Row{{sink, Rational(1)}});
  return Mdp(std::move(names), m.action_names(), rows);
}

// M x [ell]: <q,i> moves to <q', i-1 mod ell>.
template <class G> SupportMdp cycle_counter_support(const G &g, std::size_t ell) {
  if (ell == 0) throw PreconditionError("cycle length must be at least 1");
  const std::size_t n = g.num_states(), na = g.num_actions();
  detail::check_state_cap(n * ell, "product M x [ell]");
  SupportMdp s(n * ell, na);
  std::vector<StateId> buf;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < ell; ++i) {
      std::size_t j = (i + ell - 1) % ell;
      for (std::size_t a = 0; a < na; ++a) {
        buf.clear();
        for (StateId p : g.successors(static_cast<StateId>(q), static_cast<ActionId>(a))) buf.push_back(counter_state(p, j, ell));
        s.push_row(buf.begin(), buf.end());
      }
    }
  return s;
}

inline Mdp product_cycle_counter(const Mdp &m, std::size_t ell) {
  if (ell == 0) throw PreconditionError("cycle length must be at least 1");
  const std::size_t n = m.num_states(), na = m.num_actions();
  detail::check_state_cap(n * ell, "product M x [ell]");
  std::vector<std::string> names;
  std::vector<Row> rows;
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < ell; ++i) {
      names.push_back(m.state_name(static_cast<StateId>(q)) + "@" + std::to_string(i));
      std::size_t j = (i + ell - 1) % ell;
      for (std::size_t a = 0; a < na; ++a) {
        Row row;
        auto succ = m.successors(static_cast<StateId>(q), static_cast<ActionId>(a));
        auto prob = m.probabilities(static_cast<StateId>(q), static_cast<ActionId>(a));
        for (std::size_t k = 0; k < succ.size(); ++k) row.emplace_back(counter_state(succ[k], j, ell), prob[k]);
        rows.push_back(std::move(row));
      }
    }
  return Mdp(std::move(names), m.action_names(), rows);
}

// S x {i} inside a counter product with period r
inline StateSet lift(const StateSet &s, std::size_t i, std::size_t r, std::size_t product_states) {
  StateSet out(product_states);
  s.for_each([&](StateId q) { out.insert(counter_state(q, i, r)); });
  return out;
}

} // namespace syncmdp

#endif
