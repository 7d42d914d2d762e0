#ifndef SYNCMDP_ORACLE_HPP
#define SYNCMDP_ORACLE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "afa.hpp"
#include "limits.hpp"
#include "mdp.hpp"
#include "query.hpp"

namespace syncmdp {

// Forward graph over belief supports reachable from a start support.
struct SupportGraph {
  std::vector<StateSet> nodes;
  std::vector<std::vector<std::size_t>> edges;
  std::size_t size() const { return nodes.size(); }
};

// All sets ⋃_{q∈s} post(q, a_q), one per action assignment, deduplicated.
inline std::vector<StateSet> support_successors(const Mdp &m, const StateSet &s) {
  std::unordered_set<StateSet, StateSetHash> partial{StateSet(m.num_states())};
  s.for_each([&](StateId q) {
    std::unordered_set<StateSet, StateSetHash> choices;
    for (std::size_t a = 0; a < m.num_actions(); ++a) choices.insert(post_set(m, q, static_cast<ActionId>(a)));
    std::unordered_set<StateSet, StateSetHash> next;
    for (const auto &p : partial)
      for (const auto &c : choices) next.insert(p | c);
    partial.swap(next);
  });
  std::vector<StateSet> out(partial.begin(), partial.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline SupportGraph support_graph(const Mdp &m, const StateSet &start, std::size_t cap = limits().support_graph_cap) {
  if (start.empty()) throw PreconditionError("support graph needs a nonempty start support");
  SupportGraph g;
  std::unordered_map<StateSet, std::size_t, StateSetHash> index;
  auto add = [&](const StateSet &s) {
    auto [it, fresh] = index.emplace(s, g.nodes.size());
    if (fresh) {
      if (g.nodes.size() >= cap) throw ResourceError("support graph exceeds " + std::to_string(cap) + " nodes");
      g.nodes.push_back(s);
      g.edges.emplace_back();
    }
    return it->second;
  };
  add(start);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    StateSet s = g.nodes[i];
    for (const StateSet &succ : support_successors(m, s)) {
      std::size_t j = add(succ);
      g.edges[i].push_back(j);
    }
  }
  return g;
}

inline SupportGraph support_graph(const Mdp &m, StateId q0) {
  return support_graph(m, StateSet::single(m.num_states(), q0));
}

namespace detail {

// nodes with a path into `good`
inline std::vector<char> can_reach(const SupportGraph &g, const std::vector<char> &good) {
  std::vector<char> win = good;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (win[i]) continue;
      for (std::size_t j : g.edges[i])
        if (win[j]) {
          win[i] = 1;
          changed = true;
          break;
        }
    }
  }
  return win;
}

// nodes of `good` with an infinite path inside `good`
inline std::vector<char> can_stay(const SupportGraph &g, const std::vector<char> &good) {
  std::vector<char> win = good;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!win[i]) continue;
      bool ok = false;
      for (std::size_t j : g.edges[i]) ok = ok || win[j];
      if (!ok) {
        win[i] = 0;
        changed = true;
      }
    }
  }
  return win;
}

} // namespace detail

// Sure winning from the first node of g. A support is synchronized for
// sum_t when inside t, for max_t when a single state of t.
inline bool oracle_sure(const SupportGraph &g, const StateSet &t, SyncMode sync, TargetKind kind = TargetKind::Sum) {
  std::vector<char> inside(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    inside[i] = g.nodes[i].subset_of(t) && (kind == TargetKind::Sum || g.nodes[i].count() == 1);
  switch (sync) {
  case SyncMode::Always: return detail::can_stay(g, inside)[0];
  case SyncMode::Eventually: return detail::can_reach(g, inside)[0];
  case SyncMode::Strongly: return detail::can_reach(g, detail::can_stay(g, inside))[0];
  case SyncMode::Weakly: {
    // some node inside t lies on a cycle
    std::vector<char> cyc(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!inside[i]) continue;
      std::vector<char> seed(g.size(), 0);
      for (std::size_t j : g.edges[i]) seed[j] = 1;
      std::vector<char> target(g.size(), 0);
      target[i] = 1;
      auto r = detail::can_reach(g, target);
      for (std::size_t j = 0; j < g.size(); ++j)
        if (seed[j] && r[j]) cyc[i] = 1;
    }
    return detail::can_reach(g, cyc)[0];
  }
  }
  return false;
}

inline bool oracle_sure(const Mdp &m, const StateSet &start, const StateSet &t, SyncMode sync) {
  return oracle_sure(support_graph(m, start), t, sync);
}

inline bool oracle_sure(const Mdp &m, StateId q0, const StateSet &t, SyncMode sync) {
  return oracle_sure(m, StateSet::single(m.num_states(), q0), t, sync);
}

// ---- random instances ------------------------------------------------------

namespace detail {
inline std::size_t draw(std::mt19937_64 &rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// k distinct values of [0, n), sorted
inline std::vector<StateId> draw_distinct(std::mt19937_64 &rng, std::size_t n, std::size_t k) {
  std::vector<StateId> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<StateId>(i);
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + draw(rng, n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline std::vector<std::string> numbered(const char *prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}
} // namespace detail

inline Mdp random_mdp(std::uint64_t seed, std::size_t nq, std::size_t na, std::size_t branching) {
  if (nq == 0 || na == 0) throw PreconditionError("random_mdp needs nq, na >= 1");
  if (branching == 0 || branching > nq) throw PreconditionError("random_mdp needs 1 <= branching <= nq");
  std::mt19937_64 rng(seed);
  std::vector<Row> rows;
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t a = 0; a < na; ++a) {
      std::size_t k = 1 + detail::draw(rng, branching);
      Row row;
      for (StateId p : detail::draw_distinct(rng, nq, k)) row.emplace_back(p, Rational(BigInt(1), BigInt(k)));
      rows.push_back(std::move(row));
    }
  return Mdp(detail::numbered("q", nq), detail::numbered("a", na), rows);
}

// Same supports, fresh weights 1..9 normalized per row.
inline Mdp reweight(const Mdp &m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Row> rows = m.rows();
  for (Row &row : rows) {
    std::vector<BigInt> w;
    BigInt total = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      w.push_back(1 + detail::draw(rng, 9));
      total += w.back();
    }
    for (std::size_t i = 0; i < row.size(); ++i) row[i].second = Rational(w[i], total);
  }
  return Mdp(m.state_names(), m.action_names(), rows);
}

inline Afa random_afa(std::uint64_t seed, std::size_t nq, std::size_t clauses, std::size_t clause_size) {
  if (nq == 0 || clauses == 0 || clause_size == 0) throw PreconditionError("random_afa needs positive sizes");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<StateSet>> delta(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    std::size_t c = 1 + detail::draw(rng, clauses);
    for (std::size_t i = 0; i < c; ++i) {
      std::size_t k = 1 + detail::draw(rng, std::min(clause_size, nq));
      StateSet s(nq);
      for (StateId p : detail::draw_distinct(rng, nq, k)) s.insert(p);
      delta[q].push_back(s);
    }
  }
  StateSet acc(nq);
  for (std::size_t q = 0; q < nq; ++q)
    if (rng() & 1) acc.insert(static_cast<StateId>(q));
  return Afa(detail::numbered("q", nq), std::move(delta), acc);
}

struct CorpusEntry {
  std::uint64_t seed;
  std::size_t nq, na, branching;
  Mdp mdp;
};

// i-th member of the seeded test corpus: |Q| <= 6, |A| <= 3, branching <= 3
inline CorpusEntry corpus_instance(std::size_t i) {
  std::mt19937_64 rng(0x5eed0000u + i);
  CorpusEntry e;
  e.seed = rng();
  e.nq = 1 + detail::draw(rng, 6);
  e.na = 1 + detail::draw(rng, 3);
  e.branching = 1 + detail::draw(rng, std::min<std::size_t>(3, e.nq));
  e.mdp = random_mdp(e.seed, e.nq, e.na, e.branching);
  return e;
}

inline std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace syncmdp

#endif
