#ifndef SYNCMDP_ALWAYS_STRONGLY_HPP
#define SYNCMDP_ALWAYS_STRONGLY_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "mdp.hpp"
#include "query.hpp"
#include "reach.hpp"

namespace syncmdp {

// Edges q -> q' with some action a such that δ(q,a) is Dirac on q'.
// edges[q] is sorted by the first such action, one entry per successor.
struct DeterministicGraph {
  std::vector<std::vector<std::pair<StateId, ActionId>>> edges;

  std::size_t size() const { return edges.size(); }
  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto &e : edges) c += e.size();
    return c;
  }
  bool has_edge(StateId q, StateId p) const {
    for (const auto &[x, a] : edges[q])
      if (x == p) return true;
    return false;
  }
};

inline DeterministicGraph deterministic_graph(const Mdp &m) {
  DeterministicGraph g;
  g.edges.resize(m.num_states());
  for (std::size_t q = 0; q < m.num_states(); ++q)
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      auto succ = m.successors(static_cast<StateId>(q), static_cast<ActionId>(a));
      if (succ.size() != 1) continue;
      StateId p = succ[0];
      auto &e = g.edges[q];
      if (std::none_of(e.begin(), e.end(), [&](const auto &x) { return x.first == p; }))
        e.emplace_back(p, static_cast<ActionId>(a));
    }
  return g;
}

// Strongly connected components (iterative Tarjan); each sorted ascending,
// components listed by their smallest state.
inline std::vector<std::vector<StateId>> strongly_connected_components(const DeterministicGraph &g) {
  const std::size_t n = g.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> comps;
  int counter = 0;
  struct Frame {
    StateId v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{static_cast<StateId>(root), 0}};
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<StateId>(root));
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame &f = call.back();
      if (f.next < g.edges[f.v].size()) {
        StateId w = g.edges[f.v][f.next++].first;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      StateId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<StateId> comp;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  std::sort(comps.begin(), comps.end(), [](const auto &a, const auto &b) { return a.front() < b.front(); });
  return comps;
}

inline bool nontrivial(const DeterministicGraph &g, const std::vector<StateId> &comp) {
  return comp.size() > 1 || g.has_edge(comp[0], comp[0]);
}

// First simple cycle met by a depth-first search from the smallest state of
// the component, edges taken in action order.
inline DeterministicCycle first_simple_cycle(const DeterministicGraph &g, const std::vector<StateId> &comp) {
  std::vector<char> in_comp(g.size(), 0), visited(g.size(), 0);
  for (StateId q : comp) in_comp[q] = 1;
  std::vector<StateId> path;
  std::vector<ActionId> acts;
  std::vector<std::size_t> next;
  std::vector<int> pos(g.size(), -1);
  StateId start = comp.front();
  path.push_back(start);
  next.push_back(0);
  pos[start] = 0;
  visited[start] = 1;
  while (!path.empty()) {
    StateId v = path.back();
    std::size_t &i = next.back();
    if (i < g.edges[v].size()) {
      auto [w, a] = g.edges[v][i++];
      if (!in_comp[w]) continue;
      if (pos[w] >= 0) {
        DeterministicCycle c;
        for (std::size_t k = static_cast<std::size_t>(pos[w]); k < path.size(); ++k) c.states.push_back(path[k]);
        for (std::size_t k = static_cast<std::size_t>(pos[w]); k < acts.size(); ++k) c.actions.push_back(acts[k]);
        c.actions.push_back(a);
        return c;
      }
      if (visited[w]) continue;
      visited[w] = 1;
      pos[w] = static_cast<int>(path.size());
      path.push_back(w);
      acts.push_back(a);
      next.push_back(0);
      continue;
    }
    pos[v] = -1;
    path.pop_back();
    next.pop_back();
    if (!acts.empty()) acts.pop_back();
  }
  throw PreconditionError("component has no cycle");
}

// ---- always ----------------------------------------------------------------

inline Verdict always_sum(const Mdp &m, const Distribution &d0, const StateSet &t, WinningMode mode = WinningMode::Sure) {
  detail::check_query(m, d0, t);
  Verdict v;
  v.query = make_query(SyncMode::Always, mode, TargetKind::Sum, t, d0);
  StateSet safe = sure_safety_region(m, t);
  v.answer = d0.support().subset_of(safe);
  if (v.answer) {
    v.witness = Witness{};
    v.witness->set = safe;
  }
  return v;
}

// States of t with an infinite deterministic path inside t.
inline StateSet deterministic_safety_region(const Mdp &m, const StateSet &t) {
  DeterministicGraph g = deterministic_graph(m);
  StateSet x = t;
  for (;;) {
    StateSet nx(m.num_states());
    x.for_each([&](StateId q) {
      for (const auto &[p, a] : g.edges[q])
        if (x.contains(p)) {
          nx.insert(q);
          return;
        }
    });
    if (nx == x) return x;
    x = std::move(nx);
  }
}

inline Verdict always_max(const Mdp &m, const Distribution &d0, const StateSet &t, WinningMode mode = WinningMode::Sure) {
  detail::check_query(m, d0, t);
  Verdict v;
  v.query = make_query(SyncMode::Always, mode, TargetKind::Max, t, d0);
  auto q = d0.dirac_state();
  if (!q) return v;
  StateSet region = deterministic_safety_region(m, t);
  v.answer = region.contains(*q);
  if (v.answer) {
    v.witness = Witness{};
    v.witness->set = region;
  }
  return v;
}

// ---- strongly --------------------------------------------------------------

inline Verdict strongly_sum(const Mdp &m, const Distribution &d0, const StateSet &t, WinningMode mode) {
  detail::check_query(m, d0, t);
  Verdict v;
  v.query = make_query(SyncMode::Strongly, mode, TargetKind::Sum, t, d0);
  StateSet safe = sure_safety_region(m, t);
  StateSet reach = mode == WinningMode::Sure ? sure_reach_region(m, safe) : almost_sure_reach_region(m, safe);
  v.answer = d0.support().subset_of(reach);
  if (v.answer) {
    v.witness = Witness{};
    v.witness->set = safe;
  }
  if (mode == WinningMode::LimitSure) v.method = "decided via almost-sure equivalence";
  return v;
}

// Cycle-bearing components of the deterministic graph of m, one cycle each.
inline std::vector<DeterministicCycle> candidate_cycles(const Mdp &m) {
  DeterministicGraph g = deterministic_graph(m);
  std::vector<DeterministicCycle> out;
  for (const auto &comp : strongly_connected_components(g))
    if (nontrivial(g, comp)) out.push_back(first_simple_cycle(g, comp));
  return out;
}

// same cycle entered at position j
inline DeterministicCycle rotate(const DeterministicCycle &c, std::size_t j) {
  DeterministicCycle r;
  for (std::size_t i = 0; i < c.length(); ++i) {
    r.states.push_back(c.states[(i + j) % c.length()]);
    r.actions.push_back(c.actions[(i + j) % c.length()]);
  }
  return r;
}

// Region of M x [ell] from which <q̂_0, 0> is reached surely / almost surely.
inline StateSet cycle_reach_region(const Mdp &m, const DeterministicCycle &c, WinningMode mode) {
  SupportMdp prod = cycle_counter_support(m, c.length());
  StateSet target = StateSet::single(prod.num_states(), counter_state(c.states[0], 0, c.length()));
  return mode == WinningMode::Sure ? sure_reach_region(prod, target) : almost_sure_reach_region(prod, target);
}

// Strongly synchronizing for max_t. States outside t are duplicated so that
// only t can carry a deterministic cycle; then one cycle per cycle-bearing
// component is tried in M' x [ell], under each of its rotations.
inline Verdict strongly_max(const Mdp &m, const Distribution &d0, const StateSet &t, WinningMode mode) {
  detail::check_query(m, d0, t);
  if (t.empty()) throw PreconditionError("max over an empty target");
  Verdict v;
  v.query = make_query(SyncMode::Strongly, mode, TargetKind::Max, t, d0);
  if (mode == WinningMode::LimitSure) v.method = "decided via almost-sure equivalence";
  Duplication dup = duplicate_outside_mapped(m, t);
  StateSet supp = dup.map(d0).support();
  std::vector<StateId> origin(dup.mdp.num_states(), -1);
  for (std::size_t q = 0; q < dup.copies.size(); ++q)
    for (StateId x : dup.copies[q]) origin[x] = static_cast<StateId>(q);
  for (const DeterministicCycle &base : candidate_cycles(dup.mdp))
    for (std::size_t j = 0; j < base.length(); ++j) {
      DeterministicCycle c = rotate(base, j);
      StateSet region = cycle_reach_region(dup.mdp, c, mode);
      bool all = true;
      supp.for_each([&](StateId q) {
        if (!region.contains(counter_state(q, 0, c.length()))) all = false;
      });
      if (!all) continue;
      v.answer = true;
      v.witness = Witness{};
      for (auto &q : c.states) q = origin[q];
      v.witness->cycle = c;
      v.witness->period = c.length();
      return v;
    }
  return v;
}

inline Verdict dispatch_always(const Mdp &m, const AnalysisQuery &q) {
  if (q.sync != SyncMode::Always) throw PreconditionError("not an always query");
  Verdict v = q.function.kind == TargetKind::Sum ? always_sum(m, q.initial, q.function.target, q.mode)
                                                 : always_max(m, q.initial, q.function.target, q.mode);
  v.query = q;
  v.method = "all winning modes coincide";
  return v;
}

inline Verdict dispatch_strongly(const Mdp &m, const AnalysisQuery &q) {
  if (q.sync != SyncMode::Strongly) throw PreconditionError("not a strongly query");
  Verdict v = q.function.kind == TargetKind::Sum ? strongly_sum(m, q.initial, q.function.target, q.mode)
                                                 : strongly_max(m, q.initial, q.function.target, q.mode);
  v.query = q;
  return v;
}

} // namespace syncmdp

#endif
