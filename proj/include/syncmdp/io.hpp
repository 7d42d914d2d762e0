#ifndef SYNCMDP_IO_HPP
#define SYNCMDP_IO_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "afa.hpp"
#include "mdp.hpp"
#include "query.hpp"
#include "strategy.hpp"

namespace syncmdp {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError(std::string("malformed document at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

inline const Json &field(const Json &j, const std::string &key, const std::string &path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + (path.empty() ? "" : ".") + key + ": missing");
  return *it;
}

inline std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

inline std::string as_string(const Json &j, const std::string &path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> string_list(const Json &j, const std::string &path) {
  if (!j.is_array()) throw ParseError(path + ": expected a list of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Rational as_rational(const Json &j, const std::string &path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ": expected a probability");
}

template <class Lookup> StateId lookup(Lookup &&f, const std::string &name, const std::string &path) {
  try {
    return f(name);
  } catch (const LookupError &e) {
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace detail

// ---- distributions ---------------------------------------------------------

inline Json distribution_to_json(const Mdp &m, const Distribution &d) {
  Json j = Json::object();
  for (std::size_t q = 0; q < d.size(); ++q)
    if (d[static_cast<StateId>(q)] != 0) j[m.state_name(static_cast<StateId>(q))] = to_string(d[static_cast<StateId>(q)]);
  return j;
}

// a state name or an object {state: prob}
inline Distribution distribution_from_json(const Mdp &m, const Json &j, const std::string &path) {
  auto idx = [&](const std::string &n) { return m.state_index(n); };
  if (j.is_string()) return Distribution::dirac(m.num_states(), detail::lookup(idx, j.get<std::string>(), path));
  if (!j.is_object()) throw ParseError(path + ": expected a state name or an object of probabilities");
  Distribution d(m.num_states());
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string p = path + "." + it.key();
    d[detail::lookup(idx, it.key(), p)] += detail::as_rational(it.value(), p);
  }
  if (!d.valid()) throw ParseError(path + ": probabilities sum to " + to_string(d.total()));
  return d;
}

// "q1" or "q1:1/2,q2:1/2"
inline Distribution parse_distribution_spec(const Mdp &m, const std::string &spec) {
  if (spec.find(':') == std::string::npos) return Distribution::dirac(m.num_states(), m.state_index(spec));
  Distribution d(m.num_states());
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("distribution entry '" + item + "' needs state:prob");
    d[m.state_index(item.substr(0, colon))] += parse_rational(item.substr(colon + 1));
  }
  if (!d.valid()) throw ParseError("distribution '" + spec + "' sums to " + to_string(d.total()));
  return d;
}

inline StateSet parse_state_list(const Mdp &m, const std::string &spec) {
  StateSet s(m.num_states());
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) s.insert(m.state_index(item));
  return s;
}

inline Json state_set_to_json(const std::vector<std::string> &names, const StateSet &s) {
  Json j = Json::array();
  s.for_each([&](StateId q) { j.push_back(names.at(q)); });
  return j;
}

// ---- model -----------------------------------------------------------------

struct ModelDocument {
  Mdp mdp;
  std::optional<Distribution> initial;
};

inline Json model_to_json(const Mdp &m, const std::optional<Distribution> &initial = std::nullopt) {
  Json j;
  j["states"] = m.state_names();
  j["actions"] = m.action_names();
  Json tr = Json::array();
  for (std::size_t q = 0; q < m.num_states(); ++q)
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      Json row;
      row["from"] = m.state_name(static_cast<StateId>(q));
      row["action"] = m.action_name(static_cast<ActionId>(a));
      Json to = Json::array();
      for (const auto &[p, w] : m.row(static_cast<StateId>(q), static_cast<ActionId>(a)))
        to.push_back(Json{{"state", m.state_name(p)}, {"prob", to_string(w)}});
      row["to"] = std::move(to);
      tr.push_back(std::move(row));
    }
  j["transitions"] = std::move(tr);
  if (initial) j["initial"] = distribution_to_json(m, *initial);
  return j;
}

inline std::string serialize_model(const Mdp &m, const std::optional<Distribution> &initial = std::nullopt) {
  return model_to_json(m, initial).dump(2) + "\n";
}

inline ModelDocument parse_model_document(const std::string &text) {
  Json j = detail::parse_json(text);
  if (!j.is_object()) throw ParseError("model: expected an object");
  auto states = detail::string_list(detail::field(j, "states", ""), "states");
  auto actions = detail::string_list(detail::field(j, "actions", ""), "actions");
  std::map<std::string, StateId> sidx;
  std::map<std::string, ActionId> aidx;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!sidx.emplace(states[i], static_cast<StateId>(i)).second) throw ParseError("states: duplicate name '" + states[i] + "'");
  for (std::size_t i = 0; i < actions.size(); ++i)
    if (!aidx.emplace(actions[i], static_cast<ActionId>(i)).second)
      throw ParseError("actions: duplicate name '" + actions[i] + "'");
  if (actions.empty()) throw ParseError("actions: at least one action is required");
  const Json &tr = detail::field(j, "transitions", "");
  if (!tr.is_array()) throw ParseError("transitions: expected a list");
  std::vector<Row> rows(states.size() * actions.size());
  std::vector<char> seen(rows.size(), 0);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::string path = "transitions[" + std::to_string(i) + "]";
    std::string from = detail::as_string(detail::field(tr[i], "from", path), path + ".from");
    std::string act = detail::as_string(detail::field(tr[i], "action", path), path + ".action");
    if (!sidx.count(from)) throw ParseError(path + ".from: unknown state '" + from + "'");
    if (!aidx.count(act)) throw ParseError(path + ".action: unknown action '" + act + "'");
    std::size_t r = static_cast<std::size_t>(sidx[from]) * actions.size() + static_cast<std::size_t>(aidx[act]);
    if (seen[r]) throw ParseError(path + ": duplicate row (" + from + ", " + act + ")");
    seen[r] = 1;
    const Json &to = detail::field(tr[i], "to", path);
    if (!to.is_array() || to.empty()) throw ParseError(path + ".to: expected a nonempty list");
    std::size_t missing = 0;
    for (const auto &e : to)
      if (!e.is_object() || !e.contains("prob")) ++missing;
    if (missing != 0 && missing != to.size())
      throw ParseError(path + ".to: either every successor or none carries a probability");
    for (std::size_t k = 0; k < to.size(); ++k) {
      std::string p = path + ".to[" + std::to_string(k) + "]";
      std::string name = to[k].is_string() ? to[k].get<std::string>()
                                           : detail::as_string(detail::field(to[k], "state", p), p + ".state");
      if (!sidx.count(name)) throw ParseError(p + ".state: unknown state '" + name + "'");
      Rational w = missing ? Rational(BigInt(1), BigInt(to.size())) : detail::as_rational(to[k]["prob"], p + ".prob");
      rows[r].emplace_back(sidx[name], w);
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!seen[r])
      throw ParseError("transitions: missing row (" + states[r / actions.size()] + ", " + actions[r % actions.size()] + ")");
  ModelDocument doc;
  doc.mdp = Mdp(states, actions, rows);
  auto problems = validate_mdp(doc.mdp);
  if (!problems.empty()) throw ParseError("transitions: " + problems.front());
  if (j.contains("initial")) doc.initial = distribution_from_json(doc.mdp, j["initial"], "initial");
  return doc;
}

inline Mdp parse_model(const std::string &text) { return parse_model_document(text).mdp; }

// ---- automaton -------------------------------------------------------------

inline Json afa_to_json(const Afa &a) {
  Json j;
  j["states"] = a.state_names();
  j["accepting"] = state_set_to_json(a.state_names(), a.accepting());
  Json delta = Json::object();
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    Json cl = Json::array();
    for (const auto &c : a.clauses(static_cast<StateId>(q))) cl.push_back(state_set_to_json(a.state_names(), c));
    delta[a.state_name(static_cast<StateId>(q))] = std::move(cl);
  }
  j["delta"] = std::move(delta);
  return j;
}

inline std::string serialize_afa(const Afa &a) { return afa_to_json(a).dump(2) + "\n"; }

inline Afa parse_afa(const std::string &text) {
  Json j = detail::parse_json(text);
  auto states = detail::string_list(detail::field(j, "states", ""), "states");
  std::map<std::string, StateId> idx;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!idx.emplace(states[i], static_cast<StateId>(i)).second) throw ParseError("states: duplicate name '" + states[i] + "'");
  auto set_of = [&](const Json &list, const std::string &path) {
    StateSet s(states.size());
    for (const auto &name : detail::string_list(list, path)) {
      if (!idx.count(name)) throw ParseError(path + ": unknown state '" + name + "'");
      s.insert(idx[name]);
    }
    return s;
  };
  StateSet acc = set_of(detail::field(j, "accepting", ""), "accepting");
  const Json &delta = detail::field(j, "delta", "");
  if (!delta.is_object()) throw ParseError("delta: expected an object");
  std::vector<std::vector<StateSet>> d(states.size());
  for (std::size_t q = 0; q < states.size(); ++q) {
    std::string path = "delta." + states[q];
    const Json &cl = detail::field(delta, states[q], "delta");
    if (!cl.is_array() || cl.empty()) throw ParseError(path + ": expected a nonempty list of clauses");
    for (std::size_t k = 0; k < cl.size(); ++k) {
      std::string p = path + "[" + std::to_string(k) + "]";
      StateSet c = set_of(cl[k], p);
      if (c.empty()) throw ParseError(p + ": empty clause");
      d[q].push_back(c);
    }
  }
  for (auto it = delta.begin(); it != delta.end(); ++it)
    if (!idx.count(it.key())) throw ParseError("delta." + it.key() + ": unknown state");
  return Afa(states, std::move(d), acc);
}

// ---- strategy --------------------------------------------------------------

inline Json strategy_to_json(const Mdp &m, const FiniteStrategy &s) {
  Json j;
  Json modes = Json::array();
  for (std::size_t i = 0; i < s.num_modes(); ++i) modes.push_back(s.mode_name(i));
  j["modes"] = std::move(modes);
  j["initial"] = s.mode_name(s.initial());
  Json next = Json::object(), update = Json::object();
  for (std::size_t i = 0; i < s.num_modes(); ++i) {
    Json row = Json::object();
    for (std::size_t q = 0; q < m.num_states(); ++q)
      row[m.state_name(static_cast<StateId>(q))] = m.action_name(s.next(i, static_cast<StateId>(q)));
    next[s.mode_name(i)] = std::move(row);
    Json up = Json::object();
    for (std::size_t a = 0; a < m.num_actions(); ++a)
      for (std::size_t q = 0; q < m.num_states(); ++q)
        up[m.action_name(static_cast<ActionId>(a)) + "," + m.state_name(static_cast<StateId>(q))] =
            s.mode_name(s.update(i, static_cast<ActionId>(a), static_cast<StateId>(q)));
    update[s.mode_name(i)] = std::move(up);
  }
  j["next"] = std::move(next);
  j["update"] = std::move(update);
  return j;
}

inline std::string serialize_strategy(const Mdp &m, const FiniteStrategy &s) { return strategy_to_json(m, s).dump(2) + "\n"; }

// Names resolve against m. Missing next entries play the first action;
// missing update entries keep the mode.
inline FiniteStrategy parse_strategy(const Mdp &m, const std::string &text) {
  Json j = detail::parse_json(text);
  auto modes = detail::string_list(detail::field(j, "modes", ""), "modes");
  if (modes.empty()) throw ParseError("modes: at least one mode is required");
  std::map<std::string, std::size_t> midx;
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (!midx.emplace(modes[i], i).second) throw ParseError("modes: duplicate name '" + modes[i] + "'");
  auto mode_of = [&](const Json &v, const std::string &path) {
    std::string n = detail::as_string(v, path);
    if (!midx.count(n)) throw ParseError(path + ": unknown mode '" + n + "'");
    return midx[n];
  };
  FiniteStrategy s(m.num_states(), m.num_actions(), modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    s.set_mode_name(i, modes[i]);
    for (std::size_t q = 0; q < m.num_states(); ++q) s.set_next(i, static_cast<StateId>(q), 0);
    s.set_update_all(i, i);
  }
  s.set_initial(mode_of(detail::field(j, "initial", ""), "initial"));
  auto sidx = [&](const std::string &n) { return m.state_index(n); };
  auto aidx = [&](const std::string &n) { return m.action_index(n); };
  if (j.contains("next")) {
    const Json &next = j["next"];
    if (!next.is_object()) throw ParseError("next: expected an object");
    for (auto it = next.begin(); it != next.end(); ++it) {
      std::string path = "next." + it.key();
      if (!midx.count(it.key())) throw ParseError(path + ": unknown mode");
      if (!it.value().is_object()) throw ParseError(path + ": expected an object");
      for (auto e = it.value().begin(); e != it.value().end(); ++e) {
        std::string p = path + "." + e.key();
        StateId q = detail::lookup(sidx, e.key(), p);
        ActionId a = detail::lookup(aidx, detail::as_string(e.value(), p), p);
        s.set_next(midx[it.key()], q, a);
      }
    }
  }
  if (j.contains("update")) {
    const Json &up = j["update"];
    if (!up.is_object()) throw ParseError("update: expected an object");
    for (auto it = up.begin(); it != up.end(); ++it) {
      std::string path = "update." + it.key();
      if (!midx.count(it.key())) throw ParseError(path + ": unknown mode");
      if (!it.value().is_object()) throw ParseError(path + ": expected an object");
      for (auto e = it.value().begin(); e != it.value().end(); ++e) {
        std::string p = path + "." + e.key();
        auto comma = e.key().find(',');
        if (comma == std::string::npos) throw ParseError(p + ": key must be 'action,state'");
        ActionId a = detail::lookup(aidx, e.key().substr(0, comma), p);
        StateId q = detail::lookup(sidx, e.key().substr(comma + 1), p);
        s.set_update(midx[it.key()], a, q, mode_of(e.value(), p));
      }
    }
  }
  return s;
}

// ---- verdicts and outcomes -------------------------------------------------

inline Json query_to_json(const Mdp &m, const AnalysisQuery &q) {
  Json j;
  j["objective"] = to_string(q.sync);
  j["mode"] = to_string(q.mode);
  j["fn"] = to_string(q.function.kind);
  j["target"] = state_set_to_json(m.state_names(), q.function.target);
  j["initial"] = distribution_to_json(m, q.initial);
  return j;
}

inline Json witness_to_json(const Mdp &m, const Witness &w) {
  Json j = Json::object();
  if (w.step) j["step"] = *w.step;
  if (w.prefix) j["prefix"] = *w.prefix;
  if (w.period) j["period"] = *w.period;
  if (w.shift) j["shift"] = *w.shift;
  if (w.set) j["set"] = state_set_to_json(m.state_names(), *w.set);
  if (w.cycle) {
    Json c = Json::array();
    for (std::size_t i = 0; i < w.cycle->length(); ++i)
      c.push_back(Json{{"state", m.state_name(w.cycle->states[i])}, {"action", m.action_name(w.cycle->actions[i])}});
    j["cycle"] = std::move(c);
  }
  if (w.via) j["via"] = m.state_name(*w.via);
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

inline Json verdict_to_json(const Mdp &m, const Verdict &v) {
  Json j;
  j["query"] = query_to_json(m, v.query);
  j["answer"] = v.answer;
  j["method"] = v.method;
  j["witness"] = v.witness ? witness_to_json(m, *v.witness) : Json();
  return j;
}

inline std::string serialize_verdict(const Mdp &m, const Verdict &v) { return verdict_to_json(m, v).dump(2) + "\n"; }

// header "step <states...>", then one row per step
inline std::string outcome_table(const Mdp &m, const OutcomeSequence &seq) {
  std::string out = "step";
  for (const auto &n : m.state_names()) out += "\t" + n;
  out += "\n";
  for (std::size_t k = 0; k < seq.dists.size(); ++k) {
    out += std::to_string(k);
    for (std::size_t q = 0; q < m.num_states(); ++q) out += "\t" + to_string(seq.dists[k][static_cast<StateId>(q)]);
    out += "\n";
  }
  return out;
}

} // namespace syncmdp

#endif
