#ifndef SYNCMDP_FIXTURES_HPP
#define SYNCMDP_FIXTURES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afa.hpp"
#include "mdp.hpp"

namespace syncmdp {

// Name-based construction; every (state, action) row must be set.
class MdpBuilder {
public:
  MdpBuilder(std::vector<std::string> states, std::vector<std::string> actions)
      : states_(std::move(states)), actions_(std::move(actions)), rows_(states_.size() * actions_.size()),
        set_(rows_.size(), 0) {
    for (std::size_t i = 0; i < states_.size(); ++i) idx_[states_[i]] = static_cast<StateId>(i);
  }

  MdpBuilder &row(const std::string &q, const std::string &a, const std::vector<std::pair<std::string, Rational>> &to) {
    std::size_t r = static_cast<std::size_t>(state(q)) * actions_.size() + action(a);
    rows_[r].clear();
    for (const auto &[p, w] : to) rows_[r].emplace_back(state(p), w);
    set_[r] = 1;
    return *this;
  }
  MdpBuilder &det(const std::string &q, const std::string &a, const std::string &p) { return row(q, a, {{p, 1}}); }
  // same row for every action
  MdpBuilder &all(const std::string &q, const std::vector<std::pair<std::string, Rational>> &to) {
    for (const auto &a : actions_) row(q, a, to);
    return *this;
  }
  MdpBuilder &all(const std::string &q, const std::string &p) { return all(q, {{p, 1}}); }

  Mdp build() const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (!set_[r])
        throw PreconditionError("row (" + states_[r / actions_.size()] + ", " + actions_[r % actions_.size()] + ") not set");
    return Mdp(states_, actions_, rows_);
  }

private:
  StateId state(const std::string &q) const {
    auto it = idx_.find(q);
    if (it == idx_.end()) throw LookupError("unknown state '" + q + "'");
    return it->second;
  }
  std::size_t action(const std::string &a) const {
    for (std::size_t i = 0; i < actions_.size(); ++i)
      if (actions_[i] == a) return i;
    throw LookupError("unknown action '" + a + "'");
  }

  std::vector<std::string> states_, actions_;
  std::vector<Row> rows_;
  std::vector<char> set_;
  std::map<std::string, StateId> idx_;
};

namespace fixtures {

inline const Rational half{BigInt(1), BigInt(2)};

inline Mdp fig1() {
  return MdpBuilder({"q_init", "q1", "q2", "q3"}, {"a", "b"})
      .all("q_init", {{"q_init", half}, {"q1", half}})
      .det("q1", "a", "q1")
      .det("q1", "b", "q2")
      .all("q2", "q3")
      .all("q3", "q3")
      .build();
}

inline Mdp fig2() {
  return MdpBuilder({"r", "s", "q"}, {"a"})
      .row("r", "a", {{"s", Rational(1, 5)}, {"q", Rational(4, 5)}})
      .all("s", "s")
      .all("q", "r")
      .build();
}

inline Mdp fig3() {
  return MdpBuilder({"q_init", "q1", "q2"}, {"a", "b"})
      .row("q_init", "a", {{"q_init", half}, {"q1", half}})
      .det("q_init", "b", "q_init")
      .det("q1", "a", "q1")
      .det("q1", "b", "q2")
      .all("q2", "q_init")
      .build();
}

// q_init splits uniformly into n cycles of prime lengths 2, 3, 5, ...; a
// rotates every cycle, b leaves to q_T from the last state of each cycle and
// to q_bot elsewhere.
inline Mdp fig4(std::size_t n) {
  if (n == 0) throw PreconditionError("fig4 needs n >= 1");
  auto lengths = primes_from(2, n);
  std::vector<std::string> states{"q_init"};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j <= lengths[i]; ++j) states.push_back("q" + std::to_string(i + 1) + "_" + std::to_string(j));
  states.push_back("q_T");
  states.push_back("q_bot");
  MdpBuilder b(states, {"a", "b"});
  std::vector<std::pair<std::string, Rational>> entry;
  for (std::size_t i = 0; i < n; ++i) entry.emplace_back("q" + std::to_string(i + 1) + "_1", Rational(BigInt(1), BigInt(n)));
  b.all("q_init", entry);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j <= lengths[i]; ++j) {
      std::string q = "q" + std::to_string(i + 1) + "_" + std::to_string(j);
      b.det(q, "a", "q" + std::to_string(i + 1) + "_" + std::to_string(j % lengths[i] + 1));
      b.det(q, "b", j == lengths[i] ? "q_T" : "q_bot");
    }
  b.all("q_T", "q_bot");
  b.all("q_bot", "q_bot");
  return b.build();
}

inline Afa afa_fig5() {
  std::vector<std::string> names{"q_init", "q1", "q2", "q3", "q4", "q5"};
  auto s = [&](std::initializer_list<StateId> m) { return StateSet(names.size(), m); };
  std::vector<std::vector<StateSet>> delta{
      {s({1, 2})},
      {s({2, 3}), s({0, 2})},
      {s({2}), s({4})},
      {s({1, 4}), s({5})},
      {s({5})},
      {s({5})},
  };
  return Afa(names, delta, s({1, 3, 4}));
}

inline Mdp fig5() { return afa_to_mdp(afa_fig5()); }

inline Mdp fig9() {
  return MdpBuilder({"q_init", "q1", "q2", "q3", "q4", "q5", "q6"}, {"a", "b"})
      .all("q_init", {{"q1", half}, {"q2", half}})
      .all("q1", "q_init")
      .all("q2", "q3")
      .det("q3", "a", "q2")
      .det("q3", "b", "q4")
      .all("q4", "q5")
      .all("q5", {{"q3", half}, {"q6", half}})
      .all("q6", "q5")
      .build();
}

inline Mdp fig10() {
  return MdpBuilder({"q_init", "q1", "q2", "q3"}, {"a", "b"})
      .row("q_init", "a", {{"q_init", half}, {"q1", half}})
      .row("q_init", "b", {{"q_init", half}, {"q2", half}})
      .det("q1", "a", "q1")
      .det("q1", "b", "q3")
      .all("q2", "q_init")
      .all("q3", "q1")
      .build();
}

inline Mdp fig11() {
  return MdpBuilder({"q_init", "q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8"}, {"a", "b"})
      .all("q_init", {{"q1", half}, {"q5", half}})
      .det("q1", "a", "q2")
      .det("q1", "b", "q3")
      .all("q2", "q1")
      .all("q3", "q4")
      .all("q4", "q1")
      .all("q5", "q6")
      .all("q6", "q7")
      .all("q7", "q8")
      .all("q8", "q_init")
      .build();
}

inline Mdp fig12() {
  return MdpBuilder({"q_init", "q1", "q2", "q3"}, {"a", "b"})
      .all("q_init", {{"q1", half}, {"q2", half}})
      .det("q1", "a", "q2")
      .det("q1", "b", "q1")
      .all("q2", "q3")
      .all("q3", "q2")
      .build();
}

inline Mdp fig13() {
  return MdpBuilder({"q_init", "q1", "q2"}, {"a"})
      .all("q_init", {{"q_init", half}, {"q1", half}})
      .all("q1", "q2")
      .all("q2", "q2")
      .build();
}

} // namespace fixtures

inline std::vector<std::string> fixture_names() {
  return {"fig1", "fig2", "fig3", "fig4", "afa_fig5", "fig5", "fig9", "fig10", "fig11", "fig12", "fig13"};
}

inline bool is_afa_fixture(const std::string &name) { return name == "afa_fig5"; }

// "fig4" is M_2; "fig4:n" picks n
inline Mdp fixture_mdp(const std::string &name) {
  using namespace fixtures;
  if (name == "fig1") return fig1();
  if (name == "fig2") return fig2();
  if (name == "fig3") return fig3();
  if (name == "fig4") return fig4(2);
  if (name.rfind("fig4:", 0) == 0) {
    std::string arg = name.substr(5);
    if (arg.empty() || arg.size() > 3 || !detail::all_digits(arg)) throw LookupError("bad fixture parameter in '" + name + "'");
    return fig4(std::stoul(arg));
  }
  if (name == "fig5") return fig5();
  if (name == "fig9") return fig9();
  if (name == "fig10") return fig10();
  if (name == "fig11") return fig11();
  if (name == "fig12") return fig12();
  if (name == "fig13") return fig13();
  if (name == "afa_fig5") throw LookupError("'afa_fig5' is an automaton, not an MDP");
  throw LookupError("unknown fixture '" + name + "'");
}

inline Afa fixture_afa(const std::string &name) {
  if (name == "afa_fig5") return fixtures::afa_fig5();
  throw LookupError("unknown automaton fixture '" + name + "'");
}

} // namespace syncmdp

#endif
