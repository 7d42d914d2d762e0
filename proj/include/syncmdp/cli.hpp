#ifndef SYNCMDP_CLI_HPP
#define SYNCMDP_CLI_HPP

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "fixtures.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "synthesis.hpp"

namespace syncmdp {

namespace cli {

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool is_fixture(const std::string &name) {
  for (const auto &n : fixture_names())
    if (n == name) return true;
  return name.rfind("fig4:", 0) == 0;
}

// fixture name or model file
inline ModelDocument load_model(const std::string &spec) {
  if (is_fixture(spec)) return ModelDocument{fixture_mdp(spec), std::nullopt};
  return parse_model_document(read_file(spec));
}

inline Afa load_afa(const std::string &spec) {
  if (is_fixture(spec)) return fixture_afa(spec);
  return parse_afa(read_file(spec));
}

inline Distribution initial_of(const ModelDocument &doc, const std::string &from) {
  if (!from.empty()) return parse_distribution_spec(doc.mdp, from);
  if (doc.initial) return *doc.initial;
  if (doc.mdp.has_state("q_init")) return Distribution::dirac(doc.mdp.num_states(), doc.mdp.state_index("q_init"));
  throw PreconditionError("no initial distribution: pass --from");
}

struct QueryFlags {
  std::string model, objective = "eventually", mode = "sure", fn = "sum", target, from;

  void attach(CLI::App *c) {
    c->add_option("--model", model, "fixture name or model file")->required();
    c->add_option("--objective", objective, "always|eventually|weakly|strongly");
    c->add_option("--mode", mode, "sure|almost-sure|limit-sure");
    c->add_option("--fn", fn, "sum|max");
    c->add_option("--target", target, "comma-separated states")->required();
    c->add_option("--from", from, "state or q1:1/2,q2:1/2");
  }

  AnalysisQuery query(const ModelDocument &doc) const {
    return make_query(parse_sync_mode(objective), parse_winning_mode(mode), parse_target_kind(fn),
                      parse_state_list(doc.mdp, target), initial_of(doc, from));
  }
};

} // namespace cli

// Exit codes: check gives 0 (true) / 1 (false); every command gives 2 on
// usage or input errors.
inline int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Synchronizing objectives for Markov decision processes"};
  app.require_subcommand(1);

  cli::QueryFlags checkf;
  auto *check = app.add_subcommand("check", "decide a synchronizing query and print the verdict");
  checkf.attach(check);

  cli::QueryFlags synf;
  std::string eps = "1/8";
  std::size_t phases = 3;
  auto *synth = app.add_subcommand("synthesize", "build and validate a winning strategy");
  synf.attach(synth);
  synth->add_option("--eps", eps, "limit-sure eventually precision");
  synth->add_option("--phases", phases, "phases of almost-sure schedules");

  std::string sim_model, sim_strategy, sim_word, sim_from;
  std::size_t horizon = 10;
  auto *sim = app.add_subcommand("simulate", "print the exact distribution sequence");
  sim->add_option("--model", sim_model)->required();
  auto *sim_s = sim->add_option("--strategy", sim_strategy, "strategy file");
  auto *sim_w = sim->add_option("--word", sim_word, "actions played in every state, one per step; the last repeats");
  sim_s->excludes(sim_w);
  sim->add_option("--from", sim_from);
  sim->add_option("--horizon", horizon);

  std::string or_model, or_target, or_from, or_objective = "eventually", or_fn = "sum";
  auto *orc = app.add_subcommand("oracle", "sure verdict by forward search over supports");
  orc->add_option("--model", or_model)->required();
  orc->add_option("--target", or_target)->required();
  orc->add_option("--from", or_from);
  orc->add_option("--objective", or_objective);
  orc->add_option("--fn", or_fn);

  std::string afa_model, afa_query = "emptiness", afa_state;
  std::size_t afa_length = 0;
  auto *afa = app.add_subcommand("afa", "questions on one-letter alternating automata");
  afa->add_option("--model", afa_model)->required();
  afa->add_option("--query", afa_query, "emptiness|finiteness|universal-finiteness|membership");
  afa->add_option("--state", afa_state);
  afa->add_option("--length", afa_length);

  std::string dump;
  auto *ex = app.add_subcommand("examples", "list fixtures or dump one");
  ex->add_option("--dump", dump, "fixture to print");

  std::string kind = "mdp";
  std::uint64_t seed = 0;
  std::size_t nq = 4, na = 2, branching = 2, clauses = 2, clause_size = 2;
  auto *rnd = app.add_subcommand("random", "print a seeded random instance");
  rnd->add_option("--kind", kind, "mdp|afa");
  rnd->add_option("--seed", seed);
  rnd->add_option("--states", nq);
  rnd->add_option("--actions", na);
  rnd->add_option("--branching", branching);
  rnd->add_option("--clauses", clauses);
  rnd->add_option("--clause-size", clause_size);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) {
      auto doc = cli::load_model(checkf.model);
      Verdict v = decide(doc.mdp, checkf.query(doc));
      out << serialize_verdict(doc.mdp, v);
      return v.answer ? 0 : 1;
    }
    if (synth->parsed()) {
      auto doc = cli::load_model(synf.model);
      SynthesisOptions opt;
      opt.eps = parse_rational(eps);
      opt.phases = phases;
      auto q = synf.query(doc);
      SynthesisResult r = synthesize(doc.mdp, q, opt);
      Json j;
      j["query"] = query_to_json(doc.mdp, q);
      j["construction"] = r.construction;
      if (r.step) j["step"] = *r.step;
      if (!r.checkpoints.empty()) j["checkpoints"] = r.checkpoints;
      j["validation"] = Json{{"ok", r.validation.ok}, {"detail", r.validation.detail}};
      j["strategy"] = strategy_to_json(doc.mdp, r.strategy);
      out << j.dump(2) << "\n";
      return r.validation.ok ? 0 : 1;
    }
    if (sim->parsed()) {
      auto doc = cli::load_model(sim_model);
      const Mdp &m = doc.mdp;
      FiniteStrategy s;
      if (!sim_strategy.empty()) {
        s = parse_strategy(m, cli::read_file(sim_strategy));
      } else {
        Plan plan;
        std::stringstream ss(sim_word);
        std::string a;
        while (std::getline(ss, a, ',')) plan.emplace_back(m.num_states(), m.action_index(a));
        s = FiniteStrategy::time_indexed(m.num_states(), m.num_actions(), plan);
      }
      out << outcome_table(m, symbolic_outcome(m, cli::initial_of(doc, sim_from), s, horizon));
      return 0;
    }
    if (orc->parsed()) {
      auto doc = cli::load_model(or_model);
      Distribution d0 = cli::initial_of(doc, or_from);
      SupportGraph g = support_graph(doc.mdp, d0.support());
      bool r = oracle_sure(g, parse_state_list(doc.mdp, or_target), parse_sync_mode(or_objective), parse_target_kind(or_fn));
      Json j{{"answer", r}, {"supports", g.size()}};
      out << j.dump(2) << "\n";
      return 0;
    }
    if (afa->parsed()) {
      Afa a = cli::load_afa(afa_model);
      if (afa_query == "universal-finiteness") {
        out << (universal_finiteness(a) ? "finite" : "infinite") << "\n";
        return 0;
      }
      if (afa_state.empty()) throw PreconditionError("--state is required for " + afa_query);
      StateId q = a.state_index(afa_state);
      if (afa_query == "emptiness") out << (emptiness(a, q) ? "empty" : "nonempty") << "\n";
      else if (afa_query == "finiteness") out << (finiteness(a, q) ? "finite" : "infinite") << "\n";
      else if (afa_query == "membership") out << (acc_n(a, afa_length).contains(q) ? "accepted" : "rejected") << "\n";
      else throw PreconditionError("unknown automaton query '" + afa_query + "'");
      return 0;
    }
    if (ex->parsed()) {
      if (dump.empty()) {
        for (const auto &n : fixture_names()) out << n << "\n";
      } else if (is_afa_fixture(dump)) {
        out << serialize_afa(fixture_afa(dump));
      } else {
        out << serialize_model(fixture_mdp(dump));
      }
      return 0;
    }
    if (rnd->parsed()) {
      if (kind == "mdp") out << serialize_model(random_mdp(seed, nq, na, branching));
      else if (kind == "afa") out << serialize_afa(random_afa(seed, nq, clauses, clause_size));
      else throw PreconditionError("unknown kind '" + kind + "'");
      return 0;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace syncmdp

#endif
