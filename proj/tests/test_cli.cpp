#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <syncmdp.hpp>

using namespace syncmdp;

namespace {
struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "syncmdp");
  std::vector<const char *> argv;
  for (auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name, const std::string &text) {
  auto p = std::filesystem::temp_directory_path() / ("syncmdp_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}
} // namespace

TEST(Cli, CheckExitCodes) {
  Outcome ls = run({"check", "--model", "fig1", "--mode", "limit-sure", "--target", "q2"});
  EXPECT_EQ(ls.code, 0) << ls.err;
  EXPECT_EQ(Json::parse(ls.out)["answer"], true);
  Outcome as = run({"check", "--model", "fig1", "--mode", "almost-sure", "--target", "q2"});
  EXPECT_EQ(as.code, 1);
  EXPECT_EQ(Json::parse(as.out)["answer"], false);
  Outcome mx = run({"check", "--model", "fig12", "--objective", "strongly", "--fn", "max", "--target", "q2,q3"});
  EXPECT_EQ(mx.code, 0);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check", "--model", "fig1"}).code, 2);
  EXPECT_EQ(run({"check", "--model", "fig1", "--target", "nope"}).code, 2);
  EXPECT_EQ(run({"check", "--model", "fig1", "--target", "q2", "--mode", "often"}).code, 2);
  EXPECT_EQ(run({"check", "--model", "/nonexistent/model.json", "--target", "q2"}).code, 2);
  Outcome bad = run({"check", "--model", temp_file("bad.json", "{\"states\": 3}"), "--target", "q2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("states"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ModelFileWithInitial) {
  std::string path = temp_file("tiny.json", serialize_model(fixture_mdp("fig13"), Distribution::dirac(3, 1)));
  // from q1 the mass is in q2 after one step
  EXPECT_EQ(run({"check", "--model", path, "--target", "q2"}).code, 0);
  EXPECT_EQ(run({"check", "--model", path, "--target", "q2", "--from", "q_init"}).code, 1);
}

TEST(Cli, SynthesizeValidates) {
  Outcome r = run({"synthesize", "--model", "fig3", "--mode", "almost-sure", "--target", "q2", "--phases", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["validation"]["ok"], true);
  EXPECT_EQ(j["checkpoints"].size(), 2u);
  Outcome e = run({"synthesize", "--model", "fig3", "--mode", "limit-sure", "--target", "q2", "--eps", "1/32"});
  EXPECT_EQ(e.code, 0) << e.err;
  Outcome lose = run({"synthesize", "--model", "fig1", "--mode", "almost-sure", "--target", "q2"});
  EXPECT_EQ(lose.code, 2);
}

TEST(Cli, SimulateWordAndStrategy) {
  Outcome w = run({"simulate", "--model", "fig1", "--word", "a", "--horizon", "2"});
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(w.out, "step\tq_init\tq1\tq2\tq3\n0\t1\t0\t0\t0\n1\t1/2\t1/2\t0\t0\n2\t1/4\t3/4\t0\t0\n");
  Mdp m = fixture_mdp("fig4");
  auto p = synth_sure_eventually(m, Distribution::dirac(m.num_states(), 0), StateSet::single(m.num_states(), m.state_index("q_T")));
  std::string path = temp_file("strategy.json", serialize_strategy(m, p.strategy));
  Outcome s = run({"simulate", "--model", "fig4", "--strategy", path, "--horizon", "7"});
  EXPECT_EQ(s.code, 0) << s.err;
  std::string last = s.out.substr(s.out.rfind("\n7\t"));
  EXPECT_EQ(std::count(last.begin(), last.end(), '1'), 1);
  EXPECT_EQ(run({"simulate", "--model", "fig1", "--word", "a", "--strategy", path}).code, 2);
}

TEST(Cli, Oracle) {
  Outcome r = run({"oracle", "--model", "fig1", "--target", "q2"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["answer"], false);
  EXPECT_EQ(j["supports"], 5);
}

TEST(Cli, Afa) {
  EXPECT_EQ(run({"afa", "--model", "afa_fig5", "--query", "finiteness", "--state", "q_init"}).out, "infinite\n");
  EXPECT_EQ(run({"afa", "--model", "afa_fig5", "--query", "emptiness", "--state", "q5"}).out, "empty\n");
  EXPECT_EQ(run({"afa", "--model", "afa_fig5", "--query", "membership", "--state", "q_init", "--length", "3"}).out,
            "accepted\n");
  EXPECT_EQ(run({"afa", "--model", "afa_fig5", "--query", "universal-finiteness"}).out, "infinite\n");
  EXPECT_EQ(run({"afa", "--model", "afa_fig5", "--query", "emptiness"}).code, 2);
}

TEST(Cli, ExamplesAndRandom) {
  Outcome list = run({"examples"});
  EXPECT_NE(list.out.find("fig12\n"), std::string::npos);
  Outcome dump = run({"examples", "--dump", "fig2"});
  EXPECT_EQ(parse_model(dump.out).num_states(), 3u);
  EXPECT_EQ(run({"examples", "--dump", "afa_fig5"}).out, serialize_afa(fixture_afa("afa_fig5")));
  Outcome rnd = run({"random", "--seed", "42", "--states", "5", "--actions", "2", "--branching", "2"});
  EXPECT_EQ(rnd.out, serialize_model(random_mdp(42, 5, 2, 2)));
  EXPECT_EQ(run({"random", "--kind", "afa", "--seed", "1", "--states", "3"}).out, serialize_afa(random_afa(1, 3, 2, 2)));
  EXPECT_EQ(run({"random", "--kind", "tree"}).code, 2);
}
