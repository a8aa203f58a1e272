#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

// Drives the installed binary end to end. VOTELAB_CLI_PATH and
// VOTELAB_DATA_DIR come from the build system.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "votelab_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunResult run(const std::string& args) {
  auto out_f = work_dir() / "stdout.txt";
  auto err_f = work_dir() / "stderr.txt";
  std::string cmd = std::string("'") + VOTELAB_CLI_PATH + "' " + args + " > '" +
                    out_f.string() + "' 2> '" + err_f.string() + "'";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_f);
  r.err = slurp(err_f);
  return r;
}

std::string data_file(const std::string& name) {
  return std::string("'") + VOTELAB_DATA_DIR + "/" + name + "'";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("margins output matches the stored edge lists") {
  for (auto fam : {"p", "q"}) {
    auto r = run("margins " + data_file(std::string(1, fam[0]) + "1.profile"));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          slurp(fs::path(VOTELAB_DATA_DIR) /
                (std::string(1, fam[0]) + "_m1.edges")));
  }
}

TEST_CASE("defensible summarizes the base profile") {
  auto r = run("defensible " + data_file("p1.profile"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "defensible: {a,d}"));
  CHECK(contains(r.out, "condorcet-winner: (none)"));
  CHECK(contains(r.out, "condorcet-loser: d"));
  CHECK(contains(r.out, "separated: yes"));
  CHECK(contains(r.out, "uniquely-weighted: no"));

  auto j = run("--format structured defensible " + data_file("p1.profile"));
  CHECK(j.exit_code == 0);
  CHECK(contains(j.out, "\"separated\": true"));
  CHECK(contains(j.out, "\"condorcet_loser\": \"d\""));
}

TEST_CASE("winners runs a method over a profile file") {
  auto r = run("winners --method minimax " +
               data_file("witness_minimax_condorcet_loser.profile"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "winners: {d}"));

  auto j = run("--format structured winners --method split-cycle " +
               data_file("p1.profile"));
  CHECK(j.exit_code == 0);
  CHECK(contains(j.out, "\"method\": \"split-cycle\""));

  auto bad = run("winners --method approval " + data_file("p1.profile"));
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "unknown method"));
}

TEST_CASE("verify replays one construction") {
  auto r = run("verify --theorem thm1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "theorem: thm1"));
  CHECK(contains(r.out, "result: VERIFIED"));
  CHECK(contains(r.out, "all replays verified (1 report)"));

  // Scaled theorems default to n = 2 when --n is not given.
  auto r2 = run("verify --theorem thm2");
  CHECK(r2.exit_code == 0);
  CHECK(contains(r2.out, "n: 2"));
  CHECK(contains(r2.out, "interval certificate"));

  auto weak = run("--jobs 4 verify --theorem thm5-ni --mode weak");
  CHECK(weak.exit_code == 0);
  CHECK(contains(weak.out, "mode: weak"));

  auto j = run("--format structured verify --theorem thm3");
  CHECK(j.exit_code == 0);
  CHECK(j.out.front() == '[');
  CHECK(contains(j.out, "\"verified\": true"));

  auto bad = run("verify --theorem thm9");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "unknown theorem"));

  auto bad_n = run("verify --theorem thm1 --n 2");
  CHECK(bad_n.exit_code == 2);
  CHECK(contains(bad_n.err, "does not take a scale parameter"));
}

TEST_CASE("check-axiom reports stored violations") {
  auto borda = run("check-axiom --method borda --axiom condorcet-winner " +
                   data_file("witness_borda_condorcet_winner.profile"));
  CHECK(borda.exit_code == 1);
  CHECK(contains(borda.out, "passed: NO"));
  CHECK(contains(borda.out, "Condorcet winner"));

  auto minimax = run("check-axiom --method minimax --axiom condorcet-loser " +
                     data_file("witness_minimax_condorcet_loser.profile"));
  CHECK(minimax.exit_code == 1);
  CHECK(contains(minimax.out, "passed: NO"));

  auto sc = run("check-axiom --method split-cycle --axiom resolvability " +
                data_file("witness_split_cycle_resolvability.profile"));
  CHECK(sc.exit_code == 1);
  CHECK(contains(sc.out, "cannot be made unique"));

  // The same profile passes a different axiom vacuously.
  auto vac = run("check-axiom --method minimax --axiom condorcet-winner " +
                 data_file("witness_minimax_condorcet_loser.profile"));
  CHECK(vac.exit_code == 0);
  CHECK(contains(vac.out, "passed: yes (vacuous)"));

  auto pass = run("check-axiom --method minimax --axiom positive-involvement "
                  "--added 'a>b>c>d' " +
                  data_file("witness_minimax_condorcet_loser.profile"));
  CHECK(pass.exit_code == 0);
  CHECK(contains(pass.out, "passed: yes"));

  auto missing = run("check-axiom --method borda --axiom positive-involvement " +
                     data_file("p1.profile"));
  CHECK(missing.exit_code == 2);
  CHECK(contains(missing.err, "needs --added RANKING"));

  auto nres = run("check-axiom --method split-cycle --axiom n-resolvability "
                  "--n 2 " +
                  data_file("witness_split_cycle_resolvability.profile"));
  CHECK(nres.exit_code == 0);
}

TEST_CASE("hunt finds a witness that replay reproduces") {
  auto hunt = run("hunt --method borda --axiom condorcet-winner "
                  "--max-candidates 3 --max-voters 5");
  CHECK(hunt.exit_code == 0);
  CHECK(contains(hunt.out, "method: borda"));
  CHECK(contains(hunt.out, "axiom: condorcet-winner"));
  CHECK(contains(hunt.out, "base:"));
  CHECK(contains(hunt.out, "# instances examined:"));

  auto wfile = work_dir() / "hunted.witness";
  spit(wfile, hunt.out);
  auto replay = run("replay '" + wfile.string() + "'");
  CHECK(replay.exit_code == 0);
  CHECK(contains(replay.out, "violation reproduced: yes"));

  auto none = run("hunt --method minimax --axiom condorcet-winner "
                  "--max-candidates 2 --max-voters 4");
  CHECK(none.exit_code == 1);
  CHECK(contains(none.out, "no violation found"));
  CHECK(contains(none.out, "exhausted: yes"));

  auto j = run("--format structured hunt --method minimax "
               "--axiom condorcet-winner --max-candidates 2 --max-voters 4");
  CHECK(j.exit_code == 1);
  CHECK(contains(j.out, "\"found\": false"));
  CHECK(contains(j.out, "\"space_exhausted\": true"));
}

TEST_CASE("replay rejects a witness that does not reproduce") {
  std::string text =
      "method: minimax\n"
      "axiom: condorcet-winner\n"
      "base:\n"
      "candidates: a,b,c\n"
      "2: a | b | c\n"
      "1: b | c | a\n";
  auto wfile = work_dir() / "stale.witness";
  spit(wfile, text);
  auto r = run("replay '" + wfile.string() + "'");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "violation reproduced: NO"));

  spit(work_dir() / "broken.witness", "method minimax\n");
  auto bad = run("replay '" + (work_dir() / "broken.witness").string() + "'");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "expected 'key: value'"));
}

TEST_CASE("sweep summarizes seeded random checking") {
  auto clean = run("sweep --method minimax --axiom condorcet-winner "
                   "--instances 60 --seed 7 --max-voters 9");
  CHECK(clean.exit_code == 0);
  CHECK(contains(clean.out, "instances: 60"));
  CHECK(contains(clean.out, "violations: 0"));
  CHECK(contains(clean.out, "seed: 7"));

  auto dirty = run("sweep --method borda --axiom condorcet-winner "
                   "--instances 300 --seed 42 --max-voters 9");
  CHECK(dirty.exit_code == 1);
  CHECK(contains(dirty.out, "method: borda"));
  CHECK(contains(dirty.out, "base:"));

  auto j = run("--format structured sweep --method borda "
               "--axiom condorcet-winner --instances 300 --seed 42 "
               "--max-voters 9");
  CHECK(j.exit_code == 1);
  CHECK(contains(j.out, "\"first_witness\""));
}

TEST_CASE("synthesize realizes and minimizes targets") {
  auto pairs = run("synthesize --target " + data_file("p_m1.edges"));
  CHECK(pairs.exit_code == 0);
  CHECK(contains(pairs.out, "# total voters:"));

  auto mfile = work_dir() / "realized.profile";
  spit(mfile, pairs.out);
  auto back = run("margins '" + mfile.string() + "'");
  CHECK(back.exit_code == 0);
  CHECK(back.out == slurp(fs::path(VOTELAB_DATA_DIR) / "p_m1.edges"));

  auto pool = work_dir() / "pool.rankings";
  spit(pool,
       "# the six orders of the stored base profile\n"
       "d>a>c>e>b\n"
       "e>b>a>c>d\n"
       "b>c>a>e>d\n"
       "c>d>e>b>a\n"
       "d>b>a>c>e\n"
       "e>d>c>b>a\n");
  auto min = run("synthesize --target " + data_file("p_m1.edges") +
                 " --pool '" + pool.string() + "'");
  CHECK(min.exit_code == 0);
  CHECK(contains(min.out, "# total voters: 219"));
  CHECK(contains(min.out, "# optimal: yes"));

  auto narrow = work_dir() / "narrow.rankings";
  spit(narrow, "a>b>c>d>e\n");
  auto stuck = run("synthesize --target " + data_file("p_m1.edges") +
                   " --pool '" + narrow.string() + "'");
  CHECK(stuck.exit_code == 1);
  CHECK(contains(stuck.err, "infeasible:"));

  auto bad = work_dir() / "mixed.edges";
  spit(bad, "candidates: a,b,c\na b 2\na c 1\nb c 2\n");
  auto rejected = run("synthesize --target '" + bad.string() + "'");
  CHECK(rejected.exit_code == 2);
  CHECK(contains(rejected.err, "even or all be odd"));
}

TEST_CASE("enumerate lists ranking spaces") {
  auto r = run("enumerate --candidates 3 --kind weak");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 14);

  auto j = run("--format structured enumerate --candidates 4 --kind linear");
  CHECK(j.exit_code == 0);
  CHECK(contains(j.out, "\"count\": 24"));

  auto bad = run("enumerate --candidates 0");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("argument errors exit with code 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("margins").exit_code == 2);
  CHECK(run("margins /nonexistent/x.profile").exit_code == 2);
  CHECK(run("--format yaml enumerate").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}
