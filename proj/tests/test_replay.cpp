#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>

#include "doctest.h"
#include "oracles.hpp"
#include "votelab/replay.hpp"

using namespace votelab;

namespace {

const StepAssertion* find_assert(const ReplayReport& r,
                                 const std::string& needle) {
  for (const auto& a : r.assertions)
    if (a.label.find(needle) != std::string::npos) return &a;
  return nullptr;
}

}  // namespace

TEST_CASE("theorem ids round trip") {
  CHECK(to_string(TheoremId::thm5_ni) == "thm5-ni");
  for (auto id : all_theorems) CHECK(parse_theorem(to_string(id)) == id);
  CHECK(parse_theorem("1") == TheoremId::thm1);
  CHECK(parse_theorem("5") == TheoremId::thm5_pi);
  CHECK(parse_theorem("5-ni") == TheoremId::thm5_ni);
  CHECK_FALSE(parse_theorem("thm6").has_value());
  CHECK(theorem_takes_n(TheoremId::thm2));
  CHECK(theorem_takes_n(TheoremId::thm4));
  CHECK_FALSE(theorem_takes_n(TheoremId::thm1));
  CHECK_FALSE(theorem_takes_n(TheoremId::thm5_pi));
}

TEST_CASE("stored base profiles") {
  auto p = base_profile("P1");
  CHECK(p.total_voters() == 219);
  CHECK(p.count_of(Ranking::linear("daceb")) == 69);
  auto q = base_profile("Q1");
  CHECK(q.total_voters() == 209);
  CHECK(q.count_of(Ranking::linear("dbaec")) == 62);
  CHECK_THROWS_AS(base_profile("R1"), DomainError);
}

TEST_CASE("derived stage sequences") {
  auto seq = derive_sequence(TheoremId::thm1);
  REQUIRE(seq.size() == 5);
  CHECK(seq[0].first.total_voters() == 219);
  CHECK(seq[1].first.total_voters() == 245);
  CHECK(seq[2].first.total_voters() == 238);
  CHECK(seq[3].first.total_voters() == 261);
  CHECK(seq[4].first.total_voters() == 254);
  CHECK(seq[4].second.margin("a", "c") == 118);
  CHECK(seq[4].second.margin("c", "a") == -118);
  CHECK(seq[0].second.margin("a", "d") == 1);

  // The padded variants add one block of every linear order per copy.
  auto ni = derive_sequence(TheoremId::thm3);
  CHECK(ni[0].first.total_voters() == 219 + 147 * 120);
  CHECK(ni[0].second.m == seq[0].second.m);

  auto qni = derive_sequence(TheoremId::thm5_ni);
  CHECK(qni[0].first.total_voters() == 209 + 147 * 120);

  auto scaled = derive_sequence(TheoremId::thm2, 3);
  for (int s = 0; s < 5; ++s)
    for (size_t e = 0; e < 25; ++e)
      CHECK(scaled[s].second.m[e] == 3 * seq[s].second.m[e]);
  CHECK(derive_sequence(TheoremId::thm2, 2)[0].second.margin("a", "c") == 166);

  CHECK_THROWS_AS(derive_sequence(TheoremId::thm1, 2), DomainError);
  CHECK_THROWS_AS(derive_sequence(TheoremId::thm2, 0), DomainError);
}

TEST_CASE("first construction verifies over linear ballots") {
  auto r = verify_theorem1();
  CHECK(r.verified());
  CHECK(r.mode == BallotDomain::linear);
  CHECK(r.n == 1);

  auto* s3 = find_assert(r, "stage 3 defensible set stays within {b,d}");
  REQUIRE(s3 != nullptr);
  CHECK(s3->enumerated == 121);
  CHECK(s3->kind == AssertKind::quantified_over_deltas);

  auto* s5 =
      find_assert(r, "stage 5 defensible set equals {d} for all delta pairs");
  REQUIRE(s5 != nullptr);
  CHECK(s5->enumerated == 121ULL * 121ULL);

  CHECK(find_assert(r, "stage 1 Condorcet loser is d") != nullptr);
  CHECK(find_assert(r, "stage 1 margins are separated") != nullptr);
  CHECK(find_assert(r, "stage 3 edge weights pairwise differ by at least 4") !=
        nullptr);
  CHECK(find_assert(r, "stage 5 edge weights pairwise differ by at least 6") !=
        nullptr);
}

TEST_CASE("first construction verifies over weak ballots") {
  ReplayOptions opt;
  opt.mode = BallotDomain::weak;
  opt.jobs = 4;
  auto r = verify_theorem1(opt);
  CHECK(r.verified());
  auto* s3 = find_assert(r, "stage 3 defensible set stays within {b,d}");
  REQUIRE(s3 != nullptr);
  CHECK(s3->enumerated == 542);
  auto* s5 =
      find_assert(r, "stage 5 margins stay separated for all delta pairs");
  REQUIRE(s5 != nullptr);
  CHECK(s5->enumerated == 293764);

  // Worker count only changes the schedule.
  ReplayOptions serial;
  serial.mode = BallotDomain::weak;
  serial.jobs = 1;
  CHECK(same_assertions(r, verify_theorem1(serial)));
}

TEST_CASE("padded constructions verify with ballot floors") {
  auto r = verify_theorem3();
  CHECK(r.verified());
  auto* floor1 = find_assert(r, "stage 1 keeps at least 121 ballots");
  REQUIRE(floor1 != nullptr);
  CHECK(floor1->kind == AssertKind::availability);
  CHECK(find_assert(r, "stage 5 keeps at least 121 ballots") != nullptr);
  CHECK(find_assert(r, "the all-orders floor at stage 3") != nullptr);
  CHECK(find_assert(r, "second-to-last/last ballot patterns") != nullptr);

  auto pi = verify_theorem5(false);
  CHECK(pi.verified());
  auto* pc = find_assert(pi, "clone set {a,b,c,e} intact");
  REQUIRE(pc != nullptr);
  CHECK(pc->label.find("stage 1 keeps") == 0);
  CHECK(find_assert(pi, "removing clone b at stage 1 leaves Condorcet winner "
                        "a") != nullptr);
  CHECK(find_assert(pi, "keeps at least") == nullptr);

  auto ni = verify_theorem5(true);
  CHECK(ni.verified());
  auto* nc = find_assert(ni, "clone set {a,b,c,e} intact");
  REQUIRE(nc != nullptr);
  CHECK(nc->label.find("unpadded stage 1 core") != std::string::npos);
  CHECK(find_assert(ni, "the all-orders floor at stage 5") != nullptr);
}

TEST_CASE("scaled replays at n = 1 mirror the unscaled ones") {
  for (auto mode : {BallotDomain::linear, BallotDomain::weak}) {
    ReplayOptions opt;
    opt.mode = mode;
    opt.jobs = 4;
    CHECK(same_assertions(verify_theorem2(1, opt), verify_theorem1(opt)));
    CHECK(same_assertions(verify_theorem4(1, opt), verify_theorem3(opt)));
  }
}

TEST_CASE("scaled replays switch to interval certificates") {
  auto r = verify_theorem2(2);
  CHECK(r.verified());
  CHECK(r.n == 2);
  auto* s3 = find_assert(r, "stage 3 defensible set stays within {b,d}");
  REQUIRE(s3 != nullptr);
  CHECK(s3->enumerated == 7381);
  CHECK(s3->label.find("budget 2") != std::string::npos);
  auto* s5 =
      find_assert(r, "stage 5 defensible set equals {d} for all delta pairs");
  REQUIRE(s5 != nullptr);
  CHECK(s5->enumerated == 7381ULL * 7381ULL);
  CHECK(s5->detail.find("interval certificate") != std::string::npos);

  auto r4 = verify_theorem4(2);
  CHECK(r4.verified());
  auto* b5 = find_assert(r4, "the all-orders floor at stage 5");
  REQUIRE(b5 != nullptr);
  CHECK(b5->label.find("242 > ") != std::string::npos);
}

TEST_CASE("scale validation") {
  CHECK_THROWS_AS(verify_theorem2(0), DomainError);
  CHECK_THROWS_AS(verify_theorem2(-3), DomainError);
  CHECK_THROWS_AS(verify_theorem(TheoremId::thm1, 2), DomainError);
  CHECK_THROWS_AS(verify_theorem(TheoremId::thm5_ni, 3), DomainError);
}

TEST_CASE("mutation suites cover every stored count") {
  CHECK(mutation_suite(TheoremId::thm1).size() == 10);
  CHECK(mutation_suite(TheoremId::thm2).size() == 10);
  CHECK(mutation_suite(TheoremId::thm3).size() == 11);
  CHECK(mutation_suite(TheoremId::thm4).size() == 11);
  CHECK(mutation_suite(TheoremId::thm5_pi).size() == 12);
  CHECK(mutation_suite(TheoremId::thm5_ni).size() == 12);

  auto suite = mutation_suite(TheoremId::thm1);
  CHECK(suite[0].description == "base ballot daceb count -1");
  CHECK(suite[6].description == "transition 1 step 1 count +1");
  auto padded = mutation_suite(TheoremId::thm3);
  CHECK(padded.back().description == "block padding 147 -> 146");
  CHECK(padded.back().block);
}

TEST_CASE("every mutation breaks verification") {
  for (auto id : {TheoremId::thm1, TheoremId::thm5_ni}) {
    for (const auto& m : mutation_suite(id)) {
      ReplayOptions opt;
      opt.mutation = &m;
      auto r = verify_theorem(id, 1, opt);
      CHECK_MESSAGE(!r.verified(),
                    (to_string(id) + " survived: " + m.description));
    }
  }
  for (auto id : {TheoremId::thm2, TheoremId::thm3, TheoremId::thm4,
                  TheoremId::thm5_pi}) {
    auto suite = mutation_suite(id);
    ReplayOptions opt;
    opt.mutation = &suite.front();
    CHECK_FALSE(verify_theorem(id, 1, opt).verified());
    opt.mutation = &suite.back();
    CHECK_FALSE(verify_theorem(id, 1, opt).verified());
  }
}

TEST_CASE("mutation validation") {
  Mutation bad_stage{"", 7, 0, 1, false};
  ReplayOptions opt;
  opt.mutation = &bad_stage;
  CHECK_THROWS_AS(verify_theorem(TheoremId::thm1, 1, opt), DomainError);

  Mutation bad_entry{"", 0, 99, 1, false};
  opt.mutation = &bad_entry;
  CHECK_THROWS_AS(verify_theorem(TheoremId::thm1, 1, opt), DomainError);

  Mutation no_block{"", 0, 0, -1, true};
  opt.mutation = &no_block;
  CHECK_THROWS_AS(verify_theorem(TheoremId::thm1, 1, opt), DomainError);
}

TEST_CASE("report rendering") {
  auto r = verify_theorem1();
  auto text = report_to_text(r);
  CHECK(text.find("theorem: thm1") != std::string::npos);
  CHECK(text.find("mode: linear") != std::string::npos);
  CHECK(text.find("  PASS [margin-equality] stage 1 margin matrix") !=
        std::string::npos);
  CHECK(text.find("result: VERIFIED (" +
                  std::to_string(r.assertions.size()) + " assertions)") !=
        std::string::npos);

  auto json = report_to_json(r);
  CHECK(json.find("\"theorem\": \"thm1\"") != std::string::npos);
  CHECK(json.find("\"verified\": true") != std::string::npos);
  CHECK(json.find("\"enumerated\": 14641") != std::string::npos);
  CHECK(json == report_to_json(verify_theorem1()));

  Mutation m{"", 0, 0, -1, false};
  ReplayOptions opt;
  opt.mutation = &m;
  auto broken = verify_theorem(TheoremId::thm1, 1, opt);
  auto btext = report_to_text(broken);
  CHECK(btext.find("FAIL") != std::string::npos);
  CHECK(btext.find("result: FAILED") != std::string::npos);
  CHECK(report_to_json(broken).find("\"verified\": false") !=
        std::string::npos);
}

TEST_CASE("worker count resolution") {
  unsetenv("VOTELAB_JOBS");
  CHECK(resolve_jobs(3) == 3);
  CHECK(resolve_jobs(0) == 1);
  setenv("VOTELAB_JOBS", "4", 1);
  CHECK(resolve_jobs(0) == 4);
  CHECK(resolve_jobs(2) == 2);
  setenv("VOTELAB_JOBS", "junk", 1);
  CHECK(resolve_jobs(0) == 1);
  unsetenv("VOTELAB_JOBS");
}
