#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "votelab/profile.hpp"

using namespace votelab;

TEST_CASE("ranking construction validates and normalizes") {
  Ranking r({{"b", "a"}, {"c"}});
  CHECK(r.tiers[0] == std::vector<Candidate>{"a", "b"});
  CHECK(r.num_candidates() == 3);
  CHECK(!r.is_linear());
  CHECK(r.tier_of("c") == 1);
  CHECK(r.tier_of("z") == -1);
  CHECK(r.to_string() == "a,b | c");
  CHECK(r.compact() == "a=b>c");

  CHECK_THROWS_AS(Ranking({{"a"}, {"a"}}), DomainError);
  CHECK_THROWS_AS(Ranking({{"a"}, {}}), DomainError);
  CHECK_THROWS_AS(Ranking(std::vector<std::vector<Candidate>>{}), DomainError);
}

TEST_CASE("linear rankings and extremes") {
  auto r = Ranking::linear("cab");
  CHECK(r.is_linear());
  CHECK(r.compact() == "c>a>b");
  CHECK(r.top() == Candidate("c"));
  CHECK(r.bottom() == Candidate("b"));
  auto rev = r.reversed();
  CHECK(rev.compact() == "b>a>c");

  Ranking tied({{"a", "b"}, {"c"}});
  CHECK(!tied.top().has_value());
  CHECK(tied.bottom() == Candidate("c"));
}

TEST_CASE("profile normalization merges and validates") {
  auto p = Profile::make({"a", "b", "c"},
                         {{Ranking::linear("abc"), 2},
                          {Ranking::linear("abc"), 3},
                          {Ranking::linear("cba"), 0},
                          {Ranking::linear("bca"), 1}});
  CHECK(p.ballots.size() == 2);
  CHECK(p.count_of(Ranking::linear("abc")) == 5);
  CHECK(p.count_of(Ranking::linear("cba")) == 0);
  CHECK(p.total_voters() == 6);

  CHECK_THROWS_AS(Profile::make({"a", "b"}, {{Ranking::linear("ab"), -1}}),
                  DomainError);
  CHECK_THROWS_AS(Profile::make({"a", "b"}, {}), DomainError);
  CHECK_THROWS_AS(
      Profile::make({"a", "b"}, {{Ranking::linear("a"), 1}}),
      DomainError);  // ballot must rank every candidate
  CHECK_THROWS_AS(
      Profile::make({"a"}, {{Ranking::linear("ab"), 1}}),
      DomainError);  // ballot mentions an unknown candidate
}

TEST_CASE("profile arithmetic") {
  auto p = Profile::make({"a", "b"}, {{Ranking::linear("ab"), 3}});
  auto q = Profile::make({"a", "b"}, {{Ranking::linear("ba"), 2}});
  auto s = add_profiles(p, q);
  CHECK(s.total_voters() == 5);

  auto t = add_ballot(s, Ranking::linear("ab"), 2);
  CHECK(t.count_of(Ranking::linear("ab")) == 5);

  auto u = remove_ballots(t, Ranking::linear("ba"), 2);
  CHECK(u.count_of(Ranking::linear("ba")) == 0);
  CHECK_THROWS_AS(remove_ballots(u, Ranking::linear("ba"), 1), DomainError);

  auto v = scale_profile(p, 4);
  CHECK(v.total_voters() == 12);
  CHECK_THROWS_AS(scale_profile(p, 0), DomainError);
}

TEST_CASE("candidate removal restricts every ballot") {
  auto p = Profile::make({"a", "b", "c"}, {{Ranking({{"a", "b"}, {"c"}}), 2},
                                           {Ranking::linear("cab"), 1}});
  auto q = remove_candidate(p, "b");
  CHECK(q.candidates == std::vector<Candidate>{"a", "c"});
  CHECK(q.count_of(Ranking({{"a"}, {"c"}})) == 2);
  CHECK(q.count_of(Ranking::linear("ca")) == 1);
  auto last = remove_candidate(q, "a");
  CHECK(last.candidates == std::vector<Candidate>{"c"});
  CHECK_THROWS_AS(remove_candidate(last, "c"), DomainError);
  CHECK_THROWS_AS(remove_candidate(p, "z"), DomainError);
}

TEST_CASE("enumeration counts match the reference") {
  std::vector<Candidate> cands;
  for (int k = 1; k <= 5; ++k) {
    cands.push_back(std::string(1, (char)('a' + k - 1)));
    auto lin = enumerate_linear_orders(cands);
    unsigned long long fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    CHECK(lin.size() == fact);
    CHECK(std::set<Ranking>(lin.begin(), lin.end()).size() == lin.size());

    auto weak = enumerate_weak_orders(cands);
    CHECK(weak.size() == oracles::fubini(k));
    auto ref = oracles::weak_orders(cands);
    CHECK(weak == ref);
  }
}

TEST_CASE("all-orders blocks cancel pairwise") {
  auto block = block_of_all_linear_orders({"a", "b", "c", "d"}, 2);
  CHECK(block.total_voters() == 2 * 24);
  for (const auto& b : block.ballots) CHECK(b.count == 2);
  CHECK_THROWS_AS(block_of_all_linear_orders({"a", "b"}, 0), DomainError);
}

TEST_CASE("text format round trips") {
  std::string text =
      "# comment\n"
      "candidates: a, b, c\n"
      "2: a | b, c\n"
      "\n"
      "1: c | b | a\n";
  auto p = parse_profile_text(text);
  CHECK(p.total_voters() == 3);
  CHECK(p.count_of(Ranking({{"a"}, {"b", "c"}})) == 2);
  auto again = parse_profile_text(profile_to_text(p));
  CHECK(again == p);
}

TEST_CASE("text format reports the offending line") {
  auto check_line = [](const std::string& text, int line) {
    try {
      parse_profile_text(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == line);
    }
  };
  check_line("2: a | b\n", 1);                        // missing header
  check_line("candidates: a,b\nx: a | b\n", 2);       // bad count
  check_line("candidates: a,b\n2: a | b\n3: a\n", 3); // partial ballot
  check_line("candidates: a,\n", 1);                  // empty name
}

TEST_CASE("json format round trips") {
  auto p = Profile::make({"a", "b", "c"}, {{Ranking({{"b"}, {"a", "c"}}), 4},
                                           {Ranking::linear("abc"), 1}});
  auto q = parse_profile_json(profile_to_json(p));
  CHECK(q == p);

  // Autodetection: JSON starts with '{', the text format does not.
  CHECK(parse_profile(profile_to_json(p)) == p);
  CHECK(parse_profile(profile_to_text(p)) == p);
}

TEST_CASE("ranking order is deterministic") {
  auto a = Ranking::linear("abc");
  auto b = Ranking({{"a", "b"}, {"c"}});
  CHECK(a != b);
  CHECK((a < b || b < a));
}
