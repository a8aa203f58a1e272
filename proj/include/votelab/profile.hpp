#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Anonymous preference profiles over a fixed candidate set. Ballots are
// strict weak orders stored as tiers: earlier tier beats later tier,
// candidates inside a tier are tied.

namespace votelab {

using Candidate = std::string;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  int line;  // 1-based input line, 0 when the input has no line structure
  ParseError(int line_, const std::string& what_);
};

struct Ranking {
  // Canonical form: candidates sorted within each tier, no empty tier,
  // no candidate in two tiers.
  std::vector<std::vector<Candidate>> tiers;

  Ranking() = default;
  explicit Ranking(std::vector<std::vector<Candidate>> raw_tiers);

  // One single-character candidate per tier: linear("dcab") = d>c>a>b.
  static Ranking linear(std::string_view order);

  bool is_linear() const;
  int num_candidates() const;
  std::vector<Candidate> candidates() const;  // sorted union of tiers
  bool contains(const Candidate& c) const;
  int tier_of(const Candidate& c) const;  // -1 when absent
  Ranking reversed() const;

  // The unique top/bottom candidate, or nullopt when that tier is a tie.
  std::optional<Candidate> top() const;
  std::optional<Candidate> bottom() const;

  std::string to_string() const;  // "a,b | c" (file format, one line)
  std::string compact() const;    // "a=b>c" (for labels and messages)

  auto operator<=>(const Ranking&) const = default;
};

Ranking reverse_ranking(const Ranking& r);

// Extends a ranking over `listed` candidates to the full candidate set by
// appending one bottom tier with everything unlisted.
Ranking complete_ranking(const Ranking& listed,
                         const std::vector<Candidate>& all);

struct Ballot {
  Ranking ranking;
  long long count = 0;

  auto operator<=>(const Ballot&) const = default;
};

struct Profile {
  std::vector<Candidate> candidates;  // sorted, unique, size >= 1
  std::vector<Ballot> ballots;        // sorted by ranking, counts > 0

  // Normalizes (sorts, merges duplicate rankings, drops zero counts) and
  // validates: every ranking partitions `candidates`, counts nonnegative,
  // at least one voter in total.
  static Profile make(std::vector<Candidate> candidates,
                      std::vector<Ballot> ballots);

  long long total_voters() const;
  long long count_of(const Ranking& r) const;
  int num_candidates() const { return (int)candidates.size(); }

  bool operator==(const Profile&) const = default;
};

Profile add_profiles(const Profile& p, const Profile& q);
Profile add_ballot(const Profile& p, const Ranking& r, long long count);
Profile remove_ballots(const Profile& p, const Ranking& r, long long count);
Profile scale_profile(const Profile& p, long long n);
Profile remove_candidate(const Profile& p, const Candidate& c);

std::vector<Ranking> enumerate_linear_orders(
    const std::vector<Candidate>& candidates);
std::vector<Ranking> enumerate_weak_orders(
    const std::vector<Candidate>& candidates);

// One ballot per linear order, each with the same count.
Profile block_of_all_linear_orders(const std::vector<Candidate>& candidates,
                                   long long copies);

// Text format. '#' starts a comment line, blank lines are skipped.
//   candidates: a,b,c
//   2: a | b,c
//   1: c | a | b
Profile parse_profile_text(const std::string& text);
std::string profile_to_text(const Profile& p);

// Structured format:
//   {"candidates":["a","b"],"ballots":[{"count":2,"tiers":[["a"],["b"]]}]}
Profile parse_profile_json(const std::string& text);
std::string profile_to_json(const Profile& p);

// Auto-detects JSON (first significant byte '{') vs text.
Profile parse_profile(const std::string& text);

std::vector<Candidate> parse_candidate_list(const std::string& csv, int line);
Ranking parse_ranking_text(const std::string& tier_spec, int line);

}  // namespace votelab
