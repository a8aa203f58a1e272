#pragma once

#include "votelab/axioms.hpp"

// Mechanical verification of the five-stage impossibility constructions.
// Each theorem fixes a base profile, four ballot-count transitions between
// five stages, the expected margin matrix at every stage, and a family of
// combinatorial claims (defensible sets, separation gaps, Condorcet status,
// ballot availability, and claims quantified over all bounded deltas).

namespace votelab {

enum class TheoremId { thm1, thm2, thm3, thm4, thm5_pi, thm5_ni };

inline constexpr std::array<TheoremId, 6> all_theorems = {
    TheoremId::thm1, TheoremId::thm2,    TheoremId::thm3,
    TheoremId::thm4, TheoremId::thm5_pi, TheoremId::thm5_ni,
};

std::string to_string(TheoremId id);  // "thm1" .. "thm5-ni"
std::optional<TheoremId> parse_theorem(const std::string& name);
bool theorem_takes_n(TheoremId id);  // thm2 and thm4

enum class AssertKind {
  margin_equality,
  defensible_subset,
  separation,
  condorcet_status,
  availability,
  clone_set,
  quantified_over_deltas,
};
std::string to_string(AssertKind k);  // "margin-equality" etc.

struct StepAssertion {
  std::string label;
  AssertKind kind{};
  bool passed = true;
  std::string detail;  // counterexample or strategy note; empty when silent
  unsigned long long enumerated = 0;  // size of the quantified space
};

struct ReplayReport {
  TheoremId theorem{};
  int n = 1;
  BallotDomain mode = BallotDomain::linear;
  std::vector<StepAssertion> assertions;
  double elapsed_seconds = 0;  // never serialized

  bool verified() const;
};

// Equality over (label, kind, passed, enumerated), ignoring theorem id and
// time. The scaled replays at n = 1 must match their unscaled counterparts
// under this relation.
bool same_assertions(const ReplayReport& a, const ReplayReport& b);

// id: "P1" or "Q1".
Profile base_profile(const std::string& id);

// The five stage profiles with their margin matrices, after applying the
// theorem's transitions (scaled by n where the theorem takes n).
std::vector<std::pair<Profile, MarginMatrix>> derive_sequence(TheoremId id,
                                                              int n = 1);

// A deliberate single-count corruption of the construction data. Applying
// one must make verification fail.
struct Mutation {
  std::string description;
  int stage = 0;       // 0 = base profile, 1..4 = transition index
  int entry = 0;       // ballot row (stage 0) or step row (stages 1..4)
  long long delta = 0; // added to the count
  bool block = false;  // instead perturb the all-orders block count
};

std::vector<Mutation> mutation_suite(TheoremId id);

struct ReplayOptions {
  BallotDomain mode = BallotDomain::linear;
  int jobs = 0;  // 0 = VOTELAB_JOBS env or 1
  const Mutation* mutation = nullptr;
};

ReplayReport verify_theorem1(const ReplayOptions& opt = {});
ReplayReport verify_theorem2(int n, const ReplayOptions& opt = {});
ReplayReport verify_theorem3(const ReplayOptions& opt = {});
ReplayReport verify_theorem4(int n, const ReplayOptions& opt = {});
ReplayReport verify_theorem5(bool negative_variant,
                             const ReplayOptions& opt = {});
ReplayReport verify_theorem(TheoremId id, int n = 1,
                            const ReplayOptions& opt = {});

std::string report_to_text(const ReplayReport& r);
std::string report_to_json(const ReplayReport& r);

int resolve_jobs(int requested);  // 0 -> env VOTELAB_JOBS -> 1

}  // namespace votelab
