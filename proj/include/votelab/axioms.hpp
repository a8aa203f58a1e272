#pragma once

#include "votelab/methods.hpp"

#include <cstdint>
#include <random>

// Axiom checkers over concrete instances, plus deterministic violation
// hunting and seeded random sweeps.

namespace votelab {

enum class AxiomId {
  condorcet_winner,
  condorcet_loser,
  positive_involvement,
  negative_involvement,
  resolvability,
  n_resolvability,
  quasi_resoluteness,
  strict_positive_involvement,
  independence_of_clones,
  block_preservation,
  positive_negative_involvement,
  bullet_vote_positive_involvement,
};

inline constexpr std::array<AxiomId, 12> all_axioms = {
    AxiomId::condorcet_winner,
    AxiomId::condorcet_loser,
    AxiomId::positive_involvement,
    AxiomId::negative_involvement,
    AxiomId::resolvability,
    AxiomId::n_resolvability,
    AxiomId::quasi_resoluteness,
    AxiomId::strict_positive_involvement,
    AxiomId::independence_of_clones,
    AxiomId::block_preservation,
    AxiomId::positive_negative_involvement,
    AxiomId::bullet_vote_positive_involvement,
};

std::string to_string(AxiomId id);  // kebab-case, e.g. "condorcet-winner"
std::optional<AxiomId> parse_axiom(const std::string& name);

enum class BallotDomain { linear, weak };
std::string to_string(BallotDomain d);
std::optional<BallotDomain> parse_domain(const std::string& name);

struct CheckResult {
  bool passed = true;
  bool vacuous = false;  // precondition of the axiom instance did not apply
  std::string note;      // human-readable account of what was checked
};

// Per-instance checkers. Delta-style axioms take the added ballot(s)
// explicitly; preconditions that fail structurally (e.g. the added ballot
// does not rank the focus candidate uniquely first) raise DomainError,
// preconditions about the election outcome make the instance vacuous.
CheckResult check_condorcet_winner(MethodId f, const Profile& p);
CheckResult check_condorcet_loser(MethodId f, const Profile& p);
CheckResult check_positive_involvement(MethodId f, const Profile& p,
                                       const Ranking& added);
CheckResult check_negative_involvement(MethodId f, const Profile& p,
                                       const Ranking& added);
CheckResult check_resolvability(MethodId f, const Profile& p,
                                BallotDomain domain = BallotDomain::linear);
// Up to n added voters; n capped by `bound` (search is exponential in n).
CheckResult check_n_resolvability(MethodId f, const Profile& p, int n,
                                  BallotDomain domain = BallotDomain::linear,
                                  int bound = 3);
CheckResult check_quasi_resoluteness(MethodId f, const Profile& p);
CheckResult check_strict_positive_involvement(MethodId f, const Profile& p,
                                              const Ranking& added);
CheckResult check_independence_of_clones(MethodId f, const Profile& p,
                                         const Candidate& removed_clone,
                                         const std::vector<Candidate>& clones);
CheckResult check_block_preservation(MethodId f, const Profile& p);
CheckResult check_positive_negative_involvement(MethodId f, const Profile& p,
                                                const Ranking& added);
CheckResult check_bullet_vote_positive_involvement(MethodId f,
                                                   const Profile& p,
                                                   const Candidate& x);

// C is a clone set in p: |C| >= 2, proper subset, and every ballot ranks
// every non-member strictly above all of C or strictly below all of C.
bool is_clone_set(const Profile& p, const std::vector<Candidate>& clones);
std::vector<std::vector<Candidate>> detect_clone_sets(const Profile& p);

struct ViolationWitness {
  MethodId method{};
  AxiomId axiom{};
  Profile base;
  std::optional<Profile> delta;               // added voters, when relevant
  std::optional<Candidate> removed_candidate; // clone independence
  std::vector<Candidate> clones;              // clone independence
  Candidate focus;                            // candidate the axiom tracks
  WinnerSet before;
  WinnerSet after;
  BallotDomain domain = BallotDomain::linear;
  int n = 1;  // n-resolvability only
};

std::string witness_to_text(const ViolationWitness& w);
ViolationWitness parse_witness(const std::string& text);
// Re-runs the axiom instance recorded in the witness.
CheckResult replay_witness(const ViolationWitness& w);

enum class HuntStrategy { profiles, graphs };
std::string to_string(HuntStrategy s);
std::optional<HuntStrategy> parse_strategy(const std::string& name);

struct HuntOptions {
  int max_candidates = 4;
  long long max_voters = 12;          // profiles strategy
  HuntStrategy strategy = HuntStrategy::profiles;
  BallotDomain domain = BallotDomain::linear;
  long long max_weight = 5;           // graphs strategy
  unsigned long long instance_cap = 0;  // 0 = unbounded
  int n = 1;                          // n-resolvability
};

struct HuntResult {
  std::optional<ViolationWitness> witness;
  unsigned long long instances = 0;  // axiom instances examined
  unsigned long long skipped = 0;    // tie explosions
  bool space_exhausted = false;
};

// Deterministic exhaustive search, smallest instances first. Profiles
// strategy: candidate count ascending, voter count ascending, lexicographic
// count vectors; the first hit is minimal by voters. Graphs strategy:
// margin matrices by maximum weight ascending (both parities), realized via
// synthesis only after a hit.
HuntResult hunt_violations(MethodId f, AxiomId a, const HuntOptions& opt = {});

struct SweepOptions {
  unsigned long long instances = 5000;
  std::uint64_t seed = 0;
  int min_candidates = 3;
  int max_candidates = 5;
  long long max_voters = 20;
  BallotDomain domain = BallotDomain::linear;
  int n = 2;  // n-resolvability
};

struct SweepResult {
  unsigned long long instances = 0;
  unsigned long long violations = 0;
  unsigned long long vacuous = 0;
  unsigned long long skipped = 0;  // tie explosions
  std::optional<ViolationWitness> first;
  std::uint64_t seed = 0;
};

// Seeded random instances; deterministic for a fixed seed.
SweepResult sweep_axiom(MethodId f, AxiomId a, const SweepOptions& opt = {});

Profile random_profile(std::mt19937_64& rng, int min_candidates,
                       int max_candidates, long long max_voters,
                       BallotDomain domain);

}  // namespace votelab
