#pragma once

#include "votelab/margins.hpp"

// Profile synthesis: realizing a target margin matrix with ballots, and
// minimizing voter count over a fixed ranking pool.

namespace votelab {

// A target is a margin matrix used prescriptively. Realizable iff it is
// antisymmetric with zero diagonal and all off-diagonal entries share one
// parity.
using TargetMargins = MarginMatrix;

struct InfeasibleError : DomainError {
  using DomainError::DomainError;
};

void validate_target(const TargetMargins& t);  // throws DomainError

// Pair construction: for each ordered pair (x,y) owing margin, add matched
// ballot pairs that contribute +2 to (x,y) and 0 elsewhere. Odd targets get
// a seed ballot first. Always succeeds on a valid target.
Profile mcgarvey_debord_realize(const TargetMargins& t);

struct MinimizeOptions {
  long long voter_cap = 500;
  unsigned long long node_budget = 50'000'000;
};

struct SynthesisResult {
  Profile profile;
  long long total_voters = 0;
  bool optimal = false;  // true iff the search space was exhausted
  unsigned long long nodes = 0;
};

// Branch and bound over nonnegative counts for each pool ranking, exact
// margin match required. Throws InfeasibleError when no profile within the
// voter cap exists (or the node budget ran out with no incumbent).
SynthesisResult minimize_profile(const TargetMargins& t,
                                 const std::vector<Ranking>& pool,
                                 const MinimizeOptions& opt = {});

// p plus `copies` of every linear order over p's candidates. Margins are
// unchanged.
Profile pad_with_blocks(const Profile& p, long long copies);

}  // namespace votelab
