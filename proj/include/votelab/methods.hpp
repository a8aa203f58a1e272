#pragma once

#include "votelab/margins.hpp"

#include <array>

// Five margin-based voting methods. All of them are functions of the margin
// matrix alone, so each has a mask kernel plus profile-level wrappers.

namespace votelab {

enum class MethodId {
  borda,
  minimax,
  leximax,
  ranked_pairs,
  split_cycle,
};

inline constexpr std::array<MethodId, 5> all_methods = {
    MethodId::borda,       MethodId::minimax,     MethodId::leximax,
    MethodId::ranked_pairs, MethodId::split_cycle,
};

std::string to_string(MethodId id);                      // "ranked-pairs"
std::optional<MethodId> parse_method(const std::string& name);

struct WinnerSet {
  std::vector<Candidate> winners;  // sorted, nonempty
  bool operator==(const WinnerSet&) const = default;
};

// Ranked pairs enumerates every tie-breaking priority order consistent with
// descending edge weight. The universe count is the product of factorials of
// the weight-class sizes; past the cap the computation refuses.
struct RankedPairsOptions {
  unsigned long long universe_cap = 10000;
};

struct TieExplosionError : DomainError {
  unsigned long long universes;  // lower bound when counting overflowed
  TieExplosionError(unsigned long long universes_, const std::string& what_)
      : DomainError(what_), universes(universes_) {}
};

namespace kernel {

std::uint32_t borda_mask(const long long* m, int n);
std::uint32_t minimax_mask(const long long* m, int n);
std::uint32_t leximax_mask(const long long* m, int n);
std::uint32_t ranked_pairs_mask(const long long* m, int n,
                                const RankedPairsOptions& opt);
std::uint32_t split_cycle_mask(const long long* m, int n);
std::uint32_t method_mask(MethodId id, const long long* m, int n,
                          const RankedPairsOptions& opt = {});

}  // namespace kernel

WinnerSet winners_from_margins(MethodId id, const MarginMatrix& m,
                               const RankedPairsOptions& opt = {});

WinnerSet borda(const Profile& p);
WinnerSet minimax(const Profile& p);
WinnerSet leximax(const Profile& p);
WinnerSet ranked_pairs(const Profile& p, const RankedPairsOptions& opt = {});
WinnerSet split_cycle(const Profile& p);
WinnerSet evaluate_method(MethodId id, const Profile& p,
                          const RankedPairsOptions& opt = {});

}  // namespace votelab
