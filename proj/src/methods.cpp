#include "votelab/methods.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace votelab {

std::string to_string(MethodId id) {
  switch (id) {
    case MethodId::borda: return "borda";
    case MethodId::minimax: return "minimax";
    case MethodId::leximax: return "leximax";
    case MethodId::ranked_pairs: return "ranked-pairs";
    case MethodId::split_cycle: return "split-cycle";
  }
  throw DomainError("bad method id");
}

std::optional<MethodId> parse_method(const std::string& name) {
  for (auto id : all_methods)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

namespace kernel {

static std::uint32_t full_mask(int n) {
  return n >= 32 ? ~0u : (1u << n) - 1;
}

std::uint32_t borda_mask(const long long* m, int n) {
  long long best = std::numeric_limits<long long>::min();
  std::uint32_t mask = 0;
  for (int i = 0; i < n; ++i) {
    long long score = 0;
    for (int j = 0; j < n; ++j) score += m[i * n + j];
    if (score > best) {
      best = score;
      mask = 1u << i;
    } else if (score == best) {
      mask |= 1u << i;
    }
  }
  return mask;
}

std::uint32_t minimax_mask(const long long* m, int n) {
  if (n == 1) return 1;
  long long best = std::numeric_limits<long long>::max();
  std::uint32_t mask = 0;
  for (int i = 0; i < n; ++i) {
    long long worst = std::numeric_limits<long long>::min();
    for (int j = 0; j < n; ++j)
      if (j != i) worst = std::max(worst, m[j * n + i]);
    if (worst < best) {
      best = worst;
      mask = 1u << i;
    } else if (worst == best) {
      mask |= 1u << i;
    }
  }
  return mask;
}

std::uint32_t leximax_mask(const long long* m, int n) {
  if (n == 1) return 1;
  // Incoming margins sorted descending; smaller vector lexicographically
  // wins (the worst opposition is compared first).
  std::vector<std::vector<long long>> vec(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (j != i) vec[i].push_back(m[j * n + i]);
    std::sort(vec[i].rbegin(), vec[i].rend());
  }
  std::uint32_t mask = 1;
  for (int i = 1; i < n; ++i) {
    int lead = std::countr_zero(mask);
    if (vec[i] < vec[lead])
      mask = 1u << i;
    else if (vec[i] == vec[lead])
      mask |= 1u << i;
  }
  return mask;
}

std::uint32_t split_cycle_mask(const long long* m, int n) {
  long long s[max_candidates * max_candidates];
  widest_paths(m, n, s);
  std::uint32_t mask = 0;
  for (int j = 0; j < n; ++j) {
    bool defeated = false;
    for (int i = 0; i < n && !defeated; ++i)
      if (i != j && m[i * n + j] > 0 && m[i * n + j] > s[j * n + i])
        defeated = true;
    if (!defeated) mask |= 1u << j;
  }
  return mask;
}

namespace {

struct RpEdge {
  long long w;
  int from, to;
};

// Tie-breaking priority orders decompose into independent permutations of
// each equal-weight class.
struct RpClasses {
  std::vector<RpEdge> edges;          // descending weight, lex within class
  std::vector<std::pair<int, int>> classes;  // [begin, end) per weight
};

RpClasses rp_classes(const long long* m, int n,
                     const RankedPairsOptions& opt) {
  RpClasses out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i * n + j] > 0) out.edges.push_back({m[i * n + j], i, j});
  std::sort(out.edges.begin(), out.edges.end(), [](const RpEdge& a,
                                                   const RpEdge& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
  });
  unsigned long long universes = 1;
  size_t i = 0;
  while (i < out.edges.size()) {
    size_t j = i;
    while (j < out.edges.size() && out.edges[j].w == out.edges[i].w) ++j;
    out.classes.push_back({(int)i, (int)j});
    for (size_t k = 2; k <= j - i; ++k) {
      if (universes > opt.universe_cap / k) {
        auto max_ull = std::numeric_limits<unsigned long long>::max();
        unsigned long long crossed =
            universes > max_ull / k ? max_ull : universes * k;
        throw TieExplosionError(
            crossed, "ranked pairs tie explosion: more than " +
                         std::to_string(opt.universe_cap) +
                         " tie-breaking priority orders");
      }
      universes *= k;
    }
    i = j;
  }
  return out;
}

bool locked_reaches(const std::uint32_t* succ, int from, int to) {
  std::uint32_t seen = 1u << from;
  std::uint32_t frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= succ[v];
    }
    next &= ~seen;
    if ((next >> to) & 1) return true;
    seen |= next;
    frontier = next;
  }
  return false;
}

}  // namespace

std::uint32_t ranked_pairs_mask(const long long* m, int n,
                                const RankedPairsOptions& opt) {
  auto cls = rp_classes(m, n, opt);
  int e = (int)cls.edges.size();
  if (e == 0) return full_mask(n);

  // Odometer over per-class permutations of positions.
  std::vector<std::vector<int>> perm;
  for (auto [b, eend] : cls.classes) {
    std::vector<int> idx(eend - b);
    for (int k = 0; k < (int)idx.size(); ++k) idx[k] = b + k;
    perm.push_back(std::move(idx));
  }

  std::uint32_t winners = 0;
  std::vector<int> order(e);
  while (true) {
    int pos = 0;
    for (const auto& idx : perm)
      for (int k : idx) order[pos++] = k;

    std::uint32_t succ[max_candidates] = {};
    std::uint32_t has_in = 0;
    for (int k : order) {
      const auto& edge = cls.edges[k];
      if (locked_reaches(succ, edge.to, edge.from)) continue;
      succ[edge.from] |= 1u << edge.to;
      has_in |= 1u << edge.to;
    }
    winners |= full_mask(n) & ~has_in;

    int g = 0;
    while (g < (int)perm.size() &&
           !std::next_permutation(perm[g].begin(), perm[g].end()))
      ++g;
    if (g == (int)perm.size()) break;
  }
  return winners;
}

std::uint32_t method_mask(MethodId id, const long long* m, int n,
                          const RankedPairsOptions& opt) {
  switch (id) {
    case MethodId::borda: return borda_mask(m, n);
    case MethodId::minimax: return minimax_mask(m, n);
    case MethodId::leximax: return leximax_mask(m, n);
    case MethodId::ranked_pairs: return ranked_pairs_mask(m, n, opt);
    case MethodId::split_cycle: return split_cycle_mask(m, n);
  }
  throw DomainError("bad method id");
}

}  // namespace kernel

WinnerSet winners_from_margins(MethodId id, const MarginMatrix& m,
                               const RankedPairsOptions& opt) {
  auto mask = kernel::method_mask(id, m.m.data(), m.size(), opt);
  WinnerSet out;
  for (int i = 0; i < m.size(); ++i)
    if ((mask >> i) & 1) out.winners.push_back(m.candidates[i]);
  return out;
}

WinnerSet borda(const Profile& p) {
  return winners_from_margins(MethodId::borda, margin_matrix(p));
}

WinnerSet minimax(const Profile& p) {
  return winners_from_margins(MethodId::minimax, margin_matrix(p));
}

WinnerSet leximax(const Profile& p) {
  return winners_from_margins(MethodId::leximax, margin_matrix(p));
}

WinnerSet ranked_pairs(const Profile& p, const RankedPairsOptions& opt) {
  return winners_from_margins(MethodId::ranked_pairs, margin_matrix(p), opt);
}

WinnerSet split_cycle(const Profile& p) {
  return winners_from_margins(MethodId::split_cycle, margin_matrix(p));
}

WinnerSet evaluate_method(MethodId id, const Profile& p,
                          const RankedPairsOptions& opt) {
  return winners_from_margins(id, margin_matrix(p), opt);
}

}  // namespace votelab
