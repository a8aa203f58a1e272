#pragma once

// Reference implementations written as literal translations of the
// definitions, kept deliberately slow and separate from the library code.
// Tests cross-check library results against these on small inputs.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "votelab/margins.hpp"
#include "votelab/methods.hpp"

namespace oracles {

using votelab::Candidate;
using votelab::MarginMatrix;
using votelab::Profile;
using votelab::Ranking;

// Number of weak orders on n elements by the recurrence
// a(n) = sum over k of C(n,k) * a(n-k).
inline unsigned long long fubini(int n) {
  std::vector<unsigned long long> a(n + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = 1; k <= m; ++k) {
      unsigned long long c = 1;
      for (int i = 0; i < k; ++i) c = c * (m - i) / (i + 1);
      a[m] += c * a[m - k];
    }
  }
  return a[n];
}

// Every weak order arises from some level assignment; enumerate all k^k
// assignments and deduplicate by the induced tier structure.
inline std::vector<Ranking> weak_orders(const std::vector<Candidate>& cands) {
  int k = (int)cands.size();
  std::set<std::string> seen;
  std::vector<Ranking> out;
  std::vector<int> levels(k, 0);
  while (true) {
    std::vector<int> distinct(levels);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    std::vector<std::vector<Candidate>> tiers(distinct.size());
    for (int i = 0; i < k; ++i) {
      int t = (int)(std::lower_bound(distinct.begin(), distinct.end(),
                                     levels[i]) -
                    distinct.begin());
      tiers[t].push_back(cands[i]);
    }
    Ranking r(tiers);
    if (seen.insert(r.to_string()).second) out.push_back(r);
    int pos = k - 1;
    while (pos >= 0 && levels[pos] == k - 1) levels[pos--] = 0;
    if (pos < 0) break;
    ++levels[pos];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Positional Borda count; defined only for profiles of linear ballots.
inline std::vector<Candidate> borda_positional(const Profile& p) {
  std::map<Candidate, long long> score;
  for (const auto& c : p.candidates) score[c] = 0;
  int k = (int)p.candidates.size();
  for (const auto& b : p.ballots)
    for (int t = 0; t < (int)b.ranking.tiers.size(); ++t)
      score[b.ranking.tiers[t][0]] += (long long)(k - 1 - t) * b.count;
  long long best = score.begin()->second;
  for (const auto& [c, s] : score) best = std::max(best, s);
  std::vector<Candidate> out;
  for (const auto& [c, s] : score)
    if (s == best) out.push_back(c);
  return out;
}

inline long long margin_of(const MarginMatrix& m, int i, int j) {
  return m.m[i * m.candidates.size() + j];
}

// D(P) = { x : for every y there is some z with m(z,y) >= m(y,x) }.
inline std::vector<Candidate> defensible_brute(const MarginMatrix& m) {
  int k = (int)m.candidates.size();
  std::vector<Candidate> out;
  for (int x = 0; x < k; ++x) {
    bool in = true;
    for (int y = 0; y < k && in; ++y) {
      bool covered = false;
      for (int z = 0; z < k && !covered; ++z)
        if (margin_of(m, z, y) >= margin_of(m, y, x)) covered = true;
      in = covered;
    }
    if (in) out.push_back(m.candidates[x]);
  }
  return out;
}

// Strongest path from x to y along positive margins, maximizing the
// minimum step; simple paths only, by full DFS.
inline long long widest_path_brute(const MarginMatrix& m, int x, int y) {
  int k = (int)m.candidates.size();
  long long best = 0;
  std::vector<bool> used(k, false);
  std::function<void(int, long long)> dfs = [&](int at, long long width) {
    if (at == y) {
      best = std::max(best, width);
      return;
    }
    used[at] = true;
    for (int nxt = 0; nxt < k; ++nxt) {
      if (used[nxt] || margin_of(m, at, nxt) <= 0) continue;
      dfs(nxt, std::min(width, margin_of(m, at, nxt)));
    }
    used[at] = false;
  };
  for (int nxt = 0; nxt < k; ++nxt)
    if (!used[nxt] && margin_of(m, x, nxt) > 0 && nxt != x)
      dfs(nxt, margin_of(m, x, nxt));
  return best;
}

inline std::vector<Candidate> minimax_brute(const MarginMatrix& m) {
  int k = (int)m.candidates.size();
  std::vector<long long> worst(k, 0);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      worst[x] = std::max(worst[x], margin_of(m, y, x));
  long long best = *std::min_element(worst.begin(), worst.end());
  std::vector<Candidate> out;
  for (int x = 0; x < k; ++x)
    if (worst[x] == best) out.push_back(m.candidates[x]);
  return out;
}

inline std::vector<Candidate> leximax_brute(const MarginMatrix& m) {
  int k = (int)m.candidates.size();
  std::vector<std::vector<long long>> keys(k);
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y)
      if (y != x) keys[x].push_back(margin_of(m, y, x));
    std::sort(keys[x].rbegin(), keys[x].rend());
  }
  auto best = *std::min_element(keys.begin(), keys.end());
  std::vector<Candidate> out;
  for (int x = 0; x < k; ++x)
    if (keys[x] == best) out.push_back(m.candidates[x]);
  return out;
}

inline std::vector<Candidate> split_cycle_brute(const MarginMatrix& m) {
  int k = (int)m.candidates.size();
  std::vector<Candidate> out;
  for (int x = 0; x < k; ++x) {
    bool defeated = false;
    for (int y = 0; y < k && !defeated; ++y) {
      if (margin_of(m, y, x) <= 0) continue;
      if (margin_of(m, y, x) > widest_path_brute(m, x, y)) defeated = true;
    }
    if (!defeated) out.push_back(m.candidates[x]);
  }
  return out;
}

// Ranked pairs by direct recursion: repeatedly pick any not-yet-placed edge
// of maximum weight, lock it unless it closes a cycle, and branch over every
// such pick. Winners are unioned across branches.
inline std::optional<std::vector<Candidate>> ranked_pairs_brute(
    const MarginMatrix& m, unsigned long long branch_cap = 2'000'000) {
  int k = (int)m.candidates.size();
  struct E {
    int from, to;
    long long w;
  };
  std::vector<E> edges;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (margin_of(m, i, j) > 0) edges.push_back({i, j, margin_of(m, i, j)});
  std::set<Candidate> winners;
  std::vector<std::vector<bool>> locked(k, std::vector<bool>(k, false));
  std::vector<bool> used(edges.size(), false);
  unsigned long long branches = 0;
  bool overflow = false;

  std::function<bool(int, int)> reaches = [&](int from, int to) {
    if (from == to) return true;
    std::vector<bool> seen(k, false);
    std::vector<int> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      int at = stack.back();
      stack.pop_back();
      for (int nxt = 0; nxt < k; ++nxt)
        if (locked[at][nxt] && !seen[nxt]) {
          if (nxt == to) return true;
          seen[nxt] = true;
          stack.push_back(nxt);
        }
    }
    return false;
  };

  std::function<void(size_t)> rec = [&](size_t placed) {
    if (overflow) return;
    if (placed == edges.size()) {
      if (++branches > branch_cap) {
        overflow = true;
        return;
      }
      for (int x = 0; x < k; ++x) {
        bool has_in = false;
        for (int y = 0; y < k; ++y) has_in = has_in || locked[y][x];
        if (!has_in) winners.insert(m.candidates[x]);
      }
      return;
    }
    long long top = -1;
    for (size_t e = 0; e < edges.size(); ++e)
      if (!used[e]) top = std::max(top, edges[e].w);
    for (size_t e = 0; e < edges.size(); ++e) {
      if (used[e] || edges[e].w != top) continue;
      used[e] = true;
      bool cycle = reaches(edges[e].to, edges[e].from);
      if (!cycle) locked[edges[e].from][edges[e].to] = true;
      rec(placed + 1);
      if (!cycle) locked[edges[e].from][edges[e].to] = false;
      used[e] = false;
    }
  };
  rec(0);
  if (overflow) return std::nullopt;
  return std::vector<Candidate>(winners.begin(), winners.end());
}

// Exhaustive minimum-voter synthesis over a ranking pool.
inline std::optional<long long> min_profile_brute(
    const MarginMatrix& target, const std::vector<Ranking>& pool,
    long long cap) {
  int k = (int)target.candidates.size();
  std::vector<std::vector<long long>> contrib;
  for (const auto& r : pool) {
    std::vector<long long> c(k * k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        int ti = r.tier_of(target.candidates[i]);
        int tj = r.tier_of(target.candidates[j]);
        if (ti < tj) c[i * k + j] = 1;
        else if (ti > tj) c[i * k + j] = -1;
      }
    contrib.push_back(c);
  }
  std::optional<long long> best;
  std::vector<long long> acc(k * k, 0);
  std::function<void(size_t, long long)> rec = [&](size_t at,
                                                   long long voters) {
    if (best && voters >= *best) return;
    if (at == pool.size()) {
      if (acc == target.m) best = voters;
      return;
    }
    for (long long c = 0; voters + c <= cap; ++c) {
      if (c > 0)
        for (int t = 0; t < k * k; ++t) acc[t] += contrib[at][t];
      rec(at + 1, voters + c);
    }
    long long taken = (cap - voters);
    for (long long c = 1; c <= taken; ++c)
      for (int t = 0; t < k * k; ++t) acc[t] -= contrib[at][t];
  };
  rec(0, 0);
  return best;
}

}  // namespace oracles
