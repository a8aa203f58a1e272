#include "votelab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace votelab {

void validate_target(const TargetMargins& t) {
  int n = t.size();
  if (n < 1) throw DomainError("target has no candidates");
  if ((int)t.m.size() != n * n) throw DomainError("target matrix is not square");
  auto sorted = t.candidates;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != t.candidates || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("target candidates must be sorted and unique");
  for (int i = 0; i < n; ++i)
    if (t.at(i, i) != 0) throw DomainError("target diagonal must be zero");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (t.at(i, j) != -t.at(j, i))
        throw DomainError("target must be antisymmetric");
  int parity = -1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int p = (int)(((t.at(i, j) % 2) + 2) % 2);
      if (parity < 0) parity = p;
      else if (parity != p)
        throw DomainError(
            "target margins must all be even or all be odd (every ballot "
            "shifts every pairwise margin by 1 modulo 2)");
    }
}

namespace {

Ranking linear_of(const std::vector<Candidate>& order) {
  std::vector<std::vector<Candidate>> tiers;
  tiers.reserve(order.size());
  for (const auto& c : order) tiers.push_back({c});
  return Ranking(std::move(tiers));
}

// Matched pair with net contribution +2 on (x, y) and 0 elsewhere:
//   x > y > rest ascending
//   rest descending > x > y
std::pair<Ranking, Ranking> margin_pair(const std::vector<Candidate>& cands,
                                        int xi, int yi) {
  std::vector<Candidate> rest;
  for (int i = 0; i < (int)cands.size(); ++i)
    if (i != xi && i != yi) rest.push_back(cands[i]);
  std::vector<Candidate> first{cands[xi], cands[yi]};
  first.insert(first.end(), rest.begin(), rest.end());
  std::vector<Candidate> second(rest.rbegin(), rest.rend());
  second.push_back(cands[xi]);
  second.push_back(cands[yi]);
  return {linear_of(first), linear_of(second)};
}

std::vector<long long> ranking_contribution(const Ranking& r,
                                            const std::vector<Candidate>& cands) {
  int n = (int)cands.size();
  std::vector<long long> c((size_t)n * n, 0);
  std::vector<int> tier(n);
  for (int t = 0; t < (int)r.tiers.size(); ++t)
    for (const auto& cand : r.tiers[t]) {
      int i = (int)(std::lower_bound(cands.begin(), cands.end(), cand) -
                    cands.begin());
      tier[i] = t;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (tier[i] < tier[j]) c[(size_t)i * n + j] = 1;
      else if (tier[i] > tier[j]) c[(size_t)i * n + j] = -1;
    }
  return c;
}

// When the pool's contribution vectors are linearly independent, the margin
// equations have at most one real solution; an exactly verified integral
// one settles the instance without search. Returns nullopt whenever the
// system is rank-deficient or the rounded solution fails exact recheck.
std::optional<std::vector<long long>> solve_if_unique(
    const TargetMargins& t, const std::vector<std::vector<long long>>& contribs) {
  int n = t.size();
  int rows = n * (n - 1) / 2, cols = (int)contribs.size();
  if (rows < cols) return std::nullopt;
  std::vector<std::vector<long double>> a(rows,
                                          std::vector<long double>(cols + 1));
  {
    int r = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++r) {
        for (int c = 0; c < cols; ++c)
          a[r][c] = (long double)contribs[c][(size_t)i * n + j];
        a[r][cols] = (long double)t.at(i, j);
      }
  }
  for (int col = 0; col < cols; ++col) {
    int piv = -1;
    long double best = 1e-7L;
    for (int r = col; r < rows; ++r)
      if (std::fabs(a[r][col]) > best) {
        best = std::fabs(a[r][col]);
        piv = r;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[col], a[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == col || a[r][col] == 0) continue;
      long double f = a[r][col] / a[col][col];
      for (int c = col; c <= cols; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<long long> x(cols);
  for (int c = 0; c < cols; ++c) {
    long double v = a[c][cols] / a[c][c];
    if (std::fabs(v) > 1e12L) return std::nullopt;
    x[c] = std::llround(v);
    if (x[c] < 0) return std::nullopt;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long long got = 0;
      for (int c = 0; c < cols; ++c) got += x[c] * contribs[c][(size_t)i * n + j];
      if (got != t.at(i, j)) return std::nullopt;
    }
  return x;
}

}  // namespace

Profile mcgarvey_debord_realize(const TargetMargins& t) {
  validate_target(t);
  int n = t.size();
  if (n == 1)
    return Profile::make(t.candidates, {{Ranking({{t.candidates[0]}}), 1}});

  std::vector<long long> residual = t.m;
  std::vector<Ballot> ballots;
  bool odd = ((t.at(0, 1) % 2) + 2) % 2 == 1;
  if (odd) {
    auto seed = linear_of(t.candidates);
    auto c = ranking_contribution(seed, t.candidates);
    for (size_t i = 0; i < residual.size(); ++i) residual[i] -= c[i];
    ballots.push_back({seed, 1});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long long r = residual[(size_t)i * n + j];
      if (r == 0) continue;
      int xi = r > 0 ? i : j, yi = r > 0 ? j : i;
      long long pairs = (r > 0 ? r : -r) / 2;
      auto [b1, b2] = margin_pair(t.candidates, xi, yi);
      ballots.push_back({b1, pairs});
      ballots.push_back({b2, pairs});
    }
  if (ballots.empty()) {
    // All-zero even target: one canceling pair keeps every margin at 0.
    auto r = linear_of(t.candidates);
    ballots.push_back({r, 1});
    ballots.push_back({r.reversed(), 1});
  }
  return Profile::make(t.candidates, std::move(ballots));
}

SynthesisResult minimize_profile(const TargetMargins& t,
                                 const std::vector<Ranking>& pool,
                                 const MinimizeOptions& opt) {
  validate_target(t);
  if (pool.empty()) throw DomainError("empty ranking pool");
  int n = t.size();
  std::vector<Ranking> rankings = pool;
  for (const auto& r : rankings)
    if (r.candidates() != t.candidates)
      throw DomainError("pool ranking does not cover the candidate set: " +
                        r.compact());
  std::sort(rankings.begin(), rankings.end());
  rankings.erase(std::unique(rankings.begin(), rankings.end()),
                 rankings.end());

  std::vector<std::vector<long long>> contribs;
  for (const auto& r : rankings)
    contribs.push_back(ranking_contribution(r, t.candidates));

  auto is_flat = [&](size_t ri) {
    return std::all_of(contribs[ri].begin(), contribs[ri].end(),
                       [](long long v) { return v == 0; });
  };
  bool zero_target = std::all_of(t.m.begin(), t.m.end(),
                                 [](long long v) { return v == 0; });
  if (zero_target) {
    // One voter with every candidate tied realizes the zero target.
    for (size_t i = 0; i < rankings.size(); ++i)
      if (is_flat(i)) {
        SynthesisResult out;
        out.profile = Profile::make(t.candidates, {{rankings[i], 1}});
        out.total_voters = 1;
        out.optimal = true;
        return out;
      }
  }

  if (auto x = solve_if_unique(t, contribs)) {
    long long total = 0;
    for (long long v : *x) total += v;
    if (total >= 1 && total <= opt.voter_cap) {
      std::vector<Ballot> ballots;
      for (size_t i = 0; i < rankings.size(); ++i)
        if ((*x)[i] > 0) ballots.push_back({rankings[i], (*x)[i]});
      SynthesisResult out;
      out.profile = Profile::make(t.candidates, std::move(ballots));
      out.total_voters = total;
      out.optimal = true;
      return out;
    }
  }

  // Branch on rankings covering many unmet target entries first; rankings
  // that move no margin at all can never help a nonzero residual.
  std::vector<int> order;
  for (size_t i = 0; i < rankings.size(); ++i)
    if (!is_flat(i)) order.push_back((int)i);
  auto coverage = [&](int ri) {
    int cov = 0;
    for (size_t e = 0; e < t.m.size(); ++e)
      if (t.m[e] != 0 && contribs[ri][e] != 0 &&
          (t.m[e] > 0) == (contribs[ri][e] > 0))
        ++cov;
    return cov;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    int ca = coverage(a), cb = coverage(b);
    if (ca != cb) return ca > cb;
    return rankings[a] < rankings[b];
  });

  std::vector<long long> residual = t.m;
  std::vector<long long> counts(rankings.size(), 0);
  long long best = -1;
  unsigned long long nodes = 0;
  bool aborted = false;

  // When every branch ranking moves every pairwise margin by exactly one,
  // the voter total is congruent to any target entry mod 2.
  bool unit_steps = !order.empty();
  for (int ri : order)
    for (int i = 0; i < n && unit_steps; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        long long c = contribs[ri][(size_t)i * n + j];
        if (c != 1 && c != -1) {
          unit_steps = false;
          break;
        }
      }
  long long step = unit_steps ? 2 : 1;
  long long start = 1;
  if (unit_steps && ((t.at(0, 1) % 2) + 2) % 2 == 0) start = 2;

  // Exact remaining budget per call; totals are tried in increasing order,
  // so the first full assignment found is minimal.
  std::function<bool(int, long long)> rec = [&](int pos,
                                                long long left) -> bool {
    if (++nodes > opt.node_budget) {
      aborted = true;
      return false;
    }
    long long worst = 0;
    for (long long v : residual) worst = std::max(worst, v > 0 ? v : -v);
    if (worst > left) return false;
    if (pos == (int)order.size()) return left == 0 && worst == 0;
    // Entries no remaining ranking can push toward the target are dead.
    for (size_t e = 0; e < residual.size(); ++e) {
      if (residual[e] == 0) continue;
      bool reachable = false;
      for (int q = pos; q < (int)order.size() && !reachable; ++q)
        if (contribs[order[q]][e] != 0 &&
            (residual[e] > 0) == (contribs[order[q]][e] > 0))
          reachable = true;
      if (!reachable) return false;
    }

    int ri = order[pos];
    const auto& c = contribs[ri];
    if (pos == (int)order.size() - 1) {
      // The final ranking must absorb the whole remaining budget.
      for (size_t e = 0; e < residual.size(); ++e)
        if (residual[e] != left * c[e]) return false;
      counts[ri] = left;
      return true;
    }
    for (long long v = left; v >= 0 && !aborted; --v) {
      counts[ri] = v;
      for (size_t e = 0; e < residual.size(); ++e) residual[e] -= v * c[e];
      if (rec(pos + 1, left - v)) return true;
      for (size_t e = 0; e < residual.size(); ++e) residual[e] += v * c[e];
      counts[ri] = 0;
    }
    return false;
  };

  for (long long total = start; total <= opt.voter_cap && !aborted; total += step)
    if (rec(0, total)) {
      best = total;
      break;
    }

  if (best < 0) {
    if (aborted)
      throw InfeasibleError(
          "no profile found within the node budget (search incomplete)");
    throw InfeasibleError("no profile with at most " +
                          std::to_string(opt.voter_cap) +
                          " voters matches the target over this pool");
  }
  std::vector<Ballot> ballots;
  for (size_t i = 0; i < rankings.size(); ++i)
    if (counts[i] > 0) ballots.push_back({rankings[i], counts[i]});
  SynthesisResult out;
  out.profile = Profile::make(t.candidates, std::move(ballots));
  out.total_voters = best;
  out.optimal = true;
  out.nodes = nodes;
  return out;
}

Profile pad_with_blocks(const Profile& p, long long copies) {
  if (copies < 0) throw DomainError("negative block count");
  if (copies == 0) return p;
  return add_profiles(p, block_of_all_linear_orders(p.candidates, copies));
}

}  // namespace votelab
