#include "votelab/axioms.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace votelab {

std::string to_string(AxiomId id) {
  switch (id) {
    case AxiomId::condorcet_winner: return "condorcet-winner";
    case AxiomId::condorcet_loser: return "condorcet-loser";
    case AxiomId::positive_involvement: return "positive-involvement";
    case AxiomId::negative_involvement: return "negative-involvement";
    case AxiomId::resolvability: return "resolvability";
    case AxiomId::n_resolvability: return "n-resolvability";
    case AxiomId::quasi_resoluteness: return "quasi-resoluteness";
    case AxiomId::strict_positive_involvement:
      return "strict-positive-involvement";
    case AxiomId::independence_of_clones: return "independence-of-clones";
    case AxiomId::block_preservation: return "block-preservation";
    case AxiomId::positive_negative_involvement:
      return "positive-negative-involvement";
    case AxiomId::bullet_vote_positive_involvement:
      return "bullet-vote-positive-involvement";
  }
  throw DomainError("bad axiom id");
}

std::optional<AxiomId> parse_axiom(const std::string& name) {
  for (auto id : all_axioms)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

std::string to_string(BallotDomain d) {
  return d == BallotDomain::linear ? "linear" : "weak";
}

std::optional<BallotDomain> parse_domain(const std::string& name) {
  if (name == "linear") return BallotDomain::linear;
  if (name == "weak") return BallotDomain::weak;
  return std::nullopt;
}

std::string to_string(HuntStrategy s) {
  return s == HuntStrategy::profiles ? "profiles" : "graphs";
}

std::optional<HuntStrategy> parse_strategy(const std::string& name) {
  if (name == "profiles") return HuntStrategy::profiles;
  if (name == "graphs") return HuntStrategy::graphs;
  return std::nullopt;
}

static std::string set_to_string(const std::vector<Candidate>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "}";
}

static bool in_winners(const WinnerSet& w, const Candidate& c) {
  return std::binary_search(w.winners.begin(), w.winners.end(), c);
}

static std::vector<Ranking> domain_ballots(const std::vector<Candidate>& cands,
                                           BallotDomain domain) {
  return domain == BallotDomain::linear ? enumerate_linear_orders(cands)
                                        : enumerate_weak_orders(cands);
}

// Pairwise contribution of one ballot: +1 above, -1 below, 0 tied.
static std::vector<long long> contribution(const Ranking& r,
                                           const MarginMatrix& base) {
  int n = base.size();
  std::vector<long long> c((size_t)n * n, 0);
  std::vector<int> tier(n);
  for (int t = 0; t < (int)r.tiers.size(); ++t)
    for (const auto& cand : r.tiers[t]) tier[base.index_of(cand)] = t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (tier[i] < tier[j]) c[(size_t)i * n + j] = 1;
      else if (tier[i] > tier[j]) c[(size_t)i * n + j] = -1;
    }
  return c;
}

CheckResult check_condorcet_winner(MethodId f, const Profile& p) {
  auto cw = condorcet_winner(p);
  if (!cw) return {true, true, "no Condorcet winner"};
  auto w = evaluate_method(f, p);
  if (w.winners == std::vector<Candidate>{*cw})
    return {true, false, "Condorcet winner " + *cw + " is the unique winner"};
  return {false, false, "Condorcet winner " + *cw + " but winner set " +
                            set_to_string(w.winners)};
}

CheckResult check_condorcet_loser(MethodId f, const Profile& p) {
  auto cl = condorcet_loser(p);
  if (!cl) return {true, true, "no Condorcet loser"};
  auto w = evaluate_method(f, p);
  if (!in_winners(w, *cl))
    return {true, false, "Condorcet loser " + *cl + " is not a winner"};
  return {false, false, "Condorcet loser " + *cl + " is in winner set " +
                            set_to_string(w.winners)};
}

CheckResult check_positive_involvement(MethodId f, const Profile& p,
                                       const Ranking& added) {
  auto x = added.top();
  if (!x)
    throw DomainError("added ballot must rank one candidate uniquely first");
  if (added.candidates() != p.candidates)
    throw DomainError("added ballot does not cover the candidate set");
  auto before = evaluate_method(f, p);
  if (!in_winners(before, *x))
    return {true, true, *x + " does not win before the ballot is added"};
  auto after = evaluate_method(f, add_ballot(p, added, 1));
  if (in_winners(after, *x))
    return {true, false, *x + " still wins after a supporting ballot"};
  return {false, false,
          *x + " wins before but loses after adding " + added.compact() +
              "; winners now " + set_to_string(after.winners)};
}

CheckResult check_negative_involvement(MethodId f, const Profile& p,
                                       const Ranking& added) {
  auto x = added.bottom();
  if (!x)
    throw DomainError("added ballot must rank one candidate uniquely last");
  if (added.candidates() != p.candidates)
    throw DomainError("added ballot does not cover the candidate set");
  auto before = evaluate_method(f, p);
  if (in_winners(before, *x))
    return {true, true, *x + " wins before the ballot is added"};
  auto after = evaluate_method(f, add_ballot(p, added, 1));
  if (!in_winners(after, *x))
    return {true, false, *x + " still loses after an opposing ballot"};
  return {false, false,
          *x + " loses before but wins after adding " + added.compact()};
}

// Shared scan: can each tied winner be made the unique winner by adding at
// most n ballots from the domain?
static CheckResult resolvability_scan(MethodId f, const Profile& p, int n,
                                      BallotDomain domain) {
  auto before = evaluate_method(f, p);
  if (before.winners.size() == 1)
    return {true, true, "winner already unique"};
  auto base = margin_matrix(p);
  int k = base.size();
  auto ballots = domain_ballots(p.candidates, domain);
  std::vector<std::vector<long long>> contribs;
  contribs.reserve(ballots.size());
  for (const auto& b : ballots) contribs.push_back(contribution(b, base));

  std::vector<long long> work((size_t)k * k);
  for (const auto& x : before.winners) {
    int xi = base.index_of(x);
    bool found = false;
    // Multisets of ballots of each size 1..n, indices nondecreasing.
    std::vector<int> pick;
    auto rec = [&](auto&& self, int lo, int remaining) -> void {
      if (found) return;
      if (!pick.empty()) {
        auto mask = kernel::method_mask(f, work.data(), k);
        if (mask == (1u << xi)) {
          found = true;
          return;
        }
      }
      if (remaining == 0) return;
      for (int i = lo; i < (int)ballots.size() && !found; ++i) {
        for (size_t t = 0; t < work.size(); ++t) work[t] += contribs[i][t];
        pick.push_back(i);
        self(self, i, remaining - 1);
        pick.pop_back();
        for (size_t t = 0; t < work.size(); ++t) work[t] -= contribs[i][t];
      }
    };
    work = base.m;
    rec(rec, 0, n);
    if (!found)
      return {false, false,
              "winner " + x + " cannot be made unique by adding " +
                  (n == 1 ? std::string("one ballot")
                          : "up to " + std::to_string(n) + " ballots") +
                  " (" + to_string(domain) + " domain); tied winners " +
                  set_to_string(before.winners)};
  }
  return {true, false,
          "each of " + set_to_string(before.winners) +
              " can be made the unique winner"};
}

CheckResult check_resolvability(MethodId f, const Profile& p,
                                BallotDomain domain) {
  return resolvability_scan(f, p, 1, domain);
}

CheckResult check_n_resolvability(MethodId f, const Profile& p, int n,
                                  BallotDomain domain, int bound) {
  if (n < 1) throw DomainError("n must be positive");
  if (n > bound)
    throw DomainError("n-resolvability bound exceeded: n = " +
                      std::to_string(n) + ", bound = " + std::to_string(bound));
  return resolvability_scan(f, p, n, domain);
}

CheckResult check_quasi_resoluteness(MethodId f, const Profile& p) {
  if (!uniquely_weighted(p))
    return {true, true, "profile is not uniquely weighted"};
  auto w = evaluate_method(f, p);
  if (w.winners.size() == 1)
    return {true, false, "unique winner " + w.winners[0]};
  return {false, false, "uniquely weighted profile with winner set " +
                            set_to_string(w.winners)};
}

CheckResult check_strict_positive_involvement(MethodId f, const Profile& p,
                                              const Ranking& added) {
  auto x = added.top();
  if (!x)
    throw DomainError("added ballot must rank one candidate uniquely first");
  if (added.candidates() != p.candidates)
    throw DomainError("added ballot does not cover the candidate set");
  auto before = evaluate_method(f, p);
  if (!in_winners(before, *x))
    return {true, true, *x + " does not win before the ballot is added"};
  auto after = evaluate_method(f, add_ballot(p, added, 1));
  if (after.winners == std::vector<Candidate>{*x})
    return {true, false, *x + " becomes the unique winner"};
  return {false, false, *x + " wins before, but after adding " +
                            added.compact() + " the winner set is " +
                            set_to_string(after.winners)};
}

bool is_clone_set(const Profile& p, const std::vector<Candidate>& clones) {
  if (clones.size() < 2 || clones.size() >= p.candidates.size()) return false;
  for (const auto& c : clones)
    if (std::find(p.candidates.begin(), p.candidates.end(), c) ==
        p.candidates.end())
      return false;
  auto sorted = clones;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return false;
  for (const auto& b : p.ballots) {
    int lo = (int)b.ranking.tiers.size(), hi = -1;
    for (const auto& c : sorted) {
      int t = b.ranking.tier_of(c);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    for (const auto& z : p.candidates) {
      if (std::binary_search(sorted.begin(), sorted.end(), z)) continue;
      int t = b.ranking.tier_of(z);
      if (t >= lo && t <= hi) return false;
    }
  }
  return true;
}

std::vector<std::vector<Candidate>> detect_clone_sets(const Profile& p) {
  int n = p.num_candidates();
  if (n > 16) throw DomainError("too many candidates for clone detection");
  std::vector<std::vector<Candidate>> found;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int bits = std::popcount(mask);
    if (bits < 2 || bits >= n) continue;
    std::vector<Candidate> set;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) set.push_back(p.candidates[i]);
    if (is_clone_set(p, set)) found.push_back(std::move(set));
  }
  // Keep maximal sets only.
  std::vector<std::vector<Candidate>> maximal;
  for (const auto& s : found) {
    bool dominated = false;
    for (const auto& t : found) {
      if (t.size() <= s.size()) continue;
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(s);
  }
  return maximal;
}

CheckResult check_independence_of_clones(MethodId f, const Profile& p,
                                         const Candidate& removed_clone,
                                         const std::vector<Candidate>& clones) {
  auto sorted = clones;
  std::sort(sorted.begin(), sorted.end());
  if (!is_clone_set(p, sorted))
    throw DomainError("given candidates do not form a clone set");
  if (!std::binary_search(sorted.begin(), sorted.end(), removed_clone))
    throw DomainError("removed candidate is not in the clone set");
  auto before = evaluate_method(f, p);
  auto reduced = remove_candidate(p, removed_clone);
  auto after = evaluate_method(f, reduced);
  std::string fail;
  for (const auto& z : p.candidates) {
    if (std::binary_search(sorted.begin(), sorted.end(), z)) continue;
    if (in_winners(before, z) != in_winners(after, z)) {
      fail = "non-clone " + z + " " +
             (in_winners(before, z) ? "wins only with" : "wins only without") +
             " " + removed_clone + " present";
      break;
    }
  }
  if (fail.empty()) {
    bool clone_before = false, clone_after = false;
    for (const auto& c : sorted) {
      if (in_winners(before, c)) clone_before = true;
      if (c != removed_clone && in_winners(after, c)) clone_after = true;
    }
    if (clone_before != clone_after)
      fail = "clone set " + set_to_string(sorted) + " holds a winner " +
             (clone_before ? "only with" : "only without") + " " +
             removed_clone + " present";
  }
  if (fail.empty())
    return {true, false, "winners before " + set_to_string(before.winners) +
                             ", after " + set_to_string(after.winners)};
  return {false, false, fail};
}

CheckResult check_block_preservation(MethodId f, const Profile& p) {
  auto before = evaluate_method(f, p);
  auto padded = add_profiles(p, block_of_all_linear_orders(p.candidates, 1));
  auto after = evaluate_method(f, padded);
  for (const auto& x : before.winners)
    if (!in_winners(after, x))
      return {false, false,
              "winner " + x + " is lost after adding one ballot of every "
                              "linear order"};
  return {true, false, "winner set preserved under an all-orders block"};
}

CheckResult check_positive_negative_involvement(MethodId f, const Profile& p,
                                                const Ranking& added) {
  auto x = added.top();
  auto y = added.bottom();
  if (!x || !y || *x == *y)
    throw DomainError(
        "added ballot must rank one candidate uniquely first and another "
        "uniquely last");
  if (added.candidates() != p.candidates)
    throw DomainError("added ballot does not cover the candidate set");
  auto before = evaluate_method(f, p);
  if (!in_winners(before, *x) || in_winners(before, *y))
    return {true, true,
            "precondition fails: need " + *x + " winning and " + *y +
                " losing beforehand"};
  auto after = evaluate_method(f, add_ballot(p, added, 1));
  if (!in_winners(after, *x) && in_winners(after, *y))
    return {false, false, "adding " + added.compact() + " dethrones " + *x +
                              " in favor of " + *y};
  return {true, false, "no simultaneous reversal for " + *x + " and " + *y};
}

CheckResult check_bullet_vote_positive_involvement(MethodId f,
                                                   const Profile& p,
                                                   const Candidate& x) {
  if (std::find(p.candidates.begin(), p.candidates.end(), x) ==
      p.candidates.end())
    throw DomainError("no such candidate: " + x);
  auto before = evaluate_method(f, p);
  if (!in_winners(before, x))
    return {true, true, x + " does not win before the bullet vote"};
  auto bullet = complete_ranking(Ranking({{x}}), p.candidates);
  auto after = evaluate_method(f, add_ballot(p, bullet, 1));
  if (in_winners(after, x))
    return {true, false, x + " still wins after a bullet vote for " + x};
  return {false, false, x + " wins before but loses after a bullet vote " +
                            bullet.compact()};
}

}  // namespace votelab
