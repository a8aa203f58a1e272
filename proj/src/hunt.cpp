#include "votelab/axioms.hpp"
#include "votelab/synth.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

// Violation hunting, random sweeps, and witness (de)serialization.

namespace votelab {

namespace {

std::vector<Candidate> letter_candidates(int k) {
  std::vector<Candidate> out;
  for (int i = 0; i < k; ++i) out.push_back(std::string(1, (char)('a' + i)));
  return out;
}

bool in_winners(const WinnerSet& w, const Candidate& c) {
  return std::binary_search(w.winners.begin(), w.winners.end(), c);
}

std::vector<Ranking> domain_ballots(const std::vector<Candidate>& cands,
                                    BallotDomain domain) {
  return domain == BallotDomain::linear ? enumerate_linear_orders(cands)
                                        : enumerate_weak_orders(cands);
}

std::vector<long long> contribution(const Ranking& r,
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

Profile single_ballot_profile(const std::vector<Candidate>& cands,
                              const Ranking& r) {
  return Profile::make(cands, {{r, 1}});
}

bool can_make_unique(MethodId f, const Profile& p, const Candidate& x, int n,
                     BallotDomain domain) {
  auto base = margin_matrix(p);
  int k = base.size();
  int xi = base.index_of(x);
  auto ballots = domain_ballots(p.candidates, domain);
  std::vector<std::vector<long long>> contribs;
  for (const auto& b : ballots) contribs.push_back(contribution(b, p.candidates));
  std::vector<long long> work = base.m;
  bool found = false;
  std::function<void(int, int)> rec = [&](int lo, int remaining) {
    if (found) return;
    if (kernel::method_mask(f, work.data(), k) == (1u << xi) &&
        work != base.m) {
      found = true;
      return;
    }
    if (remaining == 0) return;
    for (int i = lo; i < (int)ballots.size() && !found; ++i) {
      for (size_t t = 0; t < work.size(); ++t) work[t] += contribs[i][t];
      rec(i, remaining - 1);
      for (size_t t = 0; t < work.size(); ++t) work[t] -= contribs[i][t];
    }
  };
  rec(0, n);
  return found;
}

// Runs one concrete axiom instance; on violation builds the full witness.
struct InstanceRunner {
  MethodId f;
  AxiomId a;
  BallotDomain domain;
  int n;

  std::optional<ViolationWitness> run(
      const Profile& p, const Ranking* added = nullptr,
      const Candidate* bullet_focus = nullptr,
      const std::vector<Candidate>* clones = nullptr,
      const Candidate* removed = nullptr) const {
    CheckResult r;
    switch (a) {
      case AxiomId::condorcet_winner: r = check_condorcet_winner(f, p); break;
      case AxiomId::condorcet_loser: r = check_condorcet_loser(f, p); break;
      case AxiomId::positive_involvement:
        r = check_positive_involvement(f, p, *added);
        break;
      case AxiomId::negative_involvement:
        r = check_negative_involvement(f, p, *added);
        break;
      case AxiomId::resolvability:
        r = check_resolvability(f, p, domain);
        break;
      case AxiomId::n_resolvability:
        r = check_n_resolvability(f, p, n, domain, std::max(n, 3));
        break;
      case AxiomId::quasi_resoluteness:
        r = check_quasi_resoluteness(f, p);
        break;
      case AxiomId::strict_positive_involvement:
        r = check_strict_positive_involvement(f, p, *added);
        break;
      case AxiomId::independence_of_clones:
        r = check_independence_of_clones(f, p, *removed, *clones);
        break;
      case AxiomId::block_preservation:
        r = check_block_preservation(f, p);
        break;
      case AxiomId::positive_negative_involvement:
        r = check_positive_negative_involvement(f, p, *added);
        break;
      case AxiomId::bullet_vote_positive_involvement:
        r = check_bullet_vote_positive_involvement(f, p, *bullet_focus);
        break;
    }
    if (r.passed) return std::nullopt;

    ViolationWitness w;
    w.method = f;
    w.axiom = a;
    w.domain = domain;
    w.n = n;
    w.base = p;
    w.before = evaluate_method(f, p);
    switch (a) {
      case AxiomId::condorcet_winner:
        w.focus = *condorcet_winner(p);
        w.after = w.before;
        break;
      case AxiomId::condorcet_loser:
        w.focus = *condorcet_loser(p);
        w.after = w.before;
        break;
      case AxiomId::positive_involvement:
      case AxiomId::strict_positive_involvement:
      case AxiomId::positive_negative_involvement:
        w.focus = *added->top();
        w.delta = single_ballot_profile(p.candidates, *added);
        w.after = evaluate_method(f, add_ballot(p, *added, 1));
        break;
      case AxiomId::negative_involvement:
        w.focus = *added->bottom();
        w.delta = single_ballot_profile(p.candidates, *added);
        w.after = evaluate_method(f, add_ballot(p, *added, 1));
        break;
      case AxiomId::resolvability:
      case AxiomId::n_resolvability:
        w.after = w.before;
        for (const auto& x : w.before.winners)
          if (!can_make_unique(f, p, x, n, domain)) {
            w.focus = x;
            break;
          }
        break;
      case AxiomId::quasi_resoluteness:
        w.after = w.before;
        break;
      case AxiomId::independence_of_clones:
        w.removed_candidate = *removed;
        w.clones = *clones;
        w.focus = *removed;
        w.after = evaluate_method(f, remove_candidate(p, *removed));
        break;
      case AxiomId::block_preservation: {
        auto block = block_of_all_linear_orders(p.candidates, 1);
        w.delta = block;
        w.after = evaluate_method(f, add_profiles(p, block));
        for (const auto& x : w.before.winners)
          if (!in_winners(w.after, x)) {
            w.focus = x;
            break;
          }
        break;
      }
      case AxiomId::bullet_vote_positive_involvement: {
        w.focus = *bullet_focus;
        auto b = complete_ranking(Ranking({{*bullet_focus}}), p.candidates);
        w.delta = single_ballot_profile(p.candidates, b);
        w.after = evaluate_method(f, add_ballot(p, b, 1));
        break;
      }
    }
    return w;
  }
};

bool axiom_wants_added_ballot(AxiomId a) {
  switch (a) {
    case AxiomId::positive_involvement:
    case AxiomId::negative_involvement:
    case AxiomId::strict_positive_involvement:
    case AxiomId::positive_negative_involvement:
      return true;
    default:
      return false;
  }
}

bool added_ballot_qualifies(AxiomId a, const Ranking& r) {
  switch (a) {
    case AxiomId::positive_involvement:
    case AxiomId::strict_positive_involvement:
      return r.top().has_value();
    case AxiomId::negative_involvement:
      return r.bottom().has_value();
    case AxiomId::positive_negative_involvement:
      return r.top().has_value() && r.bottom().has_value() &&
             *r.top() != *r.bottom();
    default:
      return false;
  }
}

struct HuntAbort {};  // instance cap reached

// Examines one profile under every instance shape the axiom admits.
// Returns a witness on the first violation.
std::optional<ViolationWitness> examine_profile(
    const InstanceRunner& runner, const Profile& p,
    const std::vector<Ranking>& ballots, const HuntOptions& opt,
    HuntResult& res) {
  auto guarded = [&](auto&& fn) -> std::optional<ViolationWitness> {
    if (opt.instance_cap && res.instances >= opt.instance_cap)
      throw HuntAbort{};
    ++res.instances;
    try {
      return fn();
    } catch (const TieExplosionError&) {
      ++res.skipped;
      return std::nullopt;
    }
  };
  if (axiom_wants_added_ballot(runner.a)) {
    for (const auto& b : ballots) {
      if (!added_ballot_qualifies(runner.a, b)) continue;
      if (auto w = guarded([&] { return runner.run(p, &b); })) return w;
    }
    return std::nullopt;
  }
  if (runner.a == AxiomId::bullet_vote_positive_involvement) {
    for (const auto& x : p.candidates)
      if (auto w = guarded([&] { return runner.run(p, nullptr, &x); }))
        return w;
    return std::nullopt;
  }
  if (runner.a == AxiomId::independence_of_clones) {
    int k = p.num_candidates();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      int bits = std::popcount(mask);
      if (bits < 2 || bits >= k) continue;
      std::vector<Candidate> set;
      for (int i = 0; i < k; ++i)
        if ((mask >> i) & 1) set.push_back(p.candidates[i]);
      if (!is_clone_set(p, set)) continue;
      for (const auto& rem : set)
        if (auto w = guarded(
                [&] { return runner.run(p, nullptr, nullptr, &set, &rem); }))
          return w;
    }
    return std::nullopt;
  }
  return guarded([&] { return runner.run(p); });
}

HuntResult hunt_profiles(MethodId f, AxiomId a, const HuntOptions& opt) {
  HuntResult res;
  InstanceRunner runner{f, a, opt.domain, opt.n};
  try {
    for (int k = 2; k <= opt.max_candidates; ++k) {
      auto cands = letter_candidates(k);
      auto ballots = domain_ballots(cands, opt.domain);
      int nr = (int)ballots.size();
      std::vector<long long> counts(nr, 0);
      for (long long v = 1; v <= opt.max_voters; ++v) {
        std::optional<ViolationWitness> hit;
        // Count vectors summing to v, lexicographic.
        std::function<void(int, long long)> rec = [&](int pos,
                                                      long long remaining) {
          if (hit) return;
          if (pos == nr - 1) {
            counts[pos] = remaining;
            std::vector<Ballot> bs;
            for (int i = 0; i < nr; ++i)
              if (counts[i] > 0) bs.push_back({ballots[i], counts[i]});
            auto p = Profile::make(cands, std::move(bs));
            hit = examine_profile(runner, p, ballots, opt, res);
            counts[pos] = 0;
            return;
          }
          for (long long c = 0; c <= remaining && !hit; ++c) {
            counts[pos] = c;
            rec(pos + 1, remaining - c);
          }
          counts[pos] = 0;
        };
        rec(0, v);
        if (hit) {
          res.witness = std::move(hit);
          return res;
        }
      }
    }
    res.space_exhausted = true;
  } catch (const HuntAbort&) {
    res.space_exhausted = false;
  }
  return res;
}

// Margin-level predicates for the graphs strategy. Returns true when the
// matrix (plus ballot deltas where relevant) shows a violation.
struct GraphProbe {
  MethodId f;
  AxiomId a;
  BallotDomain domain;
  int n;
  const std::vector<Candidate>& cands;
  const std::vector<Ranking>& ballots;
  const std::vector<std::vector<long long>>& contribs;

  // The qualifying ballot index found for delta axioms, for witness reuse.
  mutable int hit_ballot = -1;
  mutable int hit_candidate = -1;

  bool violated(const std::vector<long long>& m) const {
    int k = (int)cands.size();
    auto mask_of = [&](const std::vector<long long>& mm) {
      return kernel::method_mask(f, mm.data(), k);
    };
    switch (a) {
      case AxiomId::condorcet_winner: {
        int i = kernel::condorcet_winner_index(m.data(), k);
        if (i < 0) return false;
        return mask_of(m) != (1u << i);
      }
      case AxiomId::condorcet_loser: {
        int i = kernel::condorcet_loser_index(m.data(), k);
        if (i < 0) return false;
        return (mask_of(m) >> i) & 1;
      }
      case AxiomId::quasi_resoluteness:
        return kernel::uniquely_weighted(m.data(), k) &&
               std::popcount(mask_of(m)) != 1;
      case AxiomId::positive_involvement:
      case AxiomId::strict_positive_involvement:
      case AxiomId::negative_involvement:
      case AxiomId::positive_negative_involvement: {
        auto before = mask_of(m);
        std::vector<long long> work(m.size());
        for (int bi = 0; bi < (int)ballots.size(); ++bi) {
          const auto& b = ballots[bi];
          if (!added_ballot_qualifies(a, b)) continue;
          int top = -1, bot = -1;
          if (auto t = b.top())
            top = (int)(std::lower_bound(cands.begin(), cands.end(), *t) -
                        cands.begin());
          if (auto t = b.bottom())
            bot = (int)(std::lower_bound(cands.begin(), cands.end(), *t) -
                        cands.begin());
          bool applicable = false;
          if (a == AxiomId::positive_involvement ||
              a == AxiomId::strict_positive_involvement)
            applicable = (before >> top) & 1;
          else if (a == AxiomId::negative_involvement)
            applicable = !((before >> bot) & 1);
          else
            applicable = ((before >> top) & 1) && !((before >> bot) & 1);
          if (!applicable) continue;
          for (size_t t = 0; t < m.size(); ++t)
            work[t] = m[t] + contribs[bi][t];
          auto after = mask_of(work);
          bool bad = false;
          if (a == AxiomId::positive_involvement)
            bad = !((after >> top) & 1);
          else if (a == AxiomId::strict_positive_involvement)
            bad = after != (1u << top);
          else if (a == AxiomId::negative_involvement)
            bad = (after >> bot) & 1;
          else
            bad = !((after >> top) & 1) && ((after >> bot) & 1);
          if (bad) {
            hit_ballot = bi;
            return true;
          }
        }
        return false;
      }
      case AxiomId::bullet_vote_positive_involvement: {
        auto before = mask_of(m);
        std::vector<long long> work(m.size());
        for (int xi = 0; xi < k; ++xi) {
          if (!((before >> xi) & 1)) continue;
          auto bullet = complete_ranking(Ranking({{cands[xi]}}), cands);
          auto c = contribution(bullet, cands);
          for (size_t t = 0; t < m.size(); ++t) work[t] = m[t] + c[t];
          if (!((mask_of(work) >> xi) & 1)) {
            hit_candidate = xi;
            return true;
          }
        }
        return false;
      }
      case AxiomId::resolvability:
      case AxiomId::n_resolvability: {
        auto before = mask_of(m);
        if (std::popcount(before) <= 1) return false;
        std::vector<long long> work = m;
        for (int xi = 0; xi < k; ++xi) {
          if (!((before >> xi) & 1)) continue;
          bool found = false;
          std::function<void(int, int)> rec = [&](int lo, int remaining) {
            if (found) return;
            if (work != m && mask_of(work) == (1u << xi)) {
              found = true;
              return;
            }
            if (remaining == 0) return;
            for (int i = lo; i < (int)ballots.size() && !found; ++i) {
              for (size_t t = 0; t < work.size(); ++t)
                work[t] += contribs[i][t];
              rec(i, remaining - 1);
              for (size_t t = 0; t < work.size(); ++t)
                work[t] -= contribs[i][t];
            }
          };
          rec(0, n);
          if (!found) return true;
        }
        return false;
      }
      case AxiomId::block_preservation:
        return false;  // an all-orders block never changes margins
      case AxiomId::independence_of_clones:
        throw DomainError(
            "clone independence is not margin-determined; use the profiles "
            "strategy");
    }
    return false;
  }
};

HuntResult hunt_graphs(MethodId f, AxiomId a, const HuntOptions& opt) {
  if (a == AxiomId::independence_of_clones)
    throw DomainError(
        "clone independence is not margin-determined; use the profiles "
        "strategy");
  HuntResult res;
  InstanceRunner runner{f, a, opt.domain, opt.n};
  try {
    for (int k = 2; k <= opt.max_candidates; ++k) {
      auto cands = letter_candidates(k);
      auto ballots = domain_ballots(cands, opt.domain);
      std::vector<std::vector<long long>> contribs;
      for (const auto& b : ballots) contribs.push_back(contribution(b, cands));
      GraphProbe probe{f, a, opt.domain, opt.n, cands, ballots, contribs};

      std::vector<std::pair<int, int>> slots;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) slots.push_back({i, j});
      int ns = (int)slots.size();

      for (long long w = 0; w <= opt.max_weight; ++w) {
        std::vector<long long> values;
        for (long long v = -w; v <= w; v += 2) values.push_back(v);
        if (values.empty()) continue;  // no value matches the parity
        std::vector<long long> pickv(ns, 0);
        std::optional<ViolationWitness> hit;
        std::function<void(int, bool)> rec = [&](int pos, bool touched_max) {
          if (hit) return;
          if (pos == ns) {
            if (!touched_max && w > 0) return;  // counted at a smaller w
            std::vector<long long> m((size_t)k * k, 0);
            for (int s = 0; s < ns; ++s) {
              m[(size_t)slots[s].first * k + slots[s].second] = pickv[s];
              m[(size_t)slots[s].second * k + slots[s].first] = -pickv[s];
            }
            if (opt.instance_cap && res.instances >= opt.instance_cap)
              throw HuntAbort{};
            ++res.instances;
            bool bad = false;
            try {
              bad = probe.violated(m);
            } catch (const TieExplosionError&) {
              ++res.skipped;
              return;
            }
            if (!bad) return;
            // Realize and re-run at the profile level.
            TargetMargins t;
            t.candidates = cands;
            t.m = m;
            auto p = mcgarvey_debord_realize(t);
            std::optional<ViolationWitness> wit;
            if (probe.hit_ballot >= 0)
              wit = runner.run(p, &ballots[probe.hit_ballot]);
            else if (probe.hit_candidate >= 0)
              wit = runner.run(p, nullptr, &cands[probe.hit_candidate]);
            else
              wit = runner.run(p);
            probe.hit_ballot = -1;
            probe.hit_candidate = -1;
            if (!wit)
              throw DomainError(
                  "margin-level violation did not survive realization");
            hit = std::move(wit);
            return;
          }
          for (long long v : values) {
            pickv[pos] = v;
            rec(pos + 1, touched_max || v == w || v == -w);
            if (hit) return;
          }
        };
        rec(0, false);
        if (hit) {
          res.witness = std::move(hit);
          return res;
        }
      }
    }
    res.space_exhausted = true;
  } catch (const HuntAbort&) {
    res.space_exhausted = false;
  }
  return res;
}

}  // namespace

HuntResult hunt_violations(MethodId f, AxiomId a, const HuntOptions& opt) {
  if (opt.max_candidates < 2) throw DomainError("need at least 2 candidates");
  if (opt.max_candidates > 7) throw DomainError("hunt candidate cap is 7");
  return opt.strategy == HuntStrategy::profiles ? hunt_profiles(f, a, opt)
                                                : hunt_graphs(f, a, opt);
}

Profile random_profile(std::mt19937_64& rng, int min_candidates,
                       int max_candidates, long long max_voters,
                       BallotDomain domain) {
  if (min_candidates < 1 || max_candidates < min_candidates ||
      max_voters < 1)
    throw DomainError("bad random profile bounds");
  int k = min_candidates +
          (int)(rng() % (std::uint64_t)(max_candidates - min_candidates + 1));
  auto cands = letter_candidates(k);
  long long v = 1 + (long long)(rng() % (std::uint64_t)max_voters);
  std::vector<Ballot> ballots;
  for (long long i = 0; i < v; ++i) {
    if (domain == BallotDomain::linear) {
      auto order = cands;
      for (int j = k - 1; j > 0; --j)
        std::swap(order[j], order[rng() % (std::uint64_t)(j + 1)]);
      std::vector<std::vector<Candidate>> tiers;
      for (auto& c : order) tiers.push_back({c});
      ballots.push_back({Ranking(std::move(tiers)), 1});
    } else {
      // Random levels, compressed to consecutive tiers.
      std::vector<int> level(k);
      for (int j = 0; j < k; ++j) level[j] = (int)(rng() % (std::uint64_t)k);
      std::vector<std::vector<Candidate>> tiers;
      for (int l = 0; l < k; ++l) {
        std::vector<Candidate> tier;
        for (int j = 0; j < k; ++j)
          if (level[j] == l) tier.push_back(cands[j]);
        if (!tier.empty()) tiers.push_back(std::move(tier));
      }
      ballots.push_back({Ranking(std::move(tiers)), 1});
    }
  }
  return Profile::make(cands, std::move(ballots));
}

namespace {

// A random ranking with the required extremes pinned.
Ranking random_added_ballot(std::mt19937_64& rng, AxiomId a,
                            const std::vector<Candidate>& cands,
                            BallotDomain domain) {
  int k = (int)cands.size();
  auto rest_ranking = [&](std::vector<Candidate> rest) {
    int kr = (int)rest.size();
    std::vector<std::vector<Candidate>> tiers;
    if (kr == 0) return tiers;
    if (domain == BallotDomain::linear) {
      for (int j = kr - 1; j > 0; --j)
        std::swap(rest[j], rest[rng() % (std::uint64_t)(j + 1)]);
      for (auto& c : rest) tiers.push_back({c});
    } else {
      std::vector<int> level(kr);
      for (int j = 0; j < kr; ++j) level[j] = (int)(rng() % (std::uint64_t)kr);
      for (int l = 0; l < kr; ++l) {
        std::vector<Candidate> tier;
        for (int j = 0; j < kr; ++j)
          if (level[j] == l) tier.push_back(rest[j]);
        if (!tier.empty()) tiers.push_back(std::move(tier));
      }
    }
    return tiers;
  };
  switch (a) {
    case AxiomId::positive_involvement:
    case AxiomId::strict_positive_involvement: {
      int xi = (int)(rng() % (std::uint64_t)k);
      std::vector<Candidate> rest;
      for (int i = 0; i < k; ++i)
        if (i != xi) rest.push_back(cands[i]);
      auto tiers = rest_ranking(std::move(rest));
      tiers.insert(tiers.begin(), {cands[xi]});
      return Ranking(std::move(tiers));
    }
    case AxiomId::negative_involvement: {
      int xi = (int)(rng() % (std::uint64_t)k);
      std::vector<Candidate> rest;
      for (int i = 0; i < k; ++i)
        if (i != xi) rest.push_back(cands[i]);
      auto tiers = rest_ranking(std::move(rest));
      tiers.push_back({cands[xi]});
      return Ranking(std::move(tiers));
    }
    case AxiomId::positive_negative_involvement: {
      int xi = (int)(rng() % (std::uint64_t)k);
      int yi = (int)(rng() % (std::uint64_t)(k - 1));
      if (yi >= xi) ++yi;
      std::vector<Candidate> rest;
      for (int i = 0; i < k; ++i)
        if (i != xi && i != yi) rest.push_back(cands[i]);
      auto tiers = rest_ranking(std::move(rest));
      tiers.insert(tiers.begin(), {cands[xi]});
      tiers.push_back({cands[yi]});
      return Ranking(std::move(tiers));
    }
    default:
      throw DomainError("axiom takes no added ballot");
  }
}

// Doubles one candidate so the profile carries a nontrivial clone set.
std::pair<Profile, std::vector<Candidate>> plant_clone(
    std::mt19937_64& rng, const Profile& p) {
  int k = p.num_candidates();
  const Candidate& orig = p.candidates[rng() % (std::uint64_t)k];
  Candidate copy = orig + "2";
  auto cands = p.candidates;
  cands.push_back(copy);
  std::vector<Ballot> ballots;
  for (const auto& b : p.ballots) {
    for (long long i = 0; i < b.count; ++i) {
      std::vector<std::vector<Candidate>> tiers;
      for (const auto& tier : b.ranking.tiers) {
        if (std::find(tier.begin(), tier.end(), orig) != tier.end()) {
          bool copy_first = rng() % 2 == 0;
          if (tier.size() == 1) {
            // Insert the copy in an adjacent tier, order randomized.
            if (copy_first) tiers.push_back({copy});
            tiers.push_back(tier);
            if (!copy_first) tiers.push_back({copy});
            continue;
          }
          // Tied original: the copy joins the same tier.
          auto t2 = tier;
          t2.push_back(copy);
          tiers.push_back(std::move(t2));
          continue;
        }
        tiers.push_back(tier);
      }
      ballots.push_back({Ranking(std::move(tiers)), 1});
    }
  }
  return {Profile::make(cands, std::move(ballots)),
          std::vector<Candidate>{orig, copy}};
}

}  // namespace

SweepResult sweep_axiom(MethodId f, AxiomId a, const SweepOptions& opt) {
  SweepResult res;
  res.seed = opt.seed;
  std::mt19937_64 rng(opt.seed);
  InstanceRunner runner{f, a, opt.domain, opt.n};
  for (unsigned long long i = 0; i < opt.instances; ++i) {
    auto p = random_profile(rng, opt.min_candidates, opt.max_candidates,
                            opt.max_voters, opt.domain);
    ++res.instances;
    try {
      std::optional<ViolationWitness> w;
      CheckResult cr{true, false, ""};
      if (axiom_wants_added_ballot(a)) {
        auto b = random_added_ballot(rng, a, p.candidates, opt.domain);
        switch (a) {
          case AxiomId::positive_involvement:
            cr = check_positive_involvement(f, p, b);
            break;
          case AxiomId::negative_involvement:
            cr = check_negative_involvement(f, p, b);
            break;
          case AxiomId::strict_positive_involvement:
            cr = check_strict_positive_involvement(f, p, b);
            break;
          default:
            cr = check_positive_negative_involvement(f, p, b);
            break;
        }
        if (!cr.passed) w = runner.run(p, &b);
      } else if (a == AxiomId::bullet_vote_positive_involvement) {
        const Candidate& x =
            p.candidates[rng() % (std::uint64_t)p.num_candidates()];
        cr = check_bullet_vote_positive_involvement(f, p, x);
        if (!cr.passed) w = runner.run(p, nullptr, &x);
      } else if (a == AxiomId::independence_of_clones) {
        auto [q, clones] = plant_clone(rng, p);
        const Candidate& rem = clones[rng() % 2];
        cr = check_independence_of_clones(f, q, rem, clones);
        if (!cr.passed) w = runner.run(q, nullptr, nullptr, &clones, &rem);
      } else {
        switch (a) {
          case AxiomId::condorcet_winner:
            cr = check_condorcet_winner(f, p);
            break;
          case AxiomId::condorcet_loser:
            cr = check_condorcet_loser(f, p);
            break;
          case AxiomId::resolvability:
            cr = check_resolvability(f, p, opt.domain);
            break;
          case AxiomId::n_resolvability:
            cr = check_n_resolvability(f, p, opt.n, opt.domain,
                                       std::max(opt.n, 3));
            break;
          case AxiomId::quasi_resoluteness:
            cr = check_quasi_resoluteness(f, p);
            break;
          default:
            cr = check_block_preservation(f, p);
            break;
        }
        if (!cr.passed) w = runner.run(p);
      }
      if (cr.vacuous) ++res.vacuous;
      if (!cr.passed) {
        ++res.violations;
        if (!res.first) res.first = std::move(w);
      }
    } catch (const TieExplosionError&) {
      ++res.skipped;
    }
  }
  return res;
}

static std::string csv(const std::vector<Candidate>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out;
}

std::string witness_to_text(const ViolationWitness& w) {
  std::string out;
  out += "method: " + to_string(w.method) + "\n";
  out += "axiom: " + to_string(w.axiom) + "\n";
  out += "domain: " + to_string(w.domain) + "\n";
  if (w.axiom == AxiomId::n_resolvability)
    out += "n: " + std::to_string(w.n) + "\n";
  if (!w.focus.empty()) out += "focus: " + w.focus + "\n";
  out += "before: " + csv(w.before.winners) + "\n";
  out += "after: " + csv(w.after.winners) + "\n";
  if (w.removed_candidate) out += "removed: " + *w.removed_candidate + "\n";
  if (!w.clones.empty()) out += "clones: " + csv(w.clones) + "\n";
  out += "base:\n" + profile_to_text(w.base);
  if (w.delta) out += "delta:\n" + profile_to_text(*w.delta);
  return out;
}

ViolationWitness parse_witness(const std::string& text) {
  ViolationWitness w;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  enum { scalars, base, delta } mode = scalars;
  std::string base_text, delta_text;
  bool have_method = false, have_axiom = false, have_base = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    std::string stripped = line;
    size_t b = stripped.find_first_not_of(" \t");
    stripped = b == std::string::npos ? "" : stripped.substr(b);
    if (mode != scalars) {
      if (stripped == "delta:") {
        mode = delta;
        continue;
      }
      (mode == base ? base_text : delta_text) += line + "\n";
      continue;
    }
    if (stripped.empty() || stripped[0] == '#') continue;
    if (stripped == "base:") {
      mode = base;
      have_base = true;
      continue;
    }
    auto colon = stripped.find(':');
    if (colon == std::string::npos)
      throw ParseError(line_no, "expected 'key: value'");
    auto key = stripped.substr(0, colon);
    auto value = stripped.substr(colon + 1);
    size_t vb = value.find_first_not_of(" \t");
    value = vb == std::string::npos ? "" : value.substr(vb);
    if (key == "method") {
      auto m = parse_method(value);
      if (!m) throw ParseError(line_no, "unknown method '" + value + "'");
      w.method = *m;
      have_method = true;
    } else if (key == "axiom") {
      auto ax = parse_axiom(value);
      if (!ax) throw ParseError(line_no, "unknown axiom '" + value + "'");
      w.axiom = *ax;
      have_axiom = true;
    } else if (key == "domain") {
      auto d = parse_domain(value);
      if (!d) throw ParseError(line_no, "unknown domain '" + value + "'");
      w.domain = *d;
    } else if (key == "n") {
      w.n = std::stoi(value);
    } else if (key == "focus") {
      w.focus = value;
    } else if (key == "before") {
      w.before.winners = parse_candidate_list(value, line_no);
    } else if (key == "after") {
      w.after.winners = parse_candidate_list(value, line_no);
    } else if (key == "removed") {
      w.removed_candidate = value;
    } else if (key == "clones") {
      w.clones = parse_candidate_list(value, line_no);
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }
  if (!have_method || !have_axiom || !have_base)
    throw ParseError(0, "witness needs method, axiom, and base sections");
  w.base = parse_profile_text(base_text);
  if (!delta_text.empty()) w.delta = parse_profile_text(delta_text);
  return w;
}

CheckResult replay_witness(const ViolationWitness& w) {
  auto single_delta_ranking = [&]() -> Ranking {
    if (!w.delta || w.delta->total_voters() != 1)
      throw DomainError("witness needs a one-voter delta");
    return w.delta->ballots.front().ranking;
  };
  switch (w.axiom) {
    case AxiomId::condorcet_winner:
      return check_condorcet_winner(w.method, w.base);
    case AxiomId::condorcet_loser:
      return check_condorcet_loser(w.method, w.base);
    case AxiomId::positive_involvement:
      return check_positive_involvement(w.method, w.base,
                                        single_delta_ranking());
    case AxiomId::negative_involvement:
      return check_negative_involvement(w.method, w.base,
                                        single_delta_ranking());
    case AxiomId::resolvability:
      return check_resolvability(w.method, w.base, w.domain);
    case AxiomId::n_resolvability:
      return check_n_resolvability(w.method, w.base, w.n, w.domain,
                                   std::max(w.n, 3));
    case AxiomId::quasi_resoluteness:
      return check_quasi_resoluteness(w.method, w.base);
    case AxiomId::strict_positive_involvement:
      return check_strict_positive_involvement(w.method, w.base,
                                               single_delta_ranking());
    case AxiomId::independence_of_clones:
      if (!w.removed_candidate || w.clones.empty())
        throw DomainError("witness needs removed and clones entries");
      return check_independence_of_clones(w.method, w.base,
                                          *w.removed_candidate, w.clones);
    case AxiomId::block_preservation:
      return check_block_preservation(w.method, w.base);
    case AxiomId::positive_negative_involvement:
      return check_positive_negative_involvement(w.method, w.base,
                                                 single_delta_ranking());
    case AxiomId::bullet_vote_positive_involvement:
      if (w.focus.empty()) throw DomainError("witness needs a focus");
      return check_bullet_vote_positive_involvement(w.method, w.base,
                                                    w.focus);
  }
  throw DomainError("bad axiom id");
}

}  // namespace votelab
