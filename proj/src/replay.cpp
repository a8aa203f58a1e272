#include "votelab/replay.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>

#include "json.hpp"

namespace votelab {

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::thm1: return "thm1";
    case TheoremId::thm2: return "thm2";
    case TheoremId::thm3: return "thm3";
    case TheoremId::thm4: return "thm4";
    case TheoremId::thm5_pi: return "thm5-pi";
    case TheoremId::thm5_ni: return "thm5-ni";
  }
  throw DomainError("bad theorem id");
}

std::optional<TheoremId> parse_theorem(const std::string& name) {
  for (auto id : all_theorems)
    if (to_string(id) == name) return id;
  if (name == "1") return TheoremId::thm1;
  if (name == "2") return TheoremId::thm2;
  if (name == "3") return TheoremId::thm3;
  if (name == "4") return TheoremId::thm4;
  if (name == "5" || name == "5-pi") return TheoremId::thm5_pi;
  if (name == "5-ni") return TheoremId::thm5_ni;
  return std::nullopt;
}

bool theorem_takes_n(TheoremId id) {
  return id == TheoremId::thm2 || id == TheoremId::thm4;
}

std::string to_string(AssertKind k) {
  switch (k) {
    case AssertKind::margin_equality: return "margin-equality";
    case AssertKind::defensible_subset: return "defensible-subset";
    case AssertKind::separation: return "separation";
    case AssertKind::condorcet_status: return "condorcet-status";
    case AssertKind::availability: return "availability";
    case AssertKind::clone_set: return "clone-set";
    case AssertKind::quantified_over_deltas: return "quantified-over-deltas";
  }
  throw DomainError("bad assertion kind");
}

bool ReplayReport::verified() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const StepAssertion& a) { return a.passed; });
}

bool same_assertions(const ReplayReport& a, const ReplayReport& b) {
  if (a.assertions.size() != b.assertions.size()) return false;
  for (size_t i = 0; i < a.assertions.size(); ++i) {
    const auto& x = a.assertions[i];
    const auto& y = b.assertions[i];
    if (x.label != y.label || x.kind != y.kind || x.passed != y.passed ||
        x.enumerated != y.enumerated)
      return false;
  }
  return true;
}

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("VOTELAB_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

namespace {

enum class Family { p, q };
enum class Variant { pi, ni };

struct Step {
  bool add;
  std::string ranking;  // linear order, one letter per position
  long long count;
  char focus;  // candidate the transition is about
};

struct CaseSpec {
  Family family;
  Variant variant;
  std::vector<std::pair<std::string, long long>> base;
  std::array<std::vector<Step>, 4> transitions;
  long long block_copies = 0;  // all-linear-orders padding (ni variants)
  // Positive edges of the expected margin matrix at each stage.
  std::array<std::vector<std::tuple<char, char, long long>>, 5> edges;
};

const std::vector<std::pair<std::string, long long>> p_base = {
    {"daceb", 69}, {"ebacd", 64}, {"bcaed", 46},
    {"cdeba", 20}, {"dbace", 18}, {"edcba", 2},
};

const std::array<std::vector<Step>, 4> p_transitions = {{
    {{true, "adbec", 26, 'a'}},
    {{false, "daceb", 7, 'd'}},
    {{true, "bdeac", 23, 'b'}},
    {{false, "dbace", 7, 'd'}},
}};

const std::array<std::vector<std::tuple<char, char, long long>>, 5> p_edges = {{
    {{'a', 'c', 83}, {'a', 'd', 1}, {'a', 'e', 47}, {'b', 'a', 81},
     {'b', 'c', 37}, {'b', 'd', 1}, {'c', 'd', 41}, {'c', 'e', 87},
     {'e', 'b', 91}, {'e', 'd', 5}},
    {{'a', 'c', 109}, {'a', 'd', 27}, {'a', 'e', 73}, {'b', 'a', 55},
     {'b', 'c', 63}, {'c', 'd', 15}, {'c', 'e', 61}, {'d', 'b', 25},
     {'d', 'e', 21}, {'e', 'b', 65}},
    {{'a', 'c', 102}, {'a', 'd', 34}, {'a', 'e', 66}, {'b', 'a', 62},
     {'b', 'c', 70}, {'c', 'd', 22}, {'c', 'e', 54}, {'d', 'b', 18},
     {'d', 'e', 14}, {'e', 'b', 58}},
    {{'a', 'c', 125}, {'a', 'd', 11}, {'a', 'e', 43}, {'b', 'a', 85},
     {'b', 'c', 93}, {'b', 'd', 5}, {'c', 'e', 31}, {'d', 'c', 1},
     {'d', 'e', 37}, {'e', 'b', 35}},
    {{'a', 'c', 118}, {'a', 'd', 18}, {'a', 'e', 36}, {'b', 'a', 78},
     {'b', 'c', 86}, {'b', 'd', 12}, {'c', 'd', 6}, {'c', 'e', 24},
     {'d', 'e', 30}, {'e', 'b', 42}},
}};

const std::vector<std::pair<std::string, long long>> q_base = {
    {"dbaec", 62}, {"cbaed", 60}, {"deacb", 42},
    {"aecbd", 23}, {"ecbad", 19}, {"cebad", 3},
};

const std::array<std::vector<Step>, 4> q_transitions = {{
    {{true, "adbce", 16, 'a'},
     {true, "aedbc", 7, 'a'},
     {true, "aebdc", 2, 'a'}},
    {{false, "deacb", 5, 'd'}},
    {{true, "bdcae", 20, 'b'}},
    {{false, "dbaec", 11, 'd'}},
}};

const std::array<std::vector<std::tuple<char, char, long long>>, 5> q_edges = {{
    {{'a', 'c', 45}, {'a', 'd', 1}, {'a', 'e', 81}, {'b', 'a', 79},
     {'b', 'd', 1}, {'b', 'e', 35}, {'c', 'b', 85}, {'c', 'd', 1},
     {'e', 'c', 83}, {'e', 'd', 1}},
    {{'a', 'c', 70}, {'a', 'd', 26}, {'a', 'e', 106}, {'b', 'a', 54},
     {'b', 'e', 42}, {'c', 'b', 60}, {'d', 'b', 20}, {'d', 'c', 24},
     {'d', 'e', 6}, {'e', 'c', 76}},
    {{'a', 'c', 65}, {'a', 'd', 31}, {'a', 'e', 111}, {'b', 'a', 59},
     {'b', 'e', 47}, {'c', 'b', 55}, {'d', 'b', 15}, {'d', 'c', 19},
     {'d', 'e', 1}, {'e', 'c', 71}},
    {{'a', 'c', 45}, {'a', 'd', 11}, {'a', 'e', 131}, {'b', 'a', 79},
     {'b', 'd', 5}, {'b', 'e', 67}, {'c', 'b', 35}, {'d', 'c', 39},
     {'d', 'e', 21}, {'e', 'c', 51}},
    {{'a', 'c', 34}, {'a', 'd', 22}, {'a', 'e', 120}, {'b', 'a', 68},
     {'b', 'd', 16}, {'b', 'e', 56}, {'c', 'b', 46}, {'d', 'c', 28},
     {'d', 'e', 10}, {'e', 'c', 40}},
}};

std::string reversed_word(const std::string& w) {
  return std::string(w.rbegin(), w.rend());
}

CaseSpec make_spec(Family family, Variant variant) {
  CaseSpec spec;
  spec.family = family;
  spec.variant = variant;
  spec.base = family == Family::p ? p_base : q_base;
  spec.transitions = family == Family::p ? p_transitions : q_transitions;
  spec.edges = family == Family::p ? p_edges : q_edges;
  if (variant == Variant::ni) {
    spec.block_copies = 147;
    // Additions of rankings with the focus on top become removals of the
    // reversed rankings (focus at the bottom), and vice versa. Stage
    // margins are unchanged by the rewrite.
    for (auto& t : spec.transitions)
      for (auto& s : t) {
        s.add = !s.add;
        s.ranking = reversed_word(s.ranking);
      }
  }
  return spec;
}

const std::vector<Candidate> abcde = {"a", "b", "c", "d", "e"};

MarginMatrix expected_matrix(
    const std::vector<std::tuple<char, char, long long>>& edges,
    long long scale) {
  MarginMatrix m;
  m.candidates = abcde;
  m.m.assign(25, 0);
  for (auto [f, t, w] : edges) {
    int i = f - 'a', j = t - 'a';
    m.at(i, j) = w * scale;
    m.at(j, i) = -w * scale;
  }
  return m;
}

std::string set_text(const std::vector<Candidate>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "}";
}

std::string set_text_mask(std::uint32_t mask) {
  std::vector<Candidate> s;
  for (int i = 0; i < 5; ++i)
    if ((mask >> i) & 1) s.push_back(std::string(1, (char)('a' + i)));
  return set_text(s);
}

std::uint32_t mask_of_letters(const std::string& letters) {
  std::uint32_t m = 0;
  for (char c : letters) m |= 1u << (c - 'a');
  return m;
}

// Ballot deltas the quantifications range over, with their pairwise
// contribution matrices. Index 0 is the empty delta.
struct DeltaSpace {
  std::vector<Ranking> ballots;
  std::vector<std::array<long long, 25>> contribs;
};

DeltaSpace delta_space(BallotDomain mode) {
  DeltaSpace d;
  d.ballots = mode == BallotDomain::linear ? enumerate_linear_orders(abcde)
                                           : enumerate_weak_orders(abcde);
  for (const auto& r : d.ballots) {
    std::array<long long, 25> c{};
    std::vector<int> tier(5);
    for (int t = 0; t < (int)r.tiers.size(); ++t)
      for (const auto& cand : r.tiers[t]) tier[cand[0] - 'a'] = t;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (tier[i] < tier[j]) c[i * 5 + j] = 1;
        else if (tier[i] > tier[j]) c[i * 5 + j] = -1;
      }
    d.contribs.push_back(c);
  }
  return d;
}

unsigned long long multiset_count(unsigned long long b, int n) {
  // Multisets of size 0..n over b ballots.
  unsigned long long total = 0;
  for (int s = 0; s <= n; ++s) {
    // C(b + s - 1, s)
    unsigned long long c = 1;
    for (int i = 1; i <= s; ++i) c = c * (b + s - i) / i;
    total += c;
  }
  return total;
}

struct QuantFail {
  bool ok = true;
  std::vector<int> first;  // ballot indices of the first counterexample
  std::string what;        // short description of the failure
};

void note_fail(QuantFail& f, const std::vector<int>& idx, std::string what) {
  if (f.ok || idx < f.first) {
    f.ok = false;
    f.first = idx;
    f.what = std::move(what);
  }
}

void merge_fail(QuantFail& into, const QuantFail& from) {
  if (from.ok) return;
  if (into.ok || from.first < into.first) into = from;
}

// Tracks both quantified predicates over one walk of the delta space.
struct WalkResult {
  unsigned long long nodes = 0;
  QuantFail def;
  QuantFail sep;
};

void merge_result(WalkResult& into, const WalkResult& from) {
  into.nodes += from.nodes;
  merge_fail(into.def, from.def);
  merge_fail(into.sep, from.sep);
}

std::string delta_text(const DeltaSpace& ds, const std::vector<int>& idx) {
  if (idx.empty()) return "(empty delta)";
  std::string out;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) out += " + ";
    out += ds.ballots[idx[i]].compact();
  }
  return out;
}

// Checks both quantified predicates at one delta. `want_mask` is the
// allowed defensible set; `exact` demands equality instead of inclusion.
void check_node(const std::array<long long, 25>& m, const std::vector<int>& idx,
                std::uint32_t want_mask, bool exact, WalkResult& acc) {
  auto dmask = kernel::defensible_mask(m.data(), 5);
  bool bad = exact ? dmask != want_mask : (dmask & ~want_mask) != 0;
  if (bad) note_fail(acc.def, idx, "defensible set " + set_text_mask(dmask));
  if (!kernel::separation_ok(m.data(), 5))
    note_fail(acc.sep, idx, "margins not separated");
}

// Walks every multiset of at most `budget` ballots added onto `base`,
// checking each node including the empty one.
void walk_multisets(const std::array<long long, 25>& base,
                    const DeltaSpace& ds, int budget, int jobs,
                    std::uint32_t want_mask, bool exact, WalkResult& out) {
  int nb = (int)ds.ballots.size();
  auto subtree = [&](int first_ballot, WalkResult& acc) {
    std::array<long long, 25> work = base;
    for (int t = 0; t < 25; ++t) work[t] += ds.contribs[first_ballot][t];
    std::vector<int> picked{first_ballot};
    std::function<void(int, int)> rec = [&](int lo, int remaining) {
      ++acc.nodes;
      check_node(work, picked, want_mask, exact, acc);
      if (remaining == 0) return;
      for (int i = lo; i < nb; ++i) {
        for (int t = 0; t < 25; ++t) work[t] += ds.contribs[i][t];
        picked.push_back(i);
        rec(i, remaining - 1);
        picked.pop_back();
        for (int t = 0; t < 25; ++t) work[t] -= ds.contribs[i][t];
      }
    };
    rec(first_ballot, budget - 1);
  };

  // Root: the empty delta.
  ++out.nodes;
  check_node(base, {}, want_mask, exact, out);
  if (budget == 0) return;
  if (jobs <= 1) {
    for (int i = 0; i < nb; ++i) subtree(i, out);
    return;
  }
  std::vector<WalkResult> accs(jobs);
  std::vector<std::thread> threads;
  for (int w = 0; w < jobs; ++w)
    threads.emplace_back([&, w] {
      for (int i = w; i < nb; i += jobs) subtree(i, accs[w]);
    });
  for (auto& t : threads) t.join();
  for (const auto& acc : accs) merge_result(out, acc);
}

// Walks every ordered pair drawn from the empty-or-single-ballot space,
// added onto `base`. Covers the stage with two independent unit deltas.
void walk_pairs(const std::array<long long, 25>& base, const DeltaSpace& ds,
                int jobs, std::uint32_t want_mask, bool exact,
                WalkResult& out) {
  int nb = (int)ds.ballots.size();
  auto row = [&](int i, WalkResult& acc) {
    // i == 0 means an empty first delta; otherwise ballot i - 1.
    std::array<long long, 25> mid = base;
    if (i > 0)
      for (int t = 0; t < 25; ++t) mid[t] += ds.contribs[i - 1][t];
    for (int j = 0; j <= nb; ++j) {
      std::array<long long, 25> work = mid;
      if (j > 0)
        for (int t = 0; t < 25; ++t) work[t] += ds.contribs[j - 1][t];
      ++acc.nodes;
      std::vector<int> picked;
      if (i > 0) picked.push_back(i - 1);
      if (j > 0) picked.push_back(j - 1);
      check_node(work, picked, want_mask, exact, acc);
    }
  };
  if (jobs <= 1) {
    for (int i = 0; i <= nb; ++i) row(i, out);
    return;
  }
  std::vector<WalkResult> accs(jobs);
  std::vector<std::thread> threads;
  for (int w = 0; w < jobs; ++w)
    threads.emplace_back([&, w] {
      for (int i = w; i <= nb; i += jobs) row(i, accs[w]);
    });
  for (auto& t : threads) t.join();
  for (const auto& acc : accs) merge_result(out, acc);
}

// Interval certificate: sound for every profile whose off-diagonal margins
// each differ from `base` by at most `shift`.
bool cert_defensible_exactly(const std::array<long long, 25>& base, int di,
                             long long shift, std::string& why) {
  auto at = [&](int i, int j) { return base[i * 5 + j]; };
  for (int y = 0; y < 5; ++y) {
    if (y == di) continue;
    bool covered = at(y, di) <= -shift;
    for (int z = 0; z < 5 && !covered; ++z) {
      if (z == y || z == di) continue;
      if (at(z, y) - at(y, di) >= 2 * shift) covered = true;
    }
    if (!covered) {
      why = "cannot certify " + std::string(1, (char)('a' + di)) +
            " defensible against " + std::string(1, (char)('a' + y));
      return false;
    }
  }
  for (int x = 0; x < 5; ++x) {
    if (x == di) continue;
    bool excluded = false;
    for (int y = 0; y < 5 && !excluded; ++y) {
      if (y == x) continue;
      if (at(y, x) < shift + 1) continue;
      bool dominates = true;
      for (int z = 0; z < 5 && dominates; ++z) {
        if (z == x || z == y) continue;
        if (at(y, x) - at(z, y) < 2 * shift + 1) dominates = false;
      }
      if (dominates) excluded = true;
    }
    if (!excluded) {
      why = "cannot certify " + std::string(1, (char)('a' + x)) +
            " outside the defensible set";
      return false;
    }
  }
  return true;
}

bool cert_separation(const std::array<long long, 25>& base, long long shift,
                     std::string& why) {
  // Opposite slots of one pair always keep a gap of 2; distinct pairs need
  // base values at least 2*shift + 2 apart.
  struct Slot {
    int i, j;
    long long v;
  };
  std::vector<Slot> slots;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) slots.push_back({i, j, base[i * 5 + j]});
  for (size_t a = 0; a < slots.size(); ++a)
    for (size_t b = a + 1; b < slots.size(); ++b) {
      if (slots[a].i == slots[b].j && slots[a].j == slots[b].i) continue;
      long long gap = slots[a].v - slots[b].v;
      if (gap < 0) gap = -gap;
      if (gap < 2 * shift + 2) {
        why = "slots (" + std::string(1, (char)('a' + slots[a].i)) + "," +
              std::string(1, (char)('a' + slots[a].j)) + ") and (" +
              std::string(1, (char)('a' + slots[b].i)) + "," +
              std::string(1, (char)('a' + slots[b].j)) +
              ") are only " + std::to_string(gap) + " apart";
        return false;
      }
    }
  return true;
}

std::array<long long, 25> to_array(const MarginMatrix& m) {
  std::array<long long, 25> out{};
  for (int t = 0; t < 25; ++t) out[t] = m.m[t];
  return out;
}

struct CaseRunner {
  CaseSpec spec;
  TheoremId id;
  long long scale;
  BallotDomain mode;
  int jobs;
  ReplayReport report;
  std::vector<Profile> stages;
  std::vector<MarginMatrix> matrices;

  void add(std::string label, AssertKind kind, bool passed,
           std::string detail = "", unsigned long long enumerated = 0) {
    report.assertions.push_back(
        {std::move(label), kind, passed, std::move(detail), enumerated});
  }

  // Budget: how many voters the adversarial deltas may add at each
  // quantified stage (one delta at stage 3, two at stage 5).
  long long delta_budget() const { return theorem_takes_n(id) ? scale : 1; }

  bool derive() {
    std::vector<Ballot> ballots;
    for (const auto& [word, count] : spec.base)
      ballots.push_back({Ranking::linear(word), count * scale});
    Profile p = Profile::make(abcde, std::move(ballots));
    if (spec.block_copies > 0)
      p = add_profiles(
          p, block_of_all_linear_orders(abcde, spec.block_copies * scale));
    stages.push_back(p);
    for (int t = 0; t < 4; ++t) {
      for (const auto& s : spec.transitions[t]) {
        auto r = Ranking::linear(s.ranking);
        long long amount = s.count * scale;
        std::string role = spec.variant == Variant::pi ? "first" : "last";
        std::string what =
            std::string(s.add ? "adds " : "removes ") +
            std::to_string(amount) + "x " + r.compact() + " ranking " +
            std::string(1, s.focus) + " uniquely " + role;
        std::string label = "transition " + std::to_string(t + 1) + ": " + what;
        auto extreme = spec.variant == Variant::pi ? r.top() : r.bottom();
        bool focus_ok =
            extreme.has_value() && (*extreme)[0] == s.focus;
        if (s.add) {
          add(label, AssertKind::availability, focus_ok,
              focus_ok ? "" : "transition ballot has the wrong extreme");
          if (!focus_ok) return false;
          p = add_ballot(p, r, amount);
        } else {
          long long have = p.count_of(r);
          bool ok = focus_ok && have >= amount;
          add(label + " (available)", AssertKind::availability, ok,
              ok ? "" : "stage holds " + std::to_string(have) + " of " +
                            r.compact() + ", needs " + std::to_string(amount));
          if (!ok) return false;
          p = remove_ballots(p, r, amount);
        }
      }
      stages.push_back(p);
    }
    for (const auto& s : stages) matrices.push_back(margin_matrix(s));
    return true;
  }

  void stage_assertions() {
    static const char* defensible_exp[5] = {"ad", "abd", "bd", "bd", "d"};
    for (int s = 0; s < (int)stages.size(); ++s) {
      if (matrices.empty()) break;
      auto expected = expected_matrix(spec.edges[s], scale);
      bool eq = matrices[s] == expected;
      std::string detail;
      if (!eq) {
        for (int i = 0; i < 5 && detail.empty(); ++i)
          for (int j = 0; j < 5; ++j)
            if (matrices[s].at(i, j) != expected.at(i, j)) {
              detail = "margin(" + std::string(1, (char)('a' + i)) + "," +
                       std::string(1, (char)('a' + j)) + ") is " +
                       std::to_string(matrices[s].at(i, j)) + ", expected " +
                       std::to_string(expected.at(i, j));
              break;
            }
      }
      add("stage " + std::to_string(s + 1) +
              " margin matrix matches the expected values",
          AssertKind::margin_equality, eq, detail);

      auto dmask = kernel::defensible_mask(matrices[s].m.data(), 5);
      auto want = mask_of_letters(defensible_exp[s]);
      add("stage " + std::to_string(s + 1) + " defensible set equals " +
              set_text_mask(want),
          AssertKind::defensible_subset, dmask == want,
          dmask == want ? "" : "computed " + set_text_mask(dmask));
    }
    if (stages.empty()) return;

    add("stage 1 margins are separated", AssertKind::separation,
        margin_separation_holds(matrices[0]));

    if (spec.family == Family::p) {
      auto cl = condorcet_loser(matrices[0]);
      add("stage 1 Condorcet loser is d", AssertKind::condorcet_status,
          cl.has_value() && *cl == "d",
          cl ? (*cl == "d" ? "" : "loser is " + *cl) : "no Condorcet loser");
    } else {
      std::vector<Candidate> clones = {"a", "b", "c", "e"};
      // Block ballots split every candidate pair, so the clone relation is
      // claimed of the stage 1 core, before any all-orders padding.
      Profile core = stages[0];
      std::string where = "stage 1";
      if (spec.block_copies > 0) {
        std::vector<Ballot> ballots;
        for (const auto& [word, count] : spec.base)
          ballots.push_back({Ranking::linear(word), count * scale});
        core = Profile::make(abcde, std::move(ballots));
        where = "the unpadded stage 1 core";
      }
      bool cs = is_clone_set(core, clones);
      add(where + " keeps clone set {a,b,c,e} intact", AssertKind::clone_set,
          cs, cs ? "" : "some ballot splits the set");
      auto reduced = remove_candidate(stages[0], "b");
      auto cw = condorcet_winner(reduced);
      add("removing clone b at stage 1 leaves Condorcet winner a",
          AssertKind::condorcet_status, cw.has_value() && *cw == "a",
          cw ? (*cw == "a" ? "" : "winner is " + *cw)
             : "no Condorcet winner");
    }
  }

  void gap_assertions() {
    const int stage_idx[2] = {2, 4};
    const long long factor[2] = {4, 6};
    for (int g = 0; g < 2; ++g) {
      if ((int)matrices.size() <= stage_idx[g]) break;
      long long need = factor[g] * scale;
      auto edges = margin_graph(matrices[stage_idx[g]]).edges;
      long long min_gap = -1;
      for (size_t a = 0; a < edges.size(); ++a)
        for (size_t b = a + 1; b < edges.size(); ++b) {
          long long gap = edges[a].weight - edges[b].weight;
          if (gap < 0) gap = -gap;
          if (min_gap < 0 || gap < min_gap) min_gap = gap;
        }
      bool ok = min_gap >= need;
      add("stage " + std::to_string(stage_idx[g] + 1) +
              " edge weights pairwise differ by at least " +
              std::to_string(need),
          AssertKind::separation, ok,
          ok ? "" : "smallest gap is " + std::to_string(min_gap));
    }
  }

  void quantified_assertions() {
    if (matrices.size() < 5) return;
    auto ds = delta_space(mode);
    int budget = (int)delta_budget();
    unsigned long long singles = multiset_count(ds.ballots.size(), budget);
    std::string budget_tag = "budget " + std::to_string(budget);
    auto base3 = to_array(matrices[2]);

    WalkResult r3;
    walk_multisets(base3, ds, budget, jobs, mask_of_letters("bd"), false, r3);
    add("stage 3 defensible set stays within {b,d} for all deltas (" +
            budget_tag + ", " + std::to_string(singles) + " cases)",
        AssertKind::quantified_over_deltas, r3.def.ok,
        r3.def.ok ? "" : "delta " + delta_text(ds, r3.def.first) + " gives " +
                             r3.def.what,
        singles);
    add("stage 3 margins stay separated for all deltas (" + budget_tag +
            ", " + std::to_string(singles) + " cases)",
        AssertKind::quantified_over_deltas, r3.sep.ok,
        r3.sep.ok ? "" : "delta " + delta_text(ds, r3.sep.first) + ": " +
                             r3.sep.what,
        singles);

    auto base5 = to_array(matrices[4]);
    unsigned long long pair_cases = singles * singles;
    std::string pair_tag =
        "budget " + std::to_string(budget) + "+" + std::to_string(budget);
    if (budget == 1) {
      WalkResult r5;
      walk_pairs(base5, ds, jobs, mask_of_letters("d"), true, r5);
      add("stage 5 defensible set equals {d} for all delta pairs (" +
              pair_tag + ", " + std::to_string(pair_cases) + " cases)",
          AssertKind::quantified_over_deltas, r5.def.ok,
          r5.def.ok ? "" : "delta pair " + delta_text(ds, r5.def.first) +
                               " gives " + r5.def.what,
          pair_cases);
      add("stage 5 margins stay separated for all delta pairs (" + pair_tag +
              ", " + std::to_string(pair_cases) + " cases)",
          AssertKind::quantified_over_deltas, r5.sep.ok,
          r5.sep.ok ? "" : "delta pair " + delta_text(ds, r5.sep.first) +
                               ": " + r5.sep.what,
          pair_cases);
    } else {
      // Two deltas of up to `budget` voters each shift any margin by at
      // most 2 * budget; the certificate covers that whole box.
      long long shift = 2 * budget;
      std::string why;
      bool def_ok = cert_defensible_exactly(base5, 3, shift, why);
      std::string note = "interval certificate over margin shifts (bound " +
                         std::to_string(shift) + ")";
      add("stage 5 defensible set equals {d} for all delta pairs (" +
              pair_tag + ", " + std::to_string(pair_cases) + " cases)",
          AssertKind::quantified_over_deltas, def_ok,
          def_ok ? note : note + "; " + why, pair_cases);
      std::string why2;
      bool sep_ok = cert_separation(base5, shift, why2);
      add("stage 5 margins stay separated for all delta pairs (" + pair_tag +
              ", " + std::to_string(pair_cases) + " cases)",
          AssertKind::quantified_over_deltas, sep_ok,
          sep_ok ? note : note + "; " + why2, pair_cases);
    }
  }

  void block_assertions() {
    if (spec.variant != Variant::ni || matrices.size() < 5) return;
    const int stage_idx[3] = {0, 2, 4};
    const long long budgets[3] = {0, delta_budget(), 2 * delta_budget()};
    auto orders = enumerate_linear_orders(abcde);
    for (int g = 0; g < 3; ++g) {
      int s = stage_idx[g];
      long long max_margin = 0;
      for (long long v : matrices[s].m) max_margin = std::max(max_margin, v);
      long long bound = max_margin + budgets[g];

      // Voters whose ballot puts y uniquely second-to-last and x uniquely
      // last, minimized over ordered pairs (y, x).
      long long min_pattern = -1;
      for (char y = 'a'; y <= 'e'; ++y)
        for (char x = 'a'; x <= 'e'; ++x) {
          if (x == y) continue;
          long long total = 0;
          for (const auto& b : stages[s].ballots) {
            const auto& tiers = b.ranking.tiers;
            if (tiers.size() < 2) continue;
            if (tiers.back().size() == 1 && tiers.back()[0][0] == x &&
                tiers[tiers.size() - 2].size() == 1 &&
                tiers[tiers.size() - 2][0][0] == y)
              total += b.count;
          }
          if (min_pattern < 0 || total < min_pattern) min_pattern = total;
        }
      bool pat_ok = min_pattern >= bound + 1;
      add("stage " + std::to_string(s + 1) +
              ": second-to-last/last ballot patterns outnumber reachable "
              "margins (budget " + std::to_string(budgets[g]) + ")",
          AssertKind::availability, pat_ok,
          "weakest pattern " + std::to_string(min_pattern) +
              ", margin bound " + std::to_string(bound));

      long long min_order = -1;
      for (const auto& r : orders) {
        long long c = stages[s].count_of(r);
        if (min_order < 0 || c < min_order) min_order = c;
      }
      if (spec.family == Family::p) {
        long long floor_v = 121 * scale;
        add("stage " + std::to_string(s + 1) + " keeps at least " +
                std::to_string(floor_v) + " ballots of every linear order",
            AssertKind::availability, min_order >= floor_v,
            "weakest order count " + std::to_string(min_order));
        if (s != 0)
          add("the all-orders floor at stage " + std::to_string(s + 1) +
                  " exceeds reachable margins (" + std::to_string(floor_v) +
                  " > " + std::to_string(bound) + ")",
              AssertKind::availability, floor_v > bound);
      } else {
        add("the all-orders floor at stage " + std::to_string(s + 1) +
                " exceeds reachable margins (" + std::to_string(min_order) +
                " > " + std::to_string(bound) + ")",
            AssertKind::availability, min_order > bound);
      }
    }
  }

  ReplayReport run() {
    auto start = std::chrono::steady_clock::now();
    bool complete = derive();
    stage_assertions();
    if (complete) {
      gap_assertions();
      quantified_assertions();
      block_assertions();
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
  }
};

ReplayReport run_theorem(TheoremId id, int n, const ReplayOptions& opt) {
  if (n < 1) throw DomainError("n must be positive");
  if (!theorem_takes_n(id) && n != 1)
    throw DomainError(to_string(id) + " does not take a scale parameter");
  Family family =
      (id == TheoremId::thm5_pi || id == TheoremId::thm5_ni) ? Family::q
                                                             : Family::p;
  Variant variant = (id == TheoremId::thm3 || id == TheoremId::thm4 ||
                     id == TheoremId::thm5_ni)
                        ? Variant::ni
                        : Variant::pi;
  CaseRunner runner;
  runner.spec = make_spec(family, variant);
  runner.id = id;
  runner.scale = theorem_takes_n(id) ? n : 1;
  runner.mode = opt.mode;
  runner.jobs = resolve_jobs(opt.jobs);
  runner.report.theorem = id;
  runner.report.n = n;
  runner.report.mode = opt.mode;

  if (opt.mutation) {
    const Mutation& m = *opt.mutation;
    if (m.block) {
      if (runner.spec.block_copies == 0)
        throw DomainError("this construction has no block padding to mutate");
      runner.spec.block_copies += m.delta;
    } else if (m.stage == 0) {
      if (m.entry < 0 || m.entry >= (int)runner.spec.base.size())
        throw DomainError("bad mutation entry");
      runner.spec.base[m.entry].second += m.delta;
    } else {
      if (m.stage < 1 || m.stage > 4)
        throw DomainError("bad mutation stage");
      auto& steps = runner.spec.transitions[m.stage - 1];
      if (m.entry < 0 || m.entry >= (int)steps.size())
        throw DomainError("bad mutation entry");
      steps[m.entry].count += m.delta;
    }
  }
  return runner.run();
}

}  // namespace

Profile base_profile(const std::string& id) {
  const std::vector<std::pair<std::string, long long>>* rows = nullptr;
  if (id == "P1") rows = &p_base;
  else if (id == "Q1") rows = &q_base;
  else throw DomainError("unknown base profile '" + id + "'");
  std::vector<Ballot> ballots;
  for (const auto& [word, count] : *rows)
    ballots.push_back({Ranking::linear(word), count});
  return Profile::make(abcde, std::move(ballots));
}

std::vector<std::pair<Profile, MarginMatrix>> derive_sequence(TheoremId id,
                                                              int n) {
  if (n < 1) throw DomainError("n must be positive");
  if (!theorem_takes_n(id) && n != 1)
    throw DomainError(to_string(id) + " does not take a scale parameter");
  Family family =
      (id == TheoremId::thm5_pi || id == TheoremId::thm5_ni) ? Family::q
                                                             : Family::p;
  Variant variant = (id == TheoremId::thm3 || id == TheoremId::thm4 ||
                     id == TheoremId::thm5_ni)
                        ? Variant::ni
                        : Variant::pi;
  auto spec = make_spec(family, variant);
  long long scale = theorem_takes_n(id) ? n : 1;
  std::vector<Ballot> ballots;
  for (const auto& [word, count] : spec.base)
    ballots.push_back({Ranking::linear(word), count * scale});
  Profile p = Profile::make(abcde, std::move(ballots));
  if (spec.block_copies > 0)
    p = add_profiles(p,
                     block_of_all_linear_orders(abcde, spec.block_copies * scale));
  std::vector<std::pair<Profile, MarginMatrix>> out;
  out.push_back({p, margin_matrix(p)});
  for (int t = 0; t < 4; ++t) {
    for (const auto& s : spec.transitions[t]) {
      auto r = Ranking::linear(s.ranking);
      p = s.add ? add_ballot(p, r, s.count * scale)
                : remove_ballots(p, r, s.count * scale);
    }
    out.push_back({p, margin_matrix(p)});
  }
  return out;
}

std::vector<Mutation> mutation_suite(TheoremId id) {
  Family family =
      (id == TheoremId::thm5_pi || id == TheoremId::thm5_ni) ? Family::q
                                                             : Family::p;
  Variant variant = (id == TheoremId::thm3 || id == TheoremId::thm4 ||
                     id == TheoremId::thm5_ni)
                        ? Variant::ni
                        : Variant::pi;
  auto spec = make_spec(family, variant);
  std::vector<Mutation> out;
  for (int i = 0; i < (int)spec.base.size(); ++i)
    out.push_back({"base ballot " + spec.base[i].first + " count -1", 0, i,
                   -1, false});
  for (int t = 0; t < 4; ++t)
    for (int e = 0; e < (int)spec.transitions[t].size(); ++e)
      out.push_back({"transition " + std::to_string(t + 1) + " step " +
                         std::to_string(e + 1) + " count +1",
                     t + 1, e, +1, false});
  if (id == TheoremId::thm3 || id == TheoremId::thm4)
    out.push_back({"block padding 147 -> 146", 0, 0, -1, true});
  return out;
}

ReplayReport verify_theorem(TheoremId id, int n, const ReplayOptions& opt) {
  return run_theorem(id, n, opt);
}

ReplayReport verify_theorem1(const ReplayOptions& opt) {
  return run_theorem(TheoremId::thm1, 1, opt);
}

ReplayReport verify_theorem2(int n, const ReplayOptions& opt) {
  return run_theorem(TheoremId::thm2, n, opt);
}

ReplayReport verify_theorem3(const ReplayOptions& opt) {
  return run_theorem(TheoremId::thm3, 1, opt);
}

ReplayReport verify_theorem4(int n, const ReplayOptions& opt) {
  return run_theorem(TheoremId::thm4, n, opt);
}

ReplayReport verify_theorem5(bool negative_variant, const ReplayOptions& opt) {
  return run_theorem(negative_variant ? TheoremId::thm5_ni : TheoremId::thm5_pi,
                     1, opt);
}

std::string report_to_text(const ReplayReport& r) {
  std::string out = "theorem: " + to_string(r.theorem) + "\n";
  out += "mode: " + to_string(r.mode) + "\n";
  out += "n: " + std::to_string(r.n) + "\n";
  for (const auto& a : r.assertions) {
    out += std::string("  ") + (a.passed ? "PASS" : "FAIL") + " [" +
           to_string(a.kind) + "] " + a.label + "\n";
    if (!a.detail.empty()) out += "       " + a.detail + "\n";
  }
  out += std::string("result: ") + (r.verified() ? "VERIFIED" : "FAILED") +
         " (" + std::to_string(r.assertions.size()) + " assertions)\n";
  return out;
}

std::string report_to_json(const ReplayReport& r) {
  nlohmann::json doc;
  doc["theorem"] = to_string(r.theorem);
  doc["mode"] = to_string(r.mode);
  doc["n"] = r.n;
  doc["verified"] = r.verified();
  doc["assertions"] = nlohmann::json::array();
  for (const auto& a : r.assertions)
    doc["assertions"].push_back({{"label", a.label},
                                 {"kind", to_string(a.kind)},
                                 {"passed", a.passed},
                                 {"detail", a.detail},
                                 {"enumerated", a.enumerated}});
  return doc.dump(2) + "\n";
}

}  // namespace votelab
