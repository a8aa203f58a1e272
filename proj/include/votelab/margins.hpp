#pragma once

#include "votelab/profile.hpp"

#include <cstdint>
#include <optional>

// Pairwise margins and the predicates built on them: Condorcet winner and
// loser, the defensible set, margin separation, unique weightedness, and
// widest path strengths.

namespace votelab {

struct MarginMatrix {
  std::vector<Candidate> candidates;  // sorted
  std::vector<long long> m;           // row-major, m[i*n+j] = margin(i over j)

  int size() const { return (int)candidates.size(); }
  long long at(int i, int j) const {
    return m[(size_t)i * candidates.size() + (size_t)j];
  }
  long long& at(int i, int j) {
    return m[(size_t)i * candidates.size() + (size_t)j];
  }
  int index_of(const Candidate& c) const;  // -1 when absent
  long long margin(const Candidate& x, const Candidate& y) const;

  bool operator==(const MarginMatrix&) const = default;
};

struct MarginGraph {
  struct Edge {
    Candidate from, to;
    long long weight;  // > 0
    auto operator<=>(const Edge&) const = default;
  };
  std::vector<Candidate> candidates;
  std::vector<Edge> edges;  // sorted by (from, to)
};

MarginMatrix margin_matrix(const Profile& p);
long long margin(const Profile& p, const Candidate& x, const Candidate& y);
MarginGraph margin_graph(const MarginMatrix& m);
MarginGraph margin_graph(const Profile& p);

// Raw kernels over a row-major margin matrix. Candidate count capped at 31
// so winner sets fit in a uint32_t bitmask.
namespace kernel {

constexpr int max_candidates = 31;

std::uint32_t defensible_mask(const long long* m, int n);
int condorcet_winner_index(const long long* m, int n);  // -1 when none
int condorcet_loser_index(const long long* m, int n);   // -1 when none
bool separation_ok(const long long* m, int n);
bool uniquely_weighted(const long long* m, int n);
// Strength of the widest directed path (length >= 1) between each ordered
// pair, using only positive-margin steps. Writes n*n entries into s.
void widest_paths(const long long* m, int n, long long* s);

}  // namespace kernel

std::optional<Candidate> condorcet_winner(const MarginMatrix& m);
std::optional<Candidate> condorcet_winner(const Profile& p);
std::optional<Candidate> condorcet_loser(const MarginMatrix& m);
std::optional<Candidate> condorcet_loser(const Profile& p);

std::vector<Candidate> defensible_set(const MarginMatrix& m);
std::vector<Candidate> defensible_set(const Profile& p);

// Whenever margin(x,x') > margin(y,y') over ordered pairs of distinct
// candidates, the gap is at least 2.
bool margin_separation_holds(const MarginMatrix& m);
bool margin_separation_holds(const Profile& p);

// All margins over ordered pairs of distinct candidates are pairwise
// distinct.
bool uniquely_weighted(const MarginMatrix& m);
bool uniquely_weighted(const Profile& p);

long long widest_path_strength(const MarginMatrix& m, const Candidate& x,
                               const Candidate& y);

// Edge-list format. Optional "candidates: ..." header, then "x y weight"
// lines. Without a header the candidate set is the union of endpoint labels.
// Negative weights are allowed on input and stored antisymmetrically.
MarginMatrix parse_edge_list(const std::string& text);
std::string edge_list_to_text(const MarginMatrix& m);  // positive edges only
std::string margins_to_json(const MarginMatrix& m);

}  // namespace votelab
