#include "votelab/margins.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace votelab {

int MarginMatrix::index_of(const Candidate& c) const {
  auto it = std::lower_bound(candidates.begin(), candidates.end(), c);
  if (it == candidates.end() || *it != c) return -1;
  return (int)(it - candidates.begin());
}

long long MarginMatrix::margin(const Candidate& x, const Candidate& y) const {
  int i = index_of(x), j = index_of(y);
  if (i < 0) throw DomainError("no such candidate: " + x);
  if (j < 0) throw DomainError("no such candidate: " + y);
  return at(i, j);
}

MarginMatrix margin_matrix(const Profile& p) {
  int n = p.num_candidates();
  if (n > kernel::max_candidates)
    throw DomainError("too many candidates for margin computation");
  MarginMatrix out;
  out.candidates = p.candidates;
  out.m.assign((size_t)n * n, 0);
  std::vector<int> tier(n);
  for (const auto& b : p.ballots) {
    for (int t = 0; t < (int)b.ranking.tiers.size(); ++t)
      for (const auto& c : b.ranking.tiers[t]) tier[out.index_of(c)] = t;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (tier[i] < tier[j]) {
          out.at(i, j) += b.count;
          out.at(j, i) -= b.count;
        }
  }
  return out;
}

long long margin(const Profile& p, const Candidate& x, const Candidate& y) {
  return margin_matrix(p).margin(x, y);
}

MarginGraph margin_graph(const MarginMatrix& m) {
  MarginGraph g;
  g.candidates = m.candidates;
  int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m.at(i, j) > 0)
        g.edges.push_back({m.candidates[i], m.candidates[j], m.at(i, j)});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

MarginGraph margin_graph(const Profile& p) {
  return margin_graph(margin_matrix(p));
}

namespace kernel {

std::uint32_t defensible_mask(const long long* m, int n) {
  // col_max[y] = max over all z (including y) of margin(z, y); the z = y
  // term makes the max at least 0.
  long long col_max[max_candidates];
  for (int y = 0; y < n; ++y) {
    long long best = 0;
    for (int z = 0; z < n; ++z) best = std::max(best, m[z * n + y]);
    col_max[y] = best;
  }
  std::uint32_t mask = 0;
  for (int x = 0; x < n; ++x) {
    bool in = true;
    for (int y = 0; y < n && in; ++y)
      if (col_max[y] < m[y * n + x]) in = false;
    if (in) mask |= 1u << x;
  }
  return mask;
}

int condorcet_winner_index(const long long* m, int n) {
  for (int i = 0; i < n; ++i) {
    bool all = true;
    for (int j = 0; j < n && all; ++j)
      if (j != i && m[i * n + j] <= 0) all = false;
    if (all) return i;
  }
  return -1;
}

int condorcet_loser_index(const long long* m, int n) {
  if (n < 2) return -1;
  for (int i = 0; i < n; ++i) {
    bool all = true;
    for (int j = 0; j < n && all; ++j)
      if (j != i && m[i * n + j] >= 0) all = false;
    if (all) return i;
  }
  return -1;
}

bool separation_ok(const long long* m, int n) {
  // Sort all off-diagonal entries; a strict gap of exactly 1 between
  // neighbors is the only way to violate the gap-2 requirement. Opposite
  // entries of one pair cannot differ by 1 (their difference is even).
  long long vals[max_candidates * max_candidates];
  int cnt = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) vals[cnt++] = m[i * n + j];
  std::sort(vals, vals + cnt);
  for (int i = 0; i + 1 < cnt; ++i)
    if (vals[i + 1] - vals[i] == 1) return false;
  return true;
}

bool uniquely_weighted(const long long* m, int n) {
  long long vals[max_candidates * max_candidates];
  int cnt = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) vals[cnt++] = m[i * n + j];
  std::sort(vals, vals + cnt);
  for (int i = 0; i + 1 < cnt; ++i)
    if (vals[i] == vals[i + 1]) return false;
  return true;
}

void widest_paths(const long long* m, int n, long long* s) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s[i * n + j] = (i != j && m[i * n + j] > 0) ? m[i * n + j] : 0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (i == k || s[i * n + k] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        long long via = std::min(s[i * n + k], s[k * n + j]);
        if (via > s[i * n + j]) s[i * n + j] = via;
      }
    }
}

}  // namespace kernel

static std::vector<Candidate> mask_to_set(std::uint32_t mask,
                                          const std::vector<Candidate>& c) {
  std::vector<Candidate> out;
  for (int i = 0; i < (int)c.size(); ++i)
    if ((mask >> i) & 1) out.push_back(c[i]);
  return out;
}

std::optional<Candidate> condorcet_winner(const MarginMatrix& m) {
  int i = kernel::condorcet_winner_index(m.m.data(), m.size());
  if (i < 0) return std::nullopt;
  return m.candidates[i];
}

std::optional<Candidate> condorcet_winner(const Profile& p) {
  return condorcet_winner(margin_matrix(p));
}

std::optional<Candidate> condorcet_loser(const MarginMatrix& m) {
  int i = kernel::condorcet_loser_index(m.m.data(), m.size());
  if (i < 0) return std::nullopt;
  return m.candidates[i];
}

std::optional<Candidate> condorcet_loser(const Profile& p) {
  return condorcet_loser(margin_matrix(p));
}

std::vector<Candidate> defensible_set(const MarginMatrix& m) {
  return mask_to_set(kernel::defensible_mask(m.m.data(), m.size()),
                     m.candidates);
}

std::vector<Candidate> defensible_set(const Profile& p) {
  return defensible_set(margin_matrix(p));
}

bool margin_separation_holds(const MarginMatrix& m) {
  return kernel::separation_ok(m.m.data(), m.size());
}

bool margin_separation_holds(const Profile& p) {
  return margin_separation_holds(margin_matrix(p));
}

bool uniquely_weighted(const MarginMatrix& m) {
  return kernel::uniquely_weighted(m.m.data(), m.size());
}

bool uniquely_weighted(const Profile& p) {
  return uniquely_weighted(margin_matrix(p));
}

long long widest_path_strength(const MarginMatrix& m, const Candidate& x,
                               const Candidate& y) {
  int i = m.index_of(x), j = m.index_of(y);
  if (i < 0) throw DomainError("no such candidate: " + x);
  if (j < 0) throw DomainError("no such candidate: " + y);
  if (i == j) throw DomainError("path endpoints must differ");
  int n = m.size();
  std::vector<long long> s((size_t)n * n);
  kernel::widest_paths(m.m.data(), n, s.data());
  return s[(size_t)i * n + j];
}

static std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

MarginMatrix parse_edge_list(const std::string& text) {
  struct RawEdge {
    Candidate from, to;
    long long w;
    int line;
  };
  std::vector<RawEdge> raw;
  std::vector<Candidate> candidates;
  bool have_header = false;

  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    auto line = trim(raw_line);
    if (line.empty() || line[0] == '#') continue;
    if (!have_header && raw.empty() && line.rfind("candidates:", 0) == 0) {
      candidates = parse_candidate_list(line.substr(11), line_no);
      have_header = true;
      continue;
    }
    std::istringstream fields(line);
    std::string from, to, weight_str;
    if (!(fields >> from >> to >> weight_str))
      throw ParseError(line_no, "expected 'from to weight'");
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing tokens");
    long long w = 0;
    try {
      size_t used = 0;
      w = std::stoll(weight_str, &used);
      if (used != weight_str.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad weight '" + weight_str + "'");
    }
    if (from == to) throw ParseError(line_no, "self edge");
    raw.push_back({from, to, w, line_no});
  }

  if (!have_header) {
    for (const auto& e : raw) {
      candidates.push_back(e.from);
      candidates.push_back(e.to);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
  } else {
    std::sort(candidates.begin(), candidates.end());
    if (std::adjacent_find(candidates.begin(), candidates.end()) !=
        candidates.end())
      throw ParseError(0, "duplicate candidate in header");
  }
  if (candidates.empty()) throw ParseError(0, "no candidates");
  if ((int)candidates.size() > kernel::max_candidates)
    throw ParseError(0, "too many candidates");

  MarginMatrix m;
  m.candidates = candidates;
  int n = m.size();
  m.m.assign((size_t)n * n, 0);
  std::vector<bool> set((size_t)n * n, false);
  for (const auto& e : raw) {
    int i = m.index_of(e.from), j = m.index_of(e.to);
    if (i < 0) throw ParseError(e.line, "unknown candidate '" + e.from + "'");
    if (j < 0) throw ParseError(e.line, "unknown candidate '" + e.to + "'");
    size_t ij = (size_t)i * n + j, ji = (size_t)j * n + i;
    if (set[ij] && m.m[ij] != e.w)
      throw ParseError(e.line, "conflicting weight for " + e.from + " " + e.to);
    m.m[ij] = e.w;
    m.m[ji] = -e.w;
    set[ij] = set[ji] = true;
  }
  return m;
}

std::string edge_list_to_text(const MarginMatrix& m) {
  std::string out = "candidates: ";
  for (size_t i = 0; i < m.candidates.size(); ++i) {
    if (i) out += ",";
    out += m.candidates[i];
  }
  out += "\n";
  for (const auto& e : margin_graph(m).edges)
    out += e.from + " " + e.to + " " + std::to_string(e.weight) + "\n";
  return out;
}

std::string margins_to_json(const MarginMatrix& m) {
  nlohmann::json doc;
  doc["candidates"] = m.candidates;
  int n = m.size();
  auto matrix = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < n; ++j) row.push_back(m.at(i, j));
    matrix.push_back(row);
  }
  doc["matrix"] = matrix;
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : margin_graph(m).edges)
    doc["edges"].push_back(
        {{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
  return doc.dump(2) + "\n";
}

}  // namespace votelab
