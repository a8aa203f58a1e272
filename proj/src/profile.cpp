#include "votelab/profile.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace votelab {

ParseError::ParseError(int line_, const std::string& what_)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_
                                   : what_),
      line(line_) {}

static void validate_tiers(const std::vector<std::vector<Candidate>>& tiers) {
  if (tiers.empty()) throw DomainError("ranking has no tiers");
  std::vector<Candidate> seen;
  for (const auto& tier : tiers) {
    if (tier.empty()) throw DomainError("ranking has an empty tier");
    for (const auto& c : tier) {
      if (c.empty()) throw DomainError("ranking has an empty candidate label");
      seen.push_back(c);
    }
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw DomainError("ranking lists a candidate twice");
}

Ranking::Ranking(std::vector<std::vector<Candidate>> raw_tiers)
    : tiers(std::move(raw_tiers)) {
  validate_tiers(tiers);
  for (auto& tier : tiers) std::sort(tier.begin(), tier.end());
}

Ranking Ranking::linear(std::string_view order) {
  std::vector<std::vector<Candidate>> tiers;
  tiers.reserve(order.size());
  for (char ch : order) tiers.push_back({std::string(1, ch)});
  return Ranking(std::move(tiers));
}

bool Ranking::is_linear() const {
  return std::all_of(tiers.begin(), tiers.end(),
                     [](const auto& t) { return t.size() == 1; });
}

int Ranking::num_candidates() const {
  int total = 0;
  for (const auto& t : tiers) total += (int)t.size();
  return total;
}

std::vector<Candidate> Ranking::candidates() const {
  std::vector<Candidate> out;
  for (const auto& t : tiers) out.insert(out.end(), t.begin(), t.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Ranking::contains(const Candidate& c) const { return tier_of(c) >= 0; }

int Ranking::tier_of(const Candidate& c) const {
  for (int i = 0; i < (int)tiers.size(); ++i)
    if (std::binary_search(tiers[i].begin(), tiers[i].end(), c)) return i;
  return -1;
}

Ranking Ranking::reversed() const {
  Ranking out;
  out.tiers.assign(tiers.rbegin(), tiers.rend());
  return out;
}

std::optional<Candidate> Ranking::top() const {
  if (!tiers.empty() && tiers.front().size() == 1) return tiers.front()[0];
  return std::nullopt;
}

std::optional<Candidate> Ranking::bottom() const {
  if (!tiers.empty() && tiers.back().size() == 1) return tiers.back()[0];
  return std::nullopt;
}

static std::string join(const std::vector<Candidate>& items,
                        const char* sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string Ranking::to_string() const {
  std::string out;
  for (size_t i = 0; i < tiers.size(); ++i) {
    if (i) out += " | ";
    out += join(tiers[i], ",");
  }
  return out;
}

std::string Ranking::compact() const {
  std::string out;
  for (size_t i = 0; i < tiers.size(); ++i) {
    if (i) out += ">";
    out += join(tiers[i], "=");
  }
  return out;
}

Ranking reverse_ranking(const Ranking& r) { return r.reversed(); }

Ranking complete_ranking(const Ranking& listed,
                         const std::vector<Candidate>& all) {
  std::vector<Candidate> rest;
  for (const auto& c : all)
    if (!listed.contains(c)) rest.push_back(c);
  auto tiers = listed.tiers;
  if (!rest.empty()) tiers.push_back(std::move(rest));
  return Ranking(std::move(tiers));
}

Profile Profile::make(std::vector<Candidate> candidates,
                      std::vector<Ballot> ballots) {
  if (candidates.empty()) throw DomainError("profile has no candidates");
  std::sort(candidates.begin(), candidates.end());
  if (std::adjacent_find(candidates.begin(), candidates.end()) !=
      candidates.end())
    throw DomainError("duplicate candidate label");
  for (const auto& c : candidates)
    if (c.empty()) throw DomainError("empty candidate label");

  std::map<Ranking, long long> merged;
  for (auto& b : ballots) {
    if (b.count < 0) throw DomainError("negative ballot count");
    if (b.count == 0) continue;
    if (b.ranking.candidates() != candidates)
      throw DomainError("ballot ranking does not cover the candidate set: " +
                        b.ranking.compact());
    merged[b.ranking] += b.count;
  }

  Profile p;
  p.candidates = std::move(candidates);
  for (auto& [r, c] : merged) p.ballots.push_back({r, c});
  if (p.total_voters() < 1) throw DomainError("profile has no voters");
  return p;
}

long long Profile::total_voters() const {
  long long total = 0;
  for (const auto& b : ballots) total += b.count;
  return total;
}

long long Profile::count_of(const Ranking& r) const {
  for (const auto& b : ballots)
    if (b.ranking == r) return b.count;
  return 0;
}

Profile add_profiles(const Profile& p, const Profile& q) {
  if (p.candidates != q.candidates)
    throw DomainError("profiles have different candidate sets");
  auto ballots = p.ballots;
  ballots.insert(ballots.end(), q.ballots.begin(), q.ballots.end());
  return Profile::make(p.candidates, std::move(ballots));
}

Profile add_ballot(const Profile& p, const Ranking& r, long long count) {
  if (count == 0) return p;
  auto ballots = p.ballots;
  ballots.push_back({r, count});
  return Profile::make(p.candidates, std::move(ballots));
}

Profile remove_ballots(const Profile& p, const Ranking& r, long long count) {
  if (count < 0) throw DomainError("negative removal count");
  if (count == 0) return p;
  auto ballots = p.ballots;
  bool found = false;
  for (auto& b : ballots) {
    if (b.ranking == r) {
      found = true;
      if (b.count < count)
        throw DomainError("cannot remove " + std::to_string(count) +
                          " ballots of " + r.compact() + ": only " +
                          std::to_string(b.count) + " present");
      b.count -= count;
      break;
    }
  }
  if (!found)
    throw DomainError("cannot remove ballots of " + r.compact() +
                      ": none present");
  return Profile::make(p.candidates, std::move(ballots));
}

Profile scale_profile(const Profile& p, long long n) {
  if (n < 1) throw DomainError("scale factor must be positive");
  auto ballots = p.ballots;
  for (auto& b : ballots) b.count *= n;
  return Profile::make(p.candidates, std::move(ballots));
}

Profile remove_candidate(const Profile& p, const Candidate& c) {
  if (std::find(p.candidates.begin(), p.candidates.end(), c) ==
      p.candidates.end())
    throw DomainError("no such candidate: " + c);
  if (p.candidates.size() < 2)
    throw DomainError("cannot remove the last candidate");
  std::vector<Candidate> rest;
  for (const auto& x : p.candidates)
    if (x != c) rest.push_back(x);
  std::vector<Ballot> ballots;
  for (const auto& b : p.ballots) {
    std::vector<std::vector<Candidate>> tiers;
    for (const auto& tier : b.ranking.tiers) {
      std::vector<Candidate> t;
      for (const auto& x : tier)
        if (x != c) t.push_back(x);
      if (!t.empty()) tiers.push_back(std::move(t));
    }
    ballots.push_back({Ranking(std::move(tiers)), b.count});
  }
  return Profile::make(std::move(rest), std::move(ballots));
}

std::vector<Ranking> enumerate_linear_orders(
    const std::vector<Candidate>& candidates) {
  auto sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("duplicate candidate label");
  if (sorted.empty()) throw DomainError("no candidates");
  std::vector<Ranking> out;
  do {
    std::vector<std::vector<Candidate>> tiers;
    tiers.reserve(sorted.size());
    for (const auto& c : sorted) tiers.push_back({c});
    out.push_back(Ranking(std::move(tiers)));
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return out;
}

// Ordered set partitions: pick each nonempty subset of the remaining
// candidates as the next tier.
static void weak_orders_rec(const std::vector<Candidate>& pool,
                            std::vector<std::vector<Candidate>>& tiers,
                            std::vector<Ranking>& out) {
  if (pool.empty()) {
    out.push_back(Ranking(tiers));
    return;
  }
  int k = (int)pool.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<Candidate> tier, rest;
    for (int i = 0; i < k; ++i)
      ((mask >> i) & 1 ? tier : rest).push_back(pool[i]);
    tiers.push_back(std::move(tier));
    weak_orders_rec(rest, tiers, out);
    tiers.pop_back();
  }
}

std::vector<Ranking> enumerate_weak_orders(
    const std::vector<Candidate>& candidates) {
  auto sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("duplicate candidate label");
  if (sorted.empty()) throw DomainError("no candidates");
  if (sorted.size() > 12) throw DomainError("too many candidates to enumerate");
  std::vector<Ranking> out;
  std::vector<std::vector<Candidate>> tiers;
  weak_orders_rec(sorted, tiers, out);
  std::sort(out.begin(), out.end());
  return out;
}

Profile block_of_all_linear_orders(const std::vector<Candidate>& candidates,
                                   long long copies) {
  if (copies < 1) throw DomainError("block copy count must be positive");
  std::vector<Ballot> ballots;
  for (auto& r : enumerate_linear_orders(candidates))
    ballots.push_back({std::move(r), copies});
  return Profile::make(candidates, std::move(ballots));
}

static std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

static std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Candidate> parse_candidate_list(const std::string& csv, int line) {
  std::vector<Candidate> out;
  for (const auto& piece : split(csv, ',')) {
    auto name = trim(piece);
    if (name.empty()) throw ParseError(line, "empty candidate name");
    out.push_back(name);
  }
  return out;
}

Ranking parse_ranking_text(const std::string& tier_spec, int line) {
  std::vector<std::vector<Candidate>> tiers;
  for (const auto& tier_piece : split(tier_spec, '|')) {
    std::vector<Candidate> tier;
    for (const auto& piece : split(tier_piece, ',')) {
      auto name = trim(piece);
      if (name.empty()) throw ParseError(line, "empty candidate name in tier");
      tier.push_back(name);
    }
    tiers.push_back(std::move(tier));
  }
  try {
    return Ranking(std::move(tiers));
  } catch (const DomainError& e) {
    throw ParseError(line, e.what());
  }
}

Profile parse_profile_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  std::vector<Candidate> candidates;
  std::vector<Ballot> ballots;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      if (line.rfind("candidates:", 0) != 0)
        throw ParseError(line_no, "expected 'candidates:' header");
      candidates = parse_candidate_list(line.substr(11), line_no);
      have_header = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(line_no, "expected 'COUNT: ranking'");
    auto count_str = trim(line.substr(0, colon));
    long long count = 0;
    try {
      size_t used = 0;
      count = std::stoll(count_str, &used);
      if (used != count_str.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad ballot count '" + count_str + "'");
    }
    if (count < 0) throw ParseError(line_no, "negative ballot count");
    auto ranking = parse_ranking_text(line.substr(colon + 1), line_no);
    auto listed = candidates;
    std::sort(listed.begin(), listed.end());
    if (ranking.candidates() != listed)
      throw ParseError(line_no,
                       "ballot must rank exactly the listed candidates");
    ballots.push_back({std::move(ranking), count});
  }
  if (!have_header) throw ParseError(0, "missing 'candidates:' header");
  try {
    return Profile::make(std::move(candidates), std::move(ballots));
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

std::string profile_to_text(const Profile& p) {
  std::string out = "candidates: " + join(p.candidates, ",") + "\n";
  for (const auto& b : p.ballots)
    out += std::to_string(b.count) + ": " + b.ranking.to_string() + "\n";
  return out;
}

Profile parse_profile_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad JSON: ") + e.what());
  }
  try {
    std::vector<Candidate> candidates =
        doc.at("candidates").get<std::vector<Candidate>>();
    std::vector<Ballot> ballots;
    for (const auto& item : doc.at("ballots")) {
      long long count = item.at("count").get<long long>();
      auto tiers =
          item.at("tiers").get<std::vector<std::vector<Candidate>>>();
      ballots.push_back({Ranking(std::move(tiers)), count});
    }
    return Profile::make(std::move(candidates), std::move(ballots));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad profile document: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

std::string profile_to_json(const Profile& p) {
  nlohmann::json doc;
  doc["candidates"] = p.candidates;
  doc["ballots"] = nlohmann::json::array();
  for (const auto& b : p.ballots)
    doc["ballots"].push_back({{"count", b.count}, {"tiers", b.ranking.tiers}});
  return doc.dump(2) + "\n";
}

Profile parse_profile(const std::string& text) {
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
    if (ch == '{') return parse_profile_json(text);
    break;
  }
  return parse_profile_text(text);
}

}  // namespace votelab
