// Command-line front end: election computations, axiom checks, counterexample
// search, margin synthesis, and replay of the five-stage constructions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "votelab/replay.hpp"
#include "votelab/synth.hpp"

namespace {

using namespace votelab;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Accepts both "a | b, c" and "a>b=c".
Ranking parse_ranking_arg(std::string spec) {
  for (char& c : spec) {
    if (c == '>') c = '|';
    if (c == '=') c = ',';
  }
  return parse_ranking_text(spec, 0);
}

std::string set_text(const std::vector<Candidate>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "}";
}

MethodId method_arg(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw DomainError("unknown method '" + name + "'");
  return *m;
}

AxiomId axiom_arg(const std::string& name) {
  auto a = parse_axiom(name);
  if (!a) throw DomainError("unknown axiom '" + name + "'");
  return *a;
}

BallotDomain domain_arg(const std::string& name) {
  auto d = parse_domain(name);
  if (!d) throw DomainError("unknown ballot domain '" + name + "'");
  return *d;
}

struct GlobalOpts {
  std::string format = "text";
  int jobs = 0;
  bool structured() const { return format == "structured"; }
};

nlohmann::json witness_json(const ViolationWitness& w) {
  nlohmann::json j;
  j["method"] = to_string(w.method);
  j["axiom"] = to_string(w.axiom);
  j["text"] = witness_to_text(w);
  return j;
}

int cmd_verify(const GlobalOpts& g, const std::string& theorem_name, int n,
               const std::string& mode_name) {
  ReplayOptions opt;
  opt.jobs = g.jobs;
  std::vector<ReplayReport> reports;
  if (theorem_name.empty()) {
    // Full default suite: every theorem in both ballot domains, the scaled
    // theorems over small n (the largest weak-domain case is left out).
    for (auto mode : {BallotDomain::linear, BallotDomain::weak}) {
      opt.mode = mode;
      for (auto id : {TheoremId::thm1, TheoremId::thm3, TheoremId::thm5_pi,
                      TheoremId::thm5_ni})
        reports.push_back(verify_theorem(id, 1, opt));
      int top = mode == BallotDomain::linear ? 3 : 2;
      for (auto id : {TheoremId::thm2, TheoremId::thm4})
        for (int k = 1; k <= top; ++k)
          reports.push_back(verify_theorem(id, k, opt));
    }
  } else {
    auto id = parse_theorem(theorem_name);
    if (!id) throw DomainError("unknown theorem '" + theorem_name + "'");
    opt.mode = domain_arg(mode_name);
    int use_n = n > 0 ? n : (theorem_takes_n(*id) ? 2 : 1);
    reports.push_back(verify_theorem(*id, use_n, opt));
  }
  bool all_ok = true;
  if (g.structured()) {
    std::string out = "[";
    for (size_t i = 0; i < reports.size(); ++i) {
      if (i) out += ",";
      std::string one = report_to_json(reports[i]);
      while (!one.empty() && one.back() == '\n') one.pop_back();
      out += "\n" + one;
      all_ok = all_ok && reports[i].verified();
    }
    out += "\n]\n";
    std::cout << out;
  } else {
    for (const auto& r : reports) {
      std::cout << report_to_text(r) << "\n";
      all_ok = all_ok && r.verified();
    }
    std::cout << (all_ok ? "all replays verified" : "some replays FAILED")
              << " (" << reports.size() << " report"
              << (reports.size() == 1 ? "" : "s") << ")\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_margins(const GlobalOpts& g, const std::string& file) {
  auto p = parse_profile(read_file(file));
  auto m = margin_matrix(p);
  if (g.structured()) std::cout << margins_to_json(m);
  else std::cout << edge_list_to_text(m);
  return 0;
}

int cmd_defensible(const GlobalOpts& g, const std::string& file) {
  auto p = parse_profile(read_file(file));
  auto m = margin_matrix(p);
  auto d = defensible_set(m);
  auto cw = condorcet_winner(m);
  auto cl = condorcet_loser(m);
  bool sep = margin_separation_holds(m);
  bool uw = uniquely_weighted(m);
  if (g.structured()) {
    nlohmann::json j;
    j["defensible"] = d;
    j["condorcet_winner"] = cw ? nlohmann::json(*cw) : nlohmann::json();
    j["condorcet_loser"] = cl ? nlohmann::json(*cl) : nlohmann::json();
    j["separated"] = sep;
    j["uniquely_weighted"] = uw;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "defensible: " << set_text(d) << "\n";
    std::cout << "condorcet-winner: " << (cw ? *cw : "(none)") << "\n";
    std::cout << "condorcet-loser: " << (cl ? *cl : "(none)") << "\n";
    std::cout << "separated: " << (sep ? "yes" : "no") << "\n";
    std::cout << "uniquely-weighted: " << (uw ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_winners(const GlobalOpts& g, const std::string& method_name,
                const std::string& file) {
  auto id = method_arg(method_name);
  auto p = parse_profile(read_file(file));
  auto w = evaluate_method(id, p);
  if (g.structured()) {
    nlohmann::json j;
    j["method"] = to_string(id);
    j["winners"] = w.winners;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method: " << to_string(id) << "\n";
    std::cout << "winners: " << set_text(w.winners) << "\n";
  }
  return 0;
}

int cmd_check_axiom(const GlobalOpts& g, const std::string& method_name,
                    const std::string& axiom_name, const std::string& file,
                    const std::string& added_spec,
                    const std::string& candidate,
                    const std::string& clones_csv, const std::string& removed,
                    const std::string& mode_name, int n, int bound) {
  auto f = method_arg(method_name);
  auto a = axiom_arg(axiom_name);
  auto p = parse_profile(read_file(file));
  auto mode = domain_arg(mode_name);

  auto need = [&](bool have, const std::string& what) {
    if (!have)
      throw DomainError(to_string(a) + " needs " + what);
  };

  CheckResult r;
  switch (a) {
    case AxiomId::condorcet_winner:
      r = check_condorcet_winner(f, p);
      break;
    case AxiomId::condorcet_loser:
      r = check_condorcet_loser(f, p);
      break;
    case AxiomId::positive_involvement:
      need(!added_spec.empty(), "--added RANKING");
      r = check_positive_involvement(f, p, parse_ranking_arg(added_spec));
      break;
    case AxiomId::negative_involvement:
      need(!added_spec.empty(), "--added RANKING");
      r = check_negative_involvement(f, p, parse_ranking_arg(added_spec));
      break;
    case AxiomId::resolvability:
      r = check_resolvability(f, p, mode);
      break;
    case AxiomId::n_resolvability:
      r = check_n_resolvability(f, p, n, mode, bound);
      break;
    case AxiomId::quasi_resoluteness:
      r = check_quasi_resoluteness(f, p);
      break;
    case AxiomId::strict_positive_involvement:
      need(!added_spec.empty(), "--added RANKING");
      r = check_strict_positive_involvement(f, p,
                                            parse_ranking_arg(added_spec));
      break;
    case AxiomId::independence_of_clones: {
      need(!clones_csv.empty(), "--clones LIST");
      need(!removed.empty(), "--removed CANDIDATE");
      auto clones = parse_candidate_list(clones_csv, 0);
      r = check_independence_of_clones(f, p, removed, clones);
      break;
    }
    case AxiomId::block_preservation:
      r = check_block_preservation(f, p);
      break;
    case AxiomId::positive_negative_involvement:
      need(!added_spec.empty(), "--added RANKING");
      r = check_positive_negative_involvement(f, p,
                                              parse_ranking_arg(added_spec));
      break;
    case AxiomId::bullet_vote_positive_involvement:
      need(!candidate.empty(), "--candidate NAME");
      r = check_bullet_vote_positive_involvement(f, p, candidate);
      break;
  }

  if (g.structured()) {
    nlohmann::json j;
    j["method"] = to_string(f);
    j["axiom"] = to_string(a);
    j["passed"] = r.passed;
    j["vacuous"] = r.vacuous;
    j["note"] = r.note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method: " << to_string(f) << "\n";
    std::cout << "axiom: " << to_string(a) << "\n";
    std::cout << "passed: "
              << (r.passed ? (r.vacuous ? "yes (vacuous)" : "yes") : "NO")
              << "\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  }
  return r.passed ? 0 : 1;
}

int cmd_replay(const GlobalOpts& g, const std::string& file) {
  auto w = parse_witness(read_file(file));
  auto r = replay_witness(w);
  bool reproduced = !r.passed;
  if (g.structured()) {
    nlohmann::json j = witness_json(w);
    j["reproduced"] = reproduced;
    j["note"] = r.note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method: " << to_string(w.method) << "\n";
    std::cout << "axiom: " << to_string(w.axiom) << "\n";
    std::cout << "violation reproduced: " << (reproduced ? "yes" : "NO")
              << "\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  }
  return reproduced ? 0 : 1;
}

int cmd_hunt(const GlobalOpts& g, const std::string& method_name,
             const std::string& axiom_name, HuntOptions opt,
             const std::string& strategy_name,
             const std::string& domain_name) {
  auto f = method_arg(method_name);
  auto a = axiom_arg(axiom_name);
  auto s = parse_strategy(strategy_name);
  if (!s) throw DomainError("unknown strategy '" + strategy_name + "'");
  opt.strategy = *s;
  opt.domain = domain_arg(domain_name);
  auto r = hunt_violations(f, a, opt);
  if (g.structured()) {
    nlohmann::json j;
    j["found"] = r.witness.has_value();
    j["instances"] = r.instances;
    j["skipped"] = r.skipped;
    j["space_exhausted"] = r.space_exhausted;
    j["witness"] =
        r.witness ? nlohmann::json(witness_to_text(*r.witness))
                  : nlohmann::json();
    std::cout << j.dump(2) << "\n";
  } else {
    if (r.witness) {
      std::cout << witness_to_text(*r.witness);
      std::cout << "# instances examined: " << r.instances << "\n";
      if (r.skipped)
        std::cout << "# skipped (tie explosion): " << r.skipped << "\n";
    } else {
      std::cout << "no violation found (instances: " << r.instances
                << ", skipped: " << r.skipped << ", exhausted: "
                << (r.space_exhausted ? "yes" : "no") << ")\n";
    }
  }
  return r.witness ? 0 : 1;
}

int cmd_sweep(const GlobalOpts& g, const std::string& method_name,
              const std::string& axiom_name, SweepOptions opt,
              const std::string& domain_name) {
  auto f = method_arg(method_name);
  auto a = axiom_arg(axiom_name);
  opt.domain = domain_arg(domain_name);
  auto r = sweep_axiom(f, a, opt);
  if (g.structured()) {
    nlohmann::json j;
    j["instances"] = r.instances;
    j["violations"] = r.violations;
    j["vacuous"] = r.vacuous;
    j["skipped"] = r.skipped;
    j["seed"] = r.seed;
    j["first_witness"] =
        r.first ? nlohmann::json(witness_to_text(*r.first)) : nlohmann::json();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method: " << to_string(f) << "\n";
    std::cout << "axiom: " << to_string(a) << "\n";
    std::cout << "instances: " << r.instances << "\n";
    std::cout << "violations: " << r.violations << "\n";
    std::cout << "vacuous: " << r.vacuous << "\n";
    std::cout << "skipped: " << r.skipped << "\n";
    std::cout << "seed: " << r.seed << "\n";
    if (r.first) std::cout << "\n" << witness_to_text(*r.first);
  }
  return r.violations == 0 ? 0 : 1;
}

std::vector<Ranking> parse_pool_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::vector<Ranking> pool;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("candidates:", 0) == 0) continue;
    for (char& c : line) {
      if (c == '>') c = '|';
      if (c == '=') c = ',';
    }
    pool.push_back(parse_ranking_text(line, line_no));
  }
  return pool;
}

int cmd_synthesize(const GlobalOpts& g, const std::string& target_file,
                   const std::string& pool_file, long long cap,
                   unsigned long long node_budget) {
  auto target = parse_edge_list(read_file(target_file));
  validate_target(target);
  Profile out;
  bool optimal = false;
  unsigned long long nodes = 0;
  if (pool_file.empty()) {
    out = mcgarvey_debord_realize(target);
    optimal = false;
  } else {
    MinimizeOptions opt;
    opt.voter_cap = cap;
    opt.node_budget = node_budget;
    auto r = minimize_profile(target, parse_pool_file(read_file(pool_file)),
                              opt);
    out = r.profile;
    optimal = r.optimal;
    nodes = r.nodes;
  }
  if (g.structured()) {
    nlohmann::json j = nlohmann::json::parse(profile_to_json(out));
    j["total_voters"] = out.total_voters();
    j["optimal"] = optimal;
    j["nodes"] = nodes;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << profile_to_text(out);
    std::cout << "# total voters: " << out.total_voters() << "\n";
    if (!pool_file.empty()) {
      std::cout << "# optimal: " << (optimal ? "yes" : "no") << "\n";
      std::cout << "# nodes explored: " << nodes << "\n";
    }
  }
  return 0;
}

int cmd_enumerate(const GlobalOpts& g, int k, const std::string& kind_name) {
  if (k < 1 || k > 12) throw DomainError("candidate count must be 1..12");
  auto kind = domain_arg(kind_name);
  std::vector<Candidate> cands;
  for (int i = 0; i < k; ++i) cands.push_back(std::string(1, (char)('a' + i)));
  auto rankings = kind == BallotDomain::linear
                      ? enumerate_linear_orders(cands)
                      : enumerate_weak_orders(cands);
  if (g.structured()) {
    nlohmann::json j;
    j["candidates"] = cands;
    j["kind"] = to_string(kind);
    j["count"] = rankings.size();
    j["rankings"] = nlohmann::json::array();
    for (const auto& r : rankings) j["rankings"].push_back(r.compact());
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "candidates: ";
    for (size_t i = 0; i < cands.size(); ++i)
      std::cout << (i ? "," : "") << cands[i];
    std::cout << "\n";
    for (const auto& r : rankings) std::cout << r.to_string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preferential-voting toolbox"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("--jobs", g.jobs,
                 "worker threads for quantified replays (0 = VOTELAB_JOBS)");

  std::string theorem_name, mode_name = "linear";
  int verify_n = 0;
  auto* verify = app.add_subcommand("verify",
                                    "replay the five-stage constructions");
  verify->add_option("--theorem", theorem_name,
                     "thm1 | thm2 | thm3 | thm4 | thm5-pi | thm5-ni");
  verify->add_option("--n", verify_n, "scale for the scaled theorems");
  verify->add_option("--mode", mode_name, "ballot domain for the deltas")
      ->check(CLI::IsMember({"linear", "weak"}));

  std::string in_file;
  auto* margins_cmd = app.add_subcommand("margins",
                                         "pairwise margins of a profile");
  margins_cmd->add_option("file", in_file, "profile file")->required();

  std::string def_file;
  auto* defensible_cmd =
      app.add_subcommand("defensible", "defensible set and margin facts");
  defensible_cmd->add_option("file", def_file, "profile file")->required();

  std::string win_method, win_file;
  auto* winners_cmd = app.add_subcommand("winners", "run a voting method");
  winners_cmd->add_option("--method", win_method, "voting method")->required();
  winners_cmd->add_option("file", win_file, "profile file")->required();

  std::string ca_method, ca_axiom, ca_file, ca_added, ca_candidate, ca_clones,
      ca_removed, ca_mode = "linear";
  int ca_n = 1, ca_bound = 3;
  auto* check_cmd =
      app.add_subcommand("check-axiom", "check one axiom instance");
  check_cmd->add_option("--method", ca_method, "voting method")->required();
  check_cmd->add_option("--axiom", ca_axiom, "axiom name")->required();
  check_cmd->add_option("file", ca_file, "profile file")->required();
  check_cmd->add_option("--added", ca_added,
                        "added ballot, e.g. 'a>b>c' or 'a | b,c'");
  check_cmd->add_option("--candidate", ca_candidate,
                        "focus candidate (bullet-vote axiom)");
  check_cmd->add_option("--clones", ca_clones, "clone set, comma-separated");
  check_cmd->add_option("--removed", ca_removed, "clone to remove");
  check_cmd->add_option("--mode", ca_mode, "ballot domain")
      ->check(CLI::IsMember({"linear", "weak"}));
  check_cmd->add_option("--n", ca_n, "added voters for n-resolvability");
  check_cmd->add_option("--bound", ca_bound, "cap on n-resolvability search");

  std::string rp_file;
  auto* replay_cmd =
      app.add_subcommand("replay", "re-run a stored violation witness");
  replay_cmd->add_option("file", rp_file, "witness file")->required();

  std::string h_method, h_axiom, h_strategy = "profiles", h_domain = "linear";
  HuntOptions h_opt;
  auto* hunt_cmd =
      app.add_subcommand("hunt", "exhaustive search for a violation");
  hunt_cmd->add_option("--method", h_method, "voting method")->required();
  hunt_cmd->add_option("--axiom", h_axiom, "axiom name")->required();
  hunt_cmd->add_option("--max-candidates", h_opt.max_candidates,
                       "largest candidate count")
      ->capture_default_str();
  hunt_cmd->add_option("--max-voters", h_opt.max_voters,
                       "largest voter count (profiles strategy)")
      ->capture_default_str();
  hunt_cmd->add_option("--strategy", h_strategy, "profiles | graphs")
      ->check(CLI::IsMember({"profiles", "graphs"}))
      ->capture_default_str();
  hunt_cmd->add_option("--domain", h_domain, "ballot domain")
      ->check(CLI::IsMember({"linear", "weak"}))
      ->capture_default_str();
  hunt_cmd->add_option("--max-weight", h_opt.max_weight,
                       "largest margin (graphs strategy)")
      ->capture_default_str();
  hunt_cmd->add_option("--instance-cap", h_opt.instance_cap,
                       "stop after this many instances (0 = unbounded)");
  hunt_cmd->add_option("--n", h_opt.n, "n for n-resolvability");

  std::string s_method, s_axiom, s_domain = "linear";
  SweepOptions s_opt;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "randomized axiom sweep (seeded)");
  sweep_cmd->add_option("--method", s_method, "voting method")->required();
  sweep_cmd->add_option("--axiom", s_axiom, "axiom name")->required();
  sweep_cmd->add_option("--instances", s_opt.instances, "instance count")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", s_opt.seed, "RNG seed")
      ->capture_default_str();
  sweep_cmd->add_option("--min-candidates", s_opt.min_candidates, "")
      ->capture_default_str();
  sweep_cmd->add_option("--max-candidates", s_opt.max_candidates, "")
      ->capture_default_str();
  sweep_cmd->add_option("--max-voters", s_opt.max_voters, "")
      ->capture_default_str();
  sweep_cmd->add_option("--domain", s_domain, "ballot domain")
      ->check(CLI::IsMember({"linear", "weak"}))
      ->capture_default_str();
  sweep_cmd->add_option("--n", s_opt.n, "n for n-resolvability")
      ->capture_default_str();

  std::string syn_target, syn_pool;
  long long syn_cap = 500;
  unsigned long long syn_budget = 50'000'000ull;
  auto* syn_cmd = app.add_subcommand(
      "synthesize", "realize a target margin matrix with ballots");
  syn_cmd->add_option("--target", syn_target, "edge-list file")->required();
  syn_cmd->add_option("--pool", syn_pool,
                      "ranking pool file (minimizes voters over the pool)");
  syn_cmd->add_option("--cap", syn_cap, "voter cap for minimization")
      ->capture_default_str();
  syn_cmd->add_option("--node-budget", syn_budget,
                      "search node budget for minimization")
      ->capture_default_str();

  int enum_k = 3;
  std::string enum_kind = "linear";
  auto* enum_cmd =
      app.add_subcommand("enumerate", "list all rankings of k candidates");
  enum_cmd->add_option("--candidates", enum_k, "candidate count")
      ->capture_default_str();
  enum_cmd->add_option("--kind", enum_kind, "linear | weak")
      ->check(CLI::IsMember({"linear", "weak"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(g, theorem_name, verify_n, mode_name);
    if (*margins_cmd) return cmd_margins(g, in_file);
    if (*defensible_cmd) return cmd_defensible(g, def_file);
    if (*winners_cmd) return cmd_winners(g, win_method, win_file);
    if (*check_cmd)
      return cmd_check_axiom(g, ca_method, ca_axiom, ca_file, ca_added,
                             ca_candidate, ca_clones, ca_removed, ca_mode,
                             ca_n, ca_bound);
    if (*replay_cmd) return cmd_replay(g, rp_file);
    if (*hunt_cmd)
      return cmd_hunt(g, h_method, h_axiom, h_opt, h_strategy, h_domain);
    if (*sweep_cmd) return cmd_sweep(g, s_method, s_axiom, s_opt, s_domain);
    if (*syn_cmd)
      return cmd_synthesize(g, syn_target, syn_pool, syn_cap, syn_budget);
    if (*enum_cmd) return cmd_enumerate(g, enum_k, enum_kind);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const TieExplosionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
