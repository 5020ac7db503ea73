#pragma once

// Command-line front end: order, check, verify, pairs and crosscheck. The
// commands live here rather than in the executable so tests can drive them
// in-process through run_cli().

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hallpi/arith.hpp"
#include "hallpi/catalog.hpp"
#include "hallpi/constructions.hpp"
#include "hallpi/criteria.hpp"
#include "hallpi/error.hpp"
#include "hallpi/oracle.hpp"

namespace hallpi::cli {

using nlohmann::ordered_json;

inline constexpr int schema_version = 1;

enum ExitCode : int { Ok = 0, Usage = 1, Undecided = 2, Mismatch = 3 };

enum class Mode { Engine, Oracle, Both, Pairs, Crosscheck };

inline std::string_view to_string(Mode m)
{
  switch (m) {
  case Mode::Engine: return "Engine";
  case Mode::Oracle: return "Oracle";
  case Mode::Both: return "Both";
  case Mode::Pairs: return "Pairs";
  case Mode::Crosscheck: return "Crosscheck";
  }
  return "?";
}

enum class Consistency { Consistent, Mismatch, NotComparable };

inline std::string_view to_string(Consistency c)
{
  switch (c) {
  case Consistency::Consistent: return "Consistent";
  case Consistency::Mismatch: return "Mismatch";
  case Consistency::NotComparable: return "NotComparable";
  }
  return "?";
}

/// Caps, budgets and output settings. Config file values are applied first,
/// command-line flags afterwards.
struct Settings {
  Limits limits;
  unsigned threads = 1;
  std::optional<std::int64_t> budget_ms;
  unsigned pi_size = 4;
  bool json = false;
  std::string format = "text";

  SearchOptions search() const
  {
    SearchOptions o;
    o.threads = threads;
    if (budget_ms)
      o.budget = std::chrono::milliseconds(*budget_ms);
    return o;
  }
};

inline void apply_config_file(Settings &s, std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string v) {
      auto a = v.find_first_not_of(" \t\r");
      auto b = v.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(value, &used);
      if (used != value.size())
        throw std::invalid_argument(value);
    } catch (std::exception const &) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": value of '" + key +
                       "' is not a non-negative integer");
    }
    if (key == "max_degree")
      s.limits.max_degree = v;
    else if (key == "max_enum")
      s.limits.max_enum = v;
    else if (key == "budget_ms")
      s.budget_ms = static_cast<std::int64_t>(v);
    else if (key == "threads")
      s.threads = static_cast<unsigned>(v);
    else if (key == "pi_size")
      s.pi_size = static_cast<unsigned>(v);
    else
      throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

struct CheckRequest {
  std::string command;
  std::optional<GroupDescriptor> descriptor;
  std::optional<PrimeSet> pi;
  Mode mode = Mode::Engine;
  std::optional<std::int64_t> budget_ms;
  unsigned threads = 1;
};

struct PairRow {
  std::uint64_t p = 0, q = 0;
  Verdict engine;
  std::optional<HallCertificate> oracle;
};

struct CheckReport {
  CheckRequest request;
  std::optional<Verdict> engine;
  std::optional<HallCertificate> oracle;
  std::optional<SolvableHallResult> solvable;
  std::vector<PairRow> pairs;
  std::optional<Decision> combined;
  Consistency consistency = Consistency::NotComparable;
  std::map<std::string, double> timings;
};

// ---------------------------------------------------------------- JSON

inline ordered_json big_json(BigInt const &v)
{
  if (v <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(v);
  return v.str();
}

inline ordered_json primes_json(PrimeSet const &s)
{
  ordered_json a = ordered_json::array();
  for (auto p : s)
    a.push_back(p);
  return a;
}

inline ordered_json to_json(Verdict const &v)
{
  ordered_json trace = ordered_json::array();
  for (auto const &f : v.trace) {
    ordered_json b = ordered_json::object();
    for (auto const &[k, val] : f.bindings)
      b[k] = val;
    trace.push_back({{"rule", f.key},
                     {"citation", f.citation},
                     {"outcome", to_string(f.outcome)},
                     {"bindings", b},
                     {"detail", f.detail}});
  }
  ordered_json j{{"decision", to_string(v.decision)},
                 {"solvable_note", to_string(v.solvable_note)},
                 {"conjugacy_note", to_string(v.conjugacy_note)},
                 {"trace", trace}};
  j["unknown_reason"] = v.unknown_reason.empty() ? ordered_json() : ordered_json(v.unknown_reason);
  return j;
}

inline ordered_json to_json(HallCertificate const &c)
{
  ordered_json gens = ordered_json::array();
  for (auto const &g : c.witness_generators)
    gens.push_back(g.to_cycles());
  ordered_json counts = ordered_json::object();
  for (auto const &[r, n] : c.conjugate_counts)
    counts[std::to_string(r)] = n;
  return {{"kind", to_string(c.kind)},
          {"pi", primes_json(c.pi)},
          {"group_order", big_json(c.group_order)},
          {"target_order", big_json(c.target_order)},
          {"witness_order", c.found() ? big_json(c.witness_order) : ordered_json()},
          {"solvable", c.found() ? ordered_json(c.solvable) : ordered_json()},
          {"witness_generators", gens},
          {"fixed_prime", c.fixed_prime},
          {"conjugate_counts", counts},
          {"tuple_space", c.tuple_space},
          {"tuples_examined", c.tuples_examined},
          {"pruned", c.pruned}};
}

inline ordered_json group_json(GroupDescriptor const &d)
{
  auto go = group_order(d);
  return {{"descriptor", render(d)},
          {"order", big_json(go.order.value())},
          {"factorization", go.order.to_string()},
          {"spectrum", primes_json(go.order.primes())}};
}

inline ordered_json to_json(CheckReport const &r)
{
  ordered_json req{{"command", r.request.command}, {"mode", to_string(r.request.mode)}};
  req["descriptor"] = r.request.descriptor ? ordered_json(render(*r.request.descriptor)) : ordered_json();
  req["pi"] = r.request.pi ? primes_json(*r.request.pi) : ordered_json();
  req["budget_ms"] = r.request.budget_ms ? ordered_json(*r.request.budget_ms) : ordered_json();
  req["threads"] = r.request.threads;

  ordered_json pairs = ordered_json::array();
  for (auto const &row : r.pairs) {
    pairs.push_back({{"pair", {row.p, row.q}},
                     {"engine", to_json(row.engine)},
                     {"oracle", row.oracle ? to_json(*row.oracle) : ordered_json()}});
  }
  ordered_json timings = ordered_json::object();
  for (auto const &[k, v] : r.timings)
    timings[k] = v;

  ordered_json j;
  j["schema_version"] = schema_version;
  j["request"] = req;
  j["group"] = r.request.descriptor ? group_json(*r.request.descriptor) : ordered_json();
  j["engine"] = r.engine ? to_json(*r.engine) : ordered_json();
  j["oracle"] = r.oracle ? to_json(*r.oracle) : ordered_json();
  if (r.solvable && r.oracle && r.oracle->found() && !r.oracle->solvable)
    j["oracle"]["solvable_hall"] = to_json(r.solvable->certificate);
  j["pairs"] = pairs;
  j["combined"] = r.combined ? ordered_json(to_string(*r.combined)) : ordered_json();
  j["consistency"] = to_string(r.consistency);
  j["timings"] = timings;
  return j;
}

// ---------------------------------------------------------------- text

inline void print_verdict(std::ostream &out, Verdict const &v, std::string const &indent = "")
{
  out << indent << "verdict: " << to_string(v.decision);
  if (v.decision == Decision::Yes)
    out << " (" << to_string(v.solvable_note) << ", " << to_string(v.conjugacy_note) << ")";
  out << "\n";
  if (!v.unknown_reason.empty())
    out << indent << "reason: " << v.unknown_reason << "\n";
  for (auto const &f : v.trace) {
    out << indent << "  [" << f.key << "] " << to_string(f.outcome) << ": " << f.detail << "\n";
    out << indent << "    cites: " << f.citation << "\n";
    if (!f.bindings.empty()) {
      out << indent << "    with:";
      for (auto const &[k, val] : f.bindings)
        out << " " << k << "=" << val;
      out << "\n";
    }
  }
}

inline void print_certificate(std::ostream &out, HallCertificate const &c,
                              std::string const &indent = "")
{
  out << indent << "oracle: " << to_string(c.kind) << " for pi = {" << c.pi.to_string()
      << "}, target order " << c.target_order << "\n";
  if (c.found()) {
    out << indent << "  witness order " << c.witness_order << ", "
        << (c.solvable ? "solvable" : "not solvable") << "\n";
    out << indent << "  generators:";
    for (auto const &g : c.witness_generators)
      out << " " << g.to_cycles();
    out << "\n";
  }
  if (c.tuple_space > 0)
    out << indent << "  tuples: " << c.tuples_examined << " examined, " << c.pruned
        << " pruned, of " << c.tuple_space << " (fixed Sylow " << c.fixed_prime << ")\n";
}

inline void print_report(std::ostream &out, CheckReport const &r)
{
  if (r.request.descriptor) {
    auto const &d = *r.request.descriptor;
    auto go = group_order(d);
    out << "group: " << render(d) << ", order " << go.order.value() << " = " << go.order.to_string()
        << "\n";
  }
  if (r.request.pi)
    out << "pi: {" << r.request.pi->to_string() << "}\n";
  if (r.engine)
    print_verdict(out, *r.engine);
  if (r.oracle) {
    print_certificate(out, *r.oracle);
    if (r.solvable && r.oracle->found() && !r.oracle->solvable)
      out << "  solvable pi-Hall subgroup: " << (r.solvable->exists ? "exists" : "none") << "\n";
  }
  for (auto const &row : r.pairs) {
    out << "pair {" << row.p << "," << row.q << "}:\n";
    print_verdict(out, row.engine, "  ");
    if (row.oracle)
      print_certificate(out, *row.oracle, "  ");
  }
  if (r.combined)
    out << "combined over pairs: " << to_string(*r.combined) << "\n";
  if (r.request.mode != Mode::Engine && r.request.mode != Mode::Oracle)
    out << "consistency: " << to_string(r.consistency) << "\n";
}

// ---------------------------------------------------------------- commands

inline double elapsed_ms(std::chrono::steady_clock::time_point since)
{
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

inline CheckReport cmd_order(std::string const &desc)
{
  CheckReport r;
  r.request.command = "order";
  r.request.descriptor = parse_descriptor(desc);
  validate(*r.request.descriptor);
  return r;
}

inline CheckReport cmd_check(std::string const &desc, std::string const &pi)
{
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.request.command = "check";
  r.request.descriptor = parse_descriptor(desc);
  r.request.pi = PrimeSet::parse(pi);
  r.engine = decide_solvable_hall(*r.request.descriptor, *r.request.pi);
  r.timings["engine_ms"] = elapsed_ms(t0);
  return r;
}

inline int exit_code(CheckReport const &r)
{
  if (r.consistency == Consistency::Mismatch)
    return Mismatch;
  if (r.request.command == "check")
    return r.engine->decision == Decision::Unknown ? Undecided : Ok;
  if (r.request.command == "pairs")
    return r.combined && *r.combined != Decision::Unknown ? Ok : Undecided;
  return Ok;
}

inline CheckReport cmd_verify(std::string const &desc, std::string const &pi, Settings const &s)
{
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.request.command = "verify";
  r.request.mode = Mode::Oracle;
  r.request.descriptor = parse_descriptor(desc);
  r.request.pi = PrimeSet::parse(pi);
  r.request.budget_ms = s.budget_ms;
  r.request.threads = s.threads;
  HallOracle oracle(build_group(*r.request.descriptor, s.limits));
  r.timings["build_ms"] = elapsed_ms(t0);
  auto t1 = std::chrono::steady_clock::now();
  r.oracle = oracle.search(*r.request.pi, s.search());
  if (r.oracle->found() && !r.oracle->solvable)
    r.solvable = solvable_hall_exists(oracle, *r.request.pi, s.search());
  r.timings["oracle_ms"] = elapsed_ms(t1);
  return r;
}

inline Decision oracle_decision(HallCertificate const &c)
{
  return c.found() ? Decision::Yes : Decision::No;
}

inline CheckReport cmd_pairs(std::string const &desc, std::string const &pi, Settings const &s)
{
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.request.command = "pairs";
  r.request.mode = Mode::Pairs;
  r.request.descriptor = parse_descriptor(desc);
  r.request.pi = PrimeSet::parse(pi);
  r.request.budget_ms = s.budget_ms;
  r.request.threads = s.threads;
  auto const &d = *r.request.descriptor;
  PrimeSet const sigma = r.request.pi->intersect(prime_spectrum(d));
  if (sigma.size() < 2)
    throw ConstraintError("pairs needs at least two primes of pi(S) in pi");

  std::optional<HallOracle> oracle;
  if (is_constructible(d))
    oracle.emplace(build_group(d, s.limits));

  bool any_no = false, all_yes = true, mismatch = false, compared = false;
  for (auto const &pr : sigma.subsets(2, 2)) {
    PairRow row;
    row.p = pr.elements()[0];
    row.q = pr.elements()[1];
    row.engine = decide_pair(d, row.p, row.q);
    Decision effective = row.engine.decision;
    if (oracle) {
      row.oracle = oracle->search(pr, s.search());
      auto truth = oracle_decision(*row.oracle);
      if (row.engine.decision != Decision::Unknown) {
        compared = true;
        mismatch = mismatch || row.engine.decision != truth;
      }
      effective = truth;
    }
    any_no = any_no || effective == Decision::No;
    all_yes = all_yes && effective == Decision::Yes;
    r.pairs.push_back(std::move(row));
  }
  r.combined = any_no ? Decision::No : all_yes ? Decision::Yes : Decision::Unknown;
  r.consistency = mismatch ? Consistency::Mismatch
                  : compared ? Consistency::Consistent
                             : Consistency::NotComparable;
  r.timings["total_ms"] = elapsed_ms(t0);
  return r;
}

// ---------------------------------------------------------------- crosscheck

struct CrossCell {
  std::string descriptor;
  PrimeSet sigma;
  Verdict engine;
  std::optional<Theorem1Report> theorem1;
  std::string status;  // ok, mismatch, violation, contradiction, inconclusive
  std::string note;
};

struct CrossSummary {
  std::string family;
  std::vector<CrossCell> cells;
  std::size_t decided = 0, unknown = 0, mismatches = 0, violations = 0, inconclusive = 0;
  double total_ms = 0;

  int exit_code() const
  {
    if (mismatches || violations)
      return Mismatch;
    if (inconclusive)
      return Undecided;
    return Ok;
  }
};

inline std::pair<std::uint64_t, std::uint64_t> parse_range(std::string const &text)
{
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      auto v = std::stoull(text);
      return {v, v};
    }
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
  } catch (std::exception const &) {
    throw ParseError("bad range '" + text + "', expected A..B");
  }
}

inline std::vector<GroupDescriptor> crosscheck_grid(std::string const &family,
                                                    std::optional<std::string> const &q_range,
                                                    std::optional<std::string> const &n_range)
{
  std::vector<GroupDescriptor> grid;
  if (family == "PSL2") {
    if (!q_range)
      throw ParseError("--family PSL2 needs --q A..B");
    auto [a, b] = parse_range(*q_range);
    for (auto q = a; q <= b; ++q) {
      if (is_prime(q))
        grid.push_back(parse_descriptor("PSL+:2:" + std::to_string(q)));
    }
  } else if (family == "Alt" || family == "Sym") {
    if (!n_range)
      throw ParseError("--family " + family + " needs --n A..B");
    auto [a, b] = parse_range(*n_range);
    for (auto n = a; n <= b; ++n)
      grid.push_back(parse_descriptor(family + ":" + std::to_string(n)));
  } else {
    throw ParseError("unknown crosscheck family '" + family + "' (PSL2, Alt, Sym)");
  }
  if (grid.empty())
    throw ConstraintError("empty crosscheck grid");
  for (auto const &d : grid) {
    if (!is_constructible(d))
      throw NotConstructible(render(d) + " is outside the construction scope");
  }
  return grid;
}

inline CrossSummary run_crosscheck(std::string const &family, std::vector<GroupDescriptor> const &grid,
                                   Settings const &s)
{
  auto t0 = std::chrono::steady_clock::now();
  CrossSummary sum;
  sum.family = family;
  for (auto const &d : grid) {
    HallOracle oracle(build_group(d, s.limits));
    std::map<PrimeSet, HallCertificate> pair_cache;
    auto const spectrum = prime_spectrum(d);
    for (auto const &sigma : spectrum.subsets(2, std::max(2u, s.pi_size))) {
      CrossCell cell;
      cell.descriptor = render(d);
      cell.sigma = sigma;
      cell.engine = decide_solvable_hall(d, sigma);
      cell.status = "ok";
      if (sigma.size() >= 3) {
        try {
          consistency_check(d, sigma);
        } catch (ContradictionError const &e) {
          cell.status = "contradiction";
          cell.note = e.what();
        }
      }
      try {
        cell.theorem1 = theorem1_check(oracle, sigma, s.search(), &pair_cache);
      } catch (Inconclusive const &e) {
        cell.status = "inconclusive";
        cell.note = e.what();
      }
      if (cell.theorem1) {
        auto truth = cell.theorem1->solvable_hall ? Decision::Yes : Decision::No;
        if (cell.engine.decision != Decision::Unknown && cell.engine.decision != truth)
          cell.status = "mismatch";
        else if (!cell.theorem1->holds)
          cell.status = "violation";
      }
      if (cell.engine.decision == Decision::Unknown)
        ++sum.unknown;
      else
        ++sum.decided;
      if (cell.status == "mismatch" || cell.status == "contradiction")
        ++sum.mismatches;
      else if (cell.status == "violation")
        ++sum.violations;
      else if (cell.status == "inconclusive")
        ++sum.inconclusive;
      sum.cells.push_back(std::move(cell));
    }
  }
  sum.total_ms = elapsed_ms(t0);
  return sum;
}

inline std::string pair_summary(Theorem1Report const &t)
{
  std::string s;
  for (auto const &p : t.pairs) {
    if (!s.empty())
      s += ' ';
    s += std::to_string(p.p) + "," + std::to_string(p.q) + ":" + (p.certificate.found() ? "F" : "E");
  }
  return s;
}

inline std::string cell_oracle(CrossCell const &c)
{
  if (!c.theorem1)
    return "-";
  return c.theorem1->solvable_hall ? "Yes" : "No";
}

inline ordered_json to_json(CrossSummary const &sum, std::string const &q_range,
                            std::string const &n_range, Settings const &s)
{
  ordered_json cells = ordered_json::array();
  for (auto const &c : sum.cells) {
    ordered_json cell{{"descriptor", c.descriptor},
                      {"sigma", primes_json(c.sigma)},
                      {"engine", to_string(c.engine.decision)},
                      {"oracle", cell_oracle(c)},
                      {"status", c.status}};
    cell["pairs"] = ordered_json::object();
    if (c.theorem1) {
      for (auto const &p : c.theorem1->pairs)
        cell["pairs"][std::to_string(p.p) + "," + std::to_string(p.q)] = to_string(p.certificate.kind);
      cell["theorem1_holds"] = c.theorem1->holds;
    } else {
      cell["theorem1_holds"] = nullptr;
    }
    if (c.status != "ok") {
      cell["note"] = c.note;
      cell["trace"] = to_json(c.engine);
    }
    cells.push_back(cell);
  }
  ordered_json req{{"command", "crosscheck"},
                   {"mode", "Crosscheck"},
                   {"family", sum.family},
                   {"q", q_range.empty() ? ordered_json() : ordered_json(q_range)},
                   {"n", n_range.empty() ? ordered_json() : ordered_json(n_range)},
                   {"pi_size", s.pi_size},
                   {"threads", s.threads}};
  std::size_t const total = sum.cells.size();
  ordered_json summary{{"cells", total},
                       {"decided", sum.decided},
                       {"unknown", sum.unknown},
                       {"unknown_rate", total ? static_cast<double>(sum.unknown) / total : 0.0},
                       {"mismatches", sum.mismatches},
                       {"biconditional_violations", sum.violations},
                       {"inconclusive", sum.inconclusive}};
  ordered_json j;
  j["schema_version"] = schema_version;
  j["request"] = req;
  j["group"] = nullptr;
  j["engine"] = nullptr;
  j["oracle"] = nullptr;
  j["pairs"] = ordered_json::array();
  j["consistency"] = sum.mismatches ? "Mismatch" : "Consistent";
  j["cells"] = cells;
  j["summary"] = summary;
  j["timings"] = {{"total_ms", sum.total_ms}};
  return j;
}

inline void print_crosscheck(std::ostream &out, CrossSummary const &sum, std::string const &format)
{
  if (format == "csv") {
    out << "descriptor,sigma,engine,oracle,pairs,theorem1,status\n";
    for (auto const &c : sum.cells) {
      out << c.descriptor << ",\"" << c.sigma.to_string() << "\"," << to_string(c.engine.decision)
          << "," << cell_oracle(c) << ",\"" << (c.theorem1 ? pair_summary(*c.theorem1) : "") << "\","
          << (c.theorem1 ? (c.theorem1->holds ? "holds" : "violated") : "-") << "," << c.status
          << "\n";
    }
    return;
  }
  out << std::left << std::setw(12) << "descriptor" << std::setw(14) << "sigma" << std::setw(9)
      << "engine" << std::setw(8) << "oracle" << std::setw(10) << "theorem1"
      << "pairs (F found, E exhausted)\n";
  for (auto const &c : sum.cells) {
    out << std::left << std::setw(12) << c.descriptor << std::setw(14)
        << ("{" + c.sigma.to_string() + "}") << std::setw(9) << to_string(c.engine.decision)
        << std::setw(8) << cell_oracle(c) << std::setw(10)
        << (c.theorem1 ? (c.theorem1->holds ? "holds" : "VIOLATED") : "-")
        << (c.theorem1 ? pair_summary(*c.theorem1) : "");
    if (c.status != "ok")
      out << "  <-- " << c.status;
    out << "\n";
    if (c.status != "ok") {
      if (!c.note.empty())
        out << "    " << c.note << "\n";
      print_verdict(out, c.engine, "    ");
    }
  }
  std::size_t const total = sum.cells.size();
  out << "cells: " << total << ", decided: " << sum.decided << ", unknown: " << sum.unknown;
  if (total)
    out << " (" << std::fixed << std::setprecision(1) << 100.0 * sum.unknown / total << "%)";
  out << "\nmismatches: " << sum.mismatches << ", biconditional violations: " << sum.violations
      << ", inconclusive: " << sum.inconclusive << "\n";
}

// ---------------------------------------------------------------- driver

/// Parses argv and runs one command. Returns the process exit code.
inline int run_cli(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Hall subgroup criteria and brute-force verification"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings settings;
  bool json = false;
  std::optional<std::string> config;
  std::optional<unsigned> threads;
  std::optional<std::int64_t> budget_ms;
  std::optional<unsigned> pi_size;
  std::string format = "text";
  app.add_flag("--json", json, "emit the JSON report");
  app.add_option("--config", config, "key=value file overriding caps and budgets");
  app.add_option("--threads", threads, "oracle worker threads (0 = auto)");
  app.add_option("--budget-ms", budget_ms, "oracle time budget in milliseconds")
    ->check(CLI::NonNegativeNumber);

  std::string desc, pi;
  auto *order = app.add_subcommand("order", "group order and prime spectrum");
  order->add_option("descriptor", desc, "group descriptor, e.g. PSL+:2:41")->required();

  auto *check = app.add_subcommand("check", "engine verdict with rule trace");
  check->add_option("descriptor", desc)->required();
  check->add_option("--pi", pi, "comma-separated primes")->required();

  auto *verify = app.add_subcommand("verify", "oracle search in a constructed group");
  verify->add_option("descriptor", desc)->required();
  verify->add_option("--pi", pi)->required();

  auto *pairs = app.add_subcommand("pairs", "per-pair verdicts and their combination");
  pairs->add_option("descriptor", desc)->required();
  pairs->add_option("--pi", pi)->required();

  std::string family;
  std::optional<std::string> q_range, n_range;
  auto *cross = app.add_subcommand("crosscheck", "engine against oracle over a grid");
  cross->add_option("--family", family, "PSL2, Alt or Sym")->required();
  cross->add_option("--q", q_range, "range A..B of primes q (PSL2)");
  cross->add_option("--n", n_range, "range A..B of degrees (Alt, Sym)");
  cross->add_option("--pi-size", pi_size, "largest |sigma'| examined (default 4)");
  cross->add_option("--format", format, "text, csv or json")
    ->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    settings.limits = Limits::from_env();
    if (config)
      apply_config_file(settings, *config);
    if (threads)
      settings.threads = *threads;
    if (budget_ms)
      settings.budget_ms = *budget_ms;
    if (pi_size)
      settings.pi_size = *pi_size;
    settings.json = json;
    settings.format = json ? "json" : format;

    if (cross->parsed()) {
      auto grid = crosscheck_grid(family, q_range, n_range);
      auto sum = run_crosscheck(family, grid, settings);
      if (settings.format == "json")
        out << to_json(sum, q_range.value_or(""), n_range.value_or(""), settings).dump(2) << "\n";
      else
        print_crosscheck(out, sum, settings.format);
      return sum.exit_code();
    }

    CheckReport report;
    if (order->parsed())
      report = cmd_order(desc);
    else if (check->parsed())
      report = cmd_check(desc, pi);
    else if (verify->parsed())
      report = cmd_verify(desc, pi, settings);
    else
      report = cmd_pairs(desc, pi, settings);

    if (settings.json)
      out << to_json(report).dump(2) << "\n";
    else
      print_report(out, report);
    return exit_code(report);
  } catch (Inconclusive const &e) {
    err << "inconclusive: " << e.what() << "\n";
    return Undecided;
  } catch (ContradictionError const &e) {
    err << "contradiction: " << e.what() << "\n";
    return Mismatch;
  } catch (InvariantViolation const &e) {
    err << "internal error: " << e.what() << "\n";
    return Mismatch;
  } catch (Error const &e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
}

} // namespace hallpi::cli
