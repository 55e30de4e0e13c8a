// nearspace: command-line front end for the nearfield vector space library.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nearspace/counting.hpp"
#include "nearspace/genclose.hpp"
#include "nearspace/json_io.hpp"
#include "nearspace/nearfield.hpp"
#include "nearspace/verify.hpp"

namespace ns = nearspace;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string q;
  unsigned jobs = 1;
  std::string output;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1'000'000;
  std::uint64_t closure_cap = ns::default_closure_cap;
};

// "9" picks the smallest-base proper Dickson pair of that order; "3^2" names
// the pair (3, 2) directly.
ns::DicksonPair parse_pair(const std::string& text) {
  if (text.empty()) throw UsageError("--q is required");
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("invalid --q '" + text + "'");
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw UsageError("--q '" + text + "' is out of range");
    }
  };
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const ns::DicksonPair pair{number(text.substr(0, caret)),
                               static_cast<std::uint32_t>(number(text.substr(caret + 1)))};
    if (auto why = ns::dickson_pair_violation(pair); !why.empty())
      throw UsageError("--q '" + text + "' is not a Dickson pair: " + why);
    return pair;
  }
  const auto order = number(text);
  const auto pair = ns::dickson_pair_for_order(order);
  if (!pair) throw UsageError("no proper Dickson nearfield has order " + text);
  return *pair;
}

std::uint64_t pair_order(ns::DicksonPair pair) {
  const auto order = ns::arith::checked_pow(pair.q, pair.n, UINT32_MAX);
  if (!order) throw UsageError("nearfield order is too large");
  return *order;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void print_json(const Config& cfg, const json& j) {
  Output out(cfg.output);
  out.stream() << j.dump(2) << "\n";
}

std::string want_format(const Config& cfg, const std::string& fallback,
                        const std::vector<std::string>& allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const auto& a : allowed)
    if (a == f) return f;
  throw UsageError("unsupported --format '" + f + "' for this command");
}

// ---- commands -------------------------------------------------------------

struct NearfieldCheckArgs {
  std::string mode = "auto";
};

int cmd_nearfield_check(const Config& cfg, const NearfieldCheckArgs& a) {
  const auto pair = parse_pair(cfg.q);
  const auto order = pair_order(pair);
  const bool small_enough = order * order * order <= ns::Nearfield::exhaustive_triple_limit;
  bool exhaustive = a.mode == "exhaustive" || (a.mode == "auto" && small_enough);
  if (exhaustive && !small_enough)
    throw UsageError("exhaustive validation needs order^3 <= 10^9; use --mode sampled");
  const auto mode = exhaustive ? ns::ValidationMode::exhaustive()
                               : ns::ValidationMode::sampled(cfg.samples, cfg.seed.value_or(1));

  const ns::Nearfield nf(pair);
  const auto report = ns::validate_axioms(nf, mode);
  const std::string fmt = want_format(cfg, "text", {"text", "json"});
  if (fmt == "json") {
    json j = ns::json_io::to_json(report);
    j["q"] = pair.q;
    j["n"] = pair.n;
    j["order"] = order;
    print_json(cfg, j);
  } else {
    Output out(cfg.output);
    auto& os = out.stream();
    os << "nearfield (" << pair.q << "," << pair.n << ") of order " << order << ", "
       << (report.exhaustive ? "exhaustive" : "sampled " + std::to_string(report.samples)) << "\n";
    for (std::size_t i = 0; i < ns::axiom_count; ++i)
      os << (report.passed[i] ? "PASS " : "FAIL ") << ns::axiom_name(static_cast<ns::Axiom>(i))
         << "\n";
    if (report.properness_witness) {
      const auto& w = *report.properness_witness;
      os << "proper: (a+b)c != ac+bc at (a,b,c) = (" << w.a << "," << w.b << "," << w.c << ")\n";
    } else {
      os << "proper: no witness found\n";
    }
  }
  return report.all_pass() ? exit_ok : exit_mismatch;
}

struct CountArgs {
  std::uint32_t n_max = 0;
  std::optional<std::uint32_t> dim;
};

int cmd_count(const Config& cfg, const CountArgs& a) {
  const auto pair = parse_pair(cfg.q);
  if (pair.n < 2) throw UsageError("count needs a proper nearfield (n >= 2)");
  const auto q = pair_order(pair);
  const auto table = ns::count_table(q, a.n_max);
  const std::string fmt = want_format(cfg, "csv", {"csv", "json", "markdown"});
  if (fmt == "json") {
    json j = ns::json_io::to_json(table);
    if (a.dim) {
      for (auto& row : j["rows"]) {
        const auto n = row["n"].get<std::uint32_t>();
        row = {{"n", n}, {"l", *a.dim}, {"count", ns::json_io::big(ns::count_subgroups(q, *a.dim, n))}};
      }
    }
    print_json(cfg, j);
    return exit_ok;
  }

  Output out(cfg.output);
  auto& os = out.stream();
  std::vector<std::string> header{"n"};
  if (a.dim) {
    header.push_back("l=" + std::to_string(*a.dim));
  } else {
    for (std::uint32_t l = 0; l <= a.n_max; ++l) header.push_back("l=" + std::to_string(l));
    header.push_back("total");
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : table.rows) {
    std::vector<std::string> cells{std::to_string(row.n)};
    if (a.dim) {
      cells.push_back(ns::count_subgroups(q, *a.dim, row.n).str());
    } else {
      for (std::uint32_t l = 0; l <= a.n_max; ++l) cells.push_back(l <= row.n ? row.by_dim[l].str() : "");
      cells.push_back(row.total.str());
    }
    rows.push_back(std::move(cells));
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    if (fmt == "csv") {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    } else {
      os << "|";
      for (const auto& c : cells) os << " " << c << " |";
    }
    os << "\n";
  };
  emit(header);
  if (fmt == "markdown") emit(std::vector<std::string>(header.size(), "---"));
  for (const auto& r : rows) emit(r);
  return exit_ok;
}

struct BruteArgs {
  std::uint32_t n = 1;
};

int cmd_brute_count(const Config& cfg, const BruteArgs& a) {
  const auto pair = parse_pair(cfg.q.empty() ? "9" : cfg.q);
  const ns::Nearfield nf(pair);
  const auto counts = ns::brute_count(nf, a.n, cfg.jobs);
  bool ok = true;
  json rows = json::array();
  for (std::uint32_t l = 0; l <= a.n; ++l) {
    const auto formula = ns::count_subgroups(nf.order(), l, a.n);
    ok = ok && formula == counts[l];
    rows.push_back({{"l", l}, {"brute", counts[l]}, {"formula", ns::json_io::big(formula)}});
  }
  const std::string fmt = want_format(cfg, "csv", {"csv", "json"});
  if (fmt == "json") {
    print_json(cfg, {{"q", nf.order()}, {"n", a.n}, {"match", ok}, {"rows", rows}});
  } else {
    Output out(cfg.output);
    out.stream() << "l,brute,formula\n";
    for (const auto& r : rows)
      out.stream() << r["l"] << "," << r["brute"] << "," << ns::count_subgroups(nf.order(), r["l"], a.n).str()
                   << "\n";
  }
  return ok ? exit_ok : exit_mismatch;
}

struct VectorArgs {
  std::string vectors;
  std::size_t n = 0;
};

std::vector<ns::Vector> load_vectors(const ns::Nearfield& nf, const VectorArgs& a, std::size_t& n) {
  auto vs = ns::json_io::vectors_from_json(read_json_file(a.vectors), nf.order(), a.n);
  n = a.n != 0 ? a.n : (vs.empty() ? 0 : vs.front().size());
  if (n == 0) throw UsageError("cannot infer n from an empty vector list; pass --n");
  return vs;
}

int cmd_gen(const Config& cfg, const VectorArgs& a) {
  const ns::Nearfield nf(parse_pair(cfg.q));
  std::size_t n = 0;
  const auto vs = load_vectors(nf, a, n);
  json j = ns::json_io::to_json(ns::canonical_gen(nf, n, vs));
  j["q"] = nf.order();
  print_json(cfg, j);
  return exit_ok;
}

int cmd_lc_index(const Config& cfg, const VectorArgs& a) {
  const ns::Nearfield nf(parse_pair(cfg.q));
  std::size_t n = 0;
  const auto vs = load_vectors(nf, a, n);
  const auto trace = ns::lc_closure(nf, n, vs, cfg.closure_cap);
  json j = ns::json_io::to_json(trace);
  j["q"] = nf.order();
  j["canonical_dim"] = ns::canonical_gen(nf, n, vs).subgroup.dim();
  print_json(cfg, j);
  return exit_ok;
}

struct SearchArgs {
  std::uint32_t n_min = 1, n_max = 1, k_min = 1, k_max = 1;
  std::optional<std::uint64_t> random;
};

int cmd_lc_search(const Config& cfg, const SearchArgs& a) {
  const ns::Nearfield nf(parse_pair(cfg.q));
  ns::SearchStrategy strategy = ns::ExhaustiveSearch{};
  if (a.random) {
    if (!cfg.seed) throw UsageError("--random needs --seed");
    strategy = ns::RandomSearch{*a.random, *cfg.seed};
  }
  ns::SearchOptions opt;
  opt.jobs = cfg.jobs;
  opt.closure_cap = cfg.closure_cap;
  const auto report = ns::search_linearity_index(nf, {a.n_min, a.n_max}, {a.k_min, a.k_max},
                                                 strategy, opt);
  json j = ns::json_io::to_json(report);
  j["q"] = nf.order();
  j["strategy"] = a.random ? "random" : "exhaustive";
  if (a.random) j["seed"] = *cfg.seed;
  print_json(cfg, j);
  return exit_ok;
}

struct MdimArgs {
  std::uint32_t k = 1;
  std::optional<std::uint64_t> l;
};

int cmd_mdim(const Config& cfg, const MdimArgs& a) {
  const auto pair = parse_pair(cfg.q);
  const auto q = pair_order(pair);
  const std::string fmt = want_format(cfg, "text", {"text", "json"});
  json j = {{"q", q}, {"k", a.k}, {"mdim", ns::json_io::big(ns::mdim(q, a.k))}};
  if (a.l) j["seed_number"] = ns::seed_number(q, *a.l);
  if (fmt == "json") {
    print_json(cfg, j);
  } else {
    Output out(cfg.output);
    out.stream() << ns::mdim(q, a.k).str() << "\n";
    if (a.l) out.stream() << "seed_number(" << *a.l << ") = " << ns::seed_number(q, *a.l) << "\n";
  }
  return exit_ok;
}

struct SeedsetArgs {
  std::string subgroup;
};

int cmd_seedset(const Config& cfg, const SeedsetArgs& a) {
  const ns::Nearfield nf(parse_pair(cfg.q));
  const auto t = ns::json_io::subgroup_from_json(read_json_file(a.subgroup), nf.order());
  const auto seeds = ns::find_seed_set(nf, t);
  print_json(cfg, {{"q", nf.order()},
                   {"dim", t.dim()},
                   {"seed_number", ns::seed_number(nf.order(), t.dim())},
                   {"seeds", ns::json_io::to_json(seeds)}});
  return exit_ok;
}

struct VerifyArgs {
  std::string fixtures;
  bool slow = false;
};

int cmd_verify(const Config& cfg, const VerifyArgs& a) {
  if (!cfg.q.empty()) (void)parse_pair(cfg.q);
  ns::verify::Options opt;
  opt.slow = a.slow;
  opt.jobs = cfg.jobs;
  if (!a.fixtures.empty()) {
    opt.tables = read_json_file(a.fixtures);
    if (!opt.tables.is_object() || !opt.tables.contains("tables") || !opt.tables["tables"].is_array())
      throw UsageError(a.fixtures + ": expected {\"tables\": [...]}");
  }
  Output out(cfg.output);
  const bool ok = ns::verify::run_all(opt, out.stream());
  out.stream() << (ok ? "all criteria passed" : "verification FAILED") << "\n";
  return ok ? exit_ok : exit_mismatch;
}

// Library errors that mean "the mathematics disagreed" rather than "bad input".
int exit_for(ns::ErrorKind kind) {
  switch (kind) {
    case ns::ErrorKind::AxiomValidationFailed:
    case ns::ErrorKind::InternalInconsistency:
      return exit_mismatch;
    default:
      return exit_usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dickson nearfields, R-subgroups of R^n and their counts"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value defaults file")->envname("NEARSPACE_CONFIG");

  Config cfg;
  app.add_option("--q", cfg.q, "nearfield order (e.g. 9) or Dickson pair Q^N (e.g. 3^2)");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "write results to this file instead of stdout");
  app.add_option("--format", cfg.format, "csv, json, markdown or text (command dependent)");
  app.add_option("--seed", cfg.seed, "rng seed for sampled and random modes");
  app.add_option("--samples", cfg.samples, "sampled axiom checks")->check(CLI::PositiveNumber);
  app.add_option("--closure-cap", cfg.closure_cap, "largest closure lc_closure may build")
      ->check(CLI::PositiveNumber);

  std::function<int()> run;

  auto* nearfield = app.add_subcommand("nearfield", "nearfield utilities");
  nearfield->require_subcommand(1);
  NearfieldCheckArgs nc;
  auto* check = nearfield->add_subcommand("check", "validate the nearfield axioms");
  check->add_option("--mode", nc.mode, "auto, exhaustive or sampled")
      ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
  check->callback([&] { run = [&] { return cmd_nearfield_check(cfg, nc); }; });

  CountArgs ca;
  auto* count = app.add_subcommand("count", "table of R-subgroup counts Rs(R,l,n)");
  count->add_option("--n-max", ca.n_max, "largest n")->required();
  count->add_option("--dim", ca.dim, "only this dimension l");
  count->callback([&] { run = [&] { return cmd_count(cfg, ca); }; });

  BruteArgs ba;
  auto* brute = app.add_subcommand("brute-count", "count subgroups by enumeration (--q defaults to 9)");
  brute->add_option("--n", ba.n, "dimension of R^n")->required()->check(CLI::Range(1, 10));
  brute->callback([&] { run = [&] { return cmd_brute_count(cfg, ba); }; });

  VectorArgs ga;
  auto* gen = app.add_subcommand("gen", "canonical form of the subgroup generated by vectors");
  gen->add_option("--vectors", ga.vectors, "JSON array of vectors")->required();
  gen->add_option("--n", ga.n, "length of each vector (inferred when omitted)");
  gen->callback([&] { run = [&] { return cmd_gen(cfg, ga); }; });

  VectorArgs la;
  auto* lc_index = app.add_subcommand("lc-index", "linearity index via the LC_i hierarchy");
  lc_index->add_option("--vectors", la.vectors, "JSON array of vectors")->required();
  lc_index->add_option("--n", la.n, "length of each vector (inferred when omitted)");
  lc_index->callback([&] { run = [&] { return cmd_lc_index(cfg, la); }; });

  SearchArgs sa;
  auto* search = app.add_subcommand("lc-search", "search for tuples with large linearity index");
  search->add_option("--n-min", sa.n_min, "smallest n")->check(CLI::PositiveNumber);
  search->add_option("--n-max", sa.n_max, "largest n")->required()->check(CLI::PositiveNumber);
  search->add_option("--k-min", sa.k_min, "fewest vectors")->check(CLI::PositiveNumber);
  search->add_option("--k-max", sa.k_max, "most vectors")->required()->check(CLI::PositiveNumber);
  search->add_option("--random", sa.random, "draw this many random tuples instead (needs --seed)");
  search->callback([&] { run = [&] { return cmd_lc_search(cfg, sa); }; });

  MdimArgs ma;
  auto* mdim = app.add_subcommand("mdim", "largest dimension generated by k vectors");
  mdim->add_option("--k", ma.k, "number of vectors")->required();
  mdim->add_option("--l", ma.l, "also print the seed number of dimension l");
  mdim->callback([&] { run = [&] { return cmd_mdim(cfg, ma); }; });

  SeedsetArgs ssa;
  auto* seedset = app.add_subcommand("seedset", "minimal generating set of a subgroup");
  seedset->add_option("--subgroup", ssa.subgroup, "subgroup JSON (gen output is accepted)")
      ->required();
  seedset->callback([&] { run = [&] { return cmd_seedset(cfg, ssa); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--fixtures", va.fixtures, "reference tables JSON (default: built in)");
  verify->add_flag("--slow", va.slow, "include brute_count at n = 4");
  verify->callback([&] { run = [&] { return cmd_verify(cfg, va); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ns::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
