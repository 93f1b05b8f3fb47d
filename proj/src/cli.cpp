#include "rainbow/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "rainbow/constructive.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"

namespace rainbow {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1; // violation / counterexample found
constexpr int kExitUsage = 2;   // usage or I/O error

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text << '\n';
}

Instance load_instance(const std::string& path) {
  const Instance inst = parse_instance(read_file(path));
  const auto rep = validate_instance(inst, /*strict=*/false);
  if (!rep.ok)
    throw std::runtime_error("'" + path + "': " + rep.violations.front().description);
  return inst;
}

struct GenArgs {
  std::string type;
  int n = 0;
  int num_classes = 0;
  std::uint64_t seed = 0;
  std::vector<int> sides;
  std::string out_path;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  Instance inst;
  if (args.type == "drisko") {
    inst = drisko_instance(args.n);
  } else if (args.type == "remark") {
    inst = remark_general_instance(args.n);
  } else if (args.type == "cyclic") {
    inst = cyclic_factorization(args.n);
  } else { // random
    if (args.num_classes < 1)
      throw CLI::ValidationError("gen random requires --N >= 1");
    RandomModel model;
    model.n = args.n;
    model.num_classes = args.num_classes;
    model.side_a = args.sides.empty() ? args.n : args.sides[0];
    model.side_b = args.sides.empty() ? args.n : args.sides[1];
    model.seed = args.seed;
    inst = random_instance(model);
  }
  write_output(args.out_path, serialize_instance(inst), out);
  err << "generated " << args.type << " instance: n=" << inst.n
      << " N=" << inst.num_classes() << '\n';
  return kExitOk;
}

struct SolveArgs {
  std::string in_path;
  std::optional<int> target;
  std::string trace_path;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(args.in_path);
  Trace trace;
  const FindResult res =
      find_rainbow(inst, args.target, args.trace_path.empty() ? nullptr : &trace);
  const int target =
      args.target ? *args.target
                  : static_cast<int>(inst.n - guaranteed_k(inst.n, inst.num_classes()).value());

  ordered_json doc;
  doc["size"] = res.matching.size();
  doc["target"] = target;
  doc["met_target"] = res.met_target;
  doc["steps"] = res.steps;
  doc["matching"] = ordered_json::parse(serialize_rainbow(res.matching));
  out << doc.dump() << '\n';
  if (!args.trace_path.empty()) write_output(args.trace_path, serialize_trace(trace), out);

  const long long needed = theorem_bound(inst.n, inst.n - target);
  const bool hypothesis = inst.num_classes() >= needed;
  err << "size " << res.matching.size() << " of target " << target
      << (res.met_target ? " (met)" : " (not met)") << ", " << res.steps
      << " augmentations\n";
  if (!res.met_target && !hypothesis)
    err << "hypothesis not met: N=" << inst.num_classes() << " < " << needed
        << " classes, no guarantee applies\n";
  if (!res.met_target && hypothesis) {
    err << "VIOLATION: N=" << inst.num_classes() << " >= " << needed
        << " classes guarantee size " << target << " but only "
        << res.matching.size() << " was found\n";
    return kExitFinding;
  }
  return kExitOk;
}

struct ExactArgs {
  std::string in_path;
  std::optional<long long> node_budget;
  std::optional<int> time_budget_ms;
  bool no_matching_bound = false;
};

int cmd_exact(const ExactArgs& args, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(args.in_path);
  SolverConfig cfg;
  cfg.node_budget = args.node_budget;
  cfg.time_budget_ms = args.time_budget_ms;
  cfg.use_matching_bound = !args.no_matching_bound;
  const SolveResult res = max_rainbow(inst, cfg);

  ordered_json doc;
  doc["size"] = res.size;
  doc["optimal"] = res.optimal;
  doc["nodes_explored"] = res.nodes_explored;
  doc["witness"] = ordered_json::parse(serialize_rainbow(res.witness));
  out << doc.dump() << '\n';
  err << "maximum rainbow matching: " << res.size
      << (res.optimal ? "" : " (budget hit, lower bound only)") << ", "
      << res.nodes_explored << " nodes\n";
  return kExitOk;
}

RandomModel parse_model(const std::string& text, int default_seedless = 0) {
  (void)default_seedless;
  RandomModel model;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--model entries must look like key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    long long parsed = 0;
    try {
      parsed = std::stoll(value);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--model value for '" + key + "' is not an integer");
    }
    if (key == "n")
      model.n = static_cast<int>(parsed);
    else if (key == "N")
      model.num_classes = static_cast<int>(parsed);
    else if (key == "sa")
      model.side_a = static_cast<int>(parsed);
    else if (key == "sb")
      model.side_b = static_cast<int>(parsed);
    else
      throw CLI::ValidationError("--model: unknown key '" + key + "' (use n,N,sa,sb)");
  }
  if (model.n < 1 || model.num_classes < 1)
    throw CLI::ValidationError("--model needs n>=1 and N>=1");
  if (model.side_a == 0) model.side_a = model.n;
  if (model.side_b == 0) model.side_b = model.n;
  return model;
}

struct VerifyArgs {
  std::string model_text;
  std::vector<std::string> in_paths;
  int trials = 0;
  int k = 0;
  bool cross_check = false;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string csv_path;
  std::string bundle_prefix = "violation";
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  VerifyJob job;
  job.k = args.k;
  job.mode = args.cross_check ? VerifyMode::CrossCheckExact : VerifyMode::ConstructiveOnly;
  if (!args.model_text.empty()) {
    RandomModel model = parse_model(args.model_text);
    model.seed = args.seed;
    job.model = model;
    job.trials = args.trials;
  } else {
    for (const auto& path : args.in_paths) {
      job.corpus.push_back(load_instance(path));
      job.corpus_ids.push_back(path);
    }
  }

  try {
    const Report report = verify_theorem(job);
    write_output(args.out_path, report_to_json(report), out);
    if (!args.csv_path.empty()) {
      std::ofstream csv(args.csv_path, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot open '" + args.csv_path + "' for writing");
      csv << report_to_csv(report);
    }
    int hypothesis_rows = 0;
    for (const auto& row : report.rows) hypothesis_rows += row.hypothesis_met ? 1 : 0;
    err << "verified " << report.rows.size() << " instances (k=" << report.k << "): "
        << report.violations << " violations, min constructive size "
        << report.min_constructive_size << ", " << hypothesis_rows
        << " rows under hypothesis\n";
    return kExitOk;
  } catch (const TheoremViolationError& violation) {
    const std::string inst_path = args.bundle_prefix + ".instance.json";
    const std::string trace_path = args.bundle_prefix + ".trace.json";
    std::ofstream(inst_path, std::ios::binary) << violation.instance_json << '\n';
    std::ofstream(trace_path, std::ios::binary) << violation.trace_json << '\n';
    err << violation.what() << "\nrepro bundle written to " << inst_path << " and "
        << trace_path << '\n';
    return kExitFinding;
  }
}

struct SearchArgs {
  int n = 0, k = 0, num_classes = 0;
  std::string strategy = "random";
  long long trials = 0;
  std::uint64_t seed = 0;
  std::vector<int> sides;
  std::string out_path;
};

int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err) {
  SearchJob job;
  job.n = args.n;
  job.k = args.k;
  job.num_classes = args.num_classes;
  job.strategy = args.strategy == "mutate" ? SearchStrategy::Mutate : SearchStrategy::Random;
  job.trials = args.trials;
  job.seed = args.seed;
  if (!args.sides.empty()) {
    job.side_a = args.sides[0];
    job.side_b = args.sides[1];
  }

  const auto hit = search_counterexample(job);
  if (hit) {
    write_output(args.out_path, serialize_instance(hit->instance), out);
    err << "counterexample found at trial " << hit->trial_index << ": exact max rainbow "
        << hit->exact_size << " < " << args.n - args.k << " with N=" << args.num_classes
        << " classes\n";
    return kExitFinding;
  }
  err << "no counterexample in " << args.trials << " trials (n=" << args.n
      << ", k=" << args.k << ", N=" << args.num_classes << ")\n";
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rainbow: rainbow matchings in edge-colored bipartite multigraphs"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("type", gen_args.type, "drisko|remark|cyclic|random")
      ->required()
      ->check(CLI::IsMember({"drisko", "remark", "cyclic", "random"}));
  gen->add_option("--n", gen_args.n, "matching size n")->required();
  gen->add_option("--N", gen_args.num_classes, "number of classes (random only)");
  gen->add_option("--seed", gen_args.seed, "random seed (random only)");
  gen->add_option("--sides", gen_args.sides, "side sizes A B (random only)")->expected(2);
  gen->add_option("--out", gen_args.out_path, "output file (default stdout)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "run the constructive algorithm");
  solve->add_option("--in", solve_args.in_path, "instance file")->required();
  int solve_target = -1;
  auto* target_opt = solve->add_option("--target", solve_target, "target size (default n - guaranteed_k)");
  solve->add_option("--trace", solve_args.trace_path, "write per-step trace JSON here");

  ExactArgs exact_args;
  auto* exact = app.add_subcommand("exact", "exact maximum rainbow matching");
  exact->add_option("--in", exact_args.in_path, "instance file")->required();
  long long node_budget = -1;
  auto* nb_opt = exact->add_option("--node-budget", node_budget, "search node budget");
  int time_budget = -1;
  auto* tb_opt = exact->add_option("--time-budget-ms", time_budget, "time budget in ms");
  exact->add_flag("--no-matching-bound", exact_args.no_matching_bound,
                  "disable the matching relaxation bound");

  long long bound_n = 0, bound_k = 0;
  auto* bound = app.add_subcommand("bound", "print the guarantee threshold for (n, k)");
  bound->add_option("--n", bound_n, "matching size n")->required();
  bound->add_option("--k", bound_k, "deficiency k")->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "batch-verify the guarantee over a corpus");
  verify->add_option("--model", verify_args.model_text, "random model, e.g. n=4,N=7,sa=4,sb=4");
  verify->add_option("--in", verify_args.in_paths, "instance files (alternative to --model)");
  verify->add_option("--trials", verify_args.trials, "trial count for --model");
  verify->add_option("--k", verify_args.k, "deficiency k")->required();
  verify->add_flag("--cross-check", verify_args.cross_check, "also run the exact solver");
  verify->add_option("--seed", verify_args.seed, "master seed for --model trials");
  verify->add_option("--out", verify_args.out_path, "report JSON file (default stdout)");
  verify->add_option("--csv", verify_args.csv_path, "also write rows as CSV");
  verify->add_option("--bundle-prefix", verify_args.bundle_prefix,
                     "filename prefix for violation repro bundles");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "look for counterexample instances");
  search->add_option("--n", search_args.n, "matching size n")->required();
  search->add_option("--k", search_args.k, "deficiency k")->required();
  search->add_option("--N", search_args.num_classes, "number of classes")->required();
  search->add_option("--strategy", search_args.strategy, "random|mutate")
      ->check(CLI::IsMember({"random", "mutate"}));
  search->add_option("--trials", search_args.trials, "trial count")->required();
  search->add_option("--seed", search_args.seed, "master seed");
  search->add_option("--sides", search_args.sides, "side sizes A B (default n n)")->expected(2);
  search->add_option("--out", search_args.out_path, "counterexample file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_args, out, err);
    if (solve->parsed()) {
      if (*target_opt) solve_args.target = solve_target;
      return cmd_solve(solve_args, out, err);
    }
    if (exact->parsed()) {
      if (*nb_opt) exact_args.node_budget = node_budget;
      if (*tb_opt) exact_args.time_budget_ms = time_budget;
      return cmd_exact(exact_args, out, err);
    }
    if (bound->parsed()) {
      out << theorem_bound(bound_n, bound_k) << '\n';
      return kExitOk;
    }
    if (verify->parsed()) return cmd_verify(verify_args, out, err);
    if (search->parsed()) return cmd_search(search_args, out, err);
  } catch (const InternalContradictionError& e) {
    err << "INTERNAL CONTRADICTION: " << e.what() << '\n';
    return kExitFinding;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace rainbow
