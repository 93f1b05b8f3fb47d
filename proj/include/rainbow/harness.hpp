#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/generators.hpp"

namespace rainbow {

enum class VerifyMode { ConstructiveOnly, CrossCheckExact };

/// A verification batch: either an explicit corpus or a random model plus a
/// trial count. Every instance must be bipartite with 0 <= k < n.
struct VerifyJob {
  std::vector<Instance> corpus;
  std::vector<std::string> corpus_ids; // optional, parallel to corpus
  std::optional<RandomModel> model;
  int trials = 0;
  int k = 0;
  VerifyMode mode = VerifyMode::ConstructiveOnly;
};

struct ReportRow {
  std::string id;
  std::optional<std::uint64_t> seed; // per-trial seed for model-driven rows
  int n = 0;
  int num_classes = 0;
  int constructive_size = 0;
  std::optional<int> exact_size;
  bool hypothesis_met = false; // N >= theorem_bound(n, k)
  bool guarantee_met = false;  // constructive size >= n - k
  int augment_steps = 0;
  double wall_ms = 0.0;
};

struct Report {
  int k = 0;
  std::vector<ReportRow> rows;
  int violations = 0; // rows with hypothesis_met && !guarantee_met
  int min_constructive_size = 0;
  double total_wall_ms = 0.0;
};

std::string report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

/// Thrown when a verification row contradicts the guarantee. Carries a
/// ready-to-dump repro bundle; reaching this path means the constructive
/// algorithm is broken, so the bundle is the primary artifact.
class TheoremViolationError : public std::runtime_error {
 public:
  TheoremViolationError(ReportRow row, std::string instance_json, std::string trace_json)
      : std::runtime_error("theorem violation on instance '" + row.id + "': size " +
                           std::to_string(row.constructive_size) + " < n - k"),
        row(std::move(row)),
        instance_json(std::move(instance_json)),
        trace_json(std::move(trace_json)) {}

  ReportRow row;
  std::string instance_json;
  std::string trace_json;
};

/// Runs find_rainbow with target n-k on every instance (plus the exact
/// solver in CrossCheckExact mode). Aborts with TheoremViolationError the
/// moment any instance satisfying N >= theorem_bound(n, k) comes back with
/// a matching smaller than n-k.
Report verify_theorem(const VerifyJob& job);

enum class SearchStrategy { Random, Mutate };

struct SearchJob {
  int n = 0;
  int k = 0;
  int num_classes = 0;
  SearchStrategy strategy = SearchStrategy::Random;
  long long trials = 0;
  std::uint64_t seed = 0;
  int side_a = 0; // 0 -> n
  int side_b = 0; // 0 -> n
};

struct SearchHit {
  Instance instance;
  int exact_size = 0;
  long long trial_index = 0;
};

/// Probes for instances with N classes whose exact maximum rainbow matching
/// falls below n-k. Random: independent seeded samples. Mutate: hill-climb
/// by single-edge swaps, keeping mutants whose exact maximum decreases.
std::optional<SearchHit> search_counterexample(const SearchJob& job);

/// Worker threads for batch jobs: hardware concurrency capped by the
/// RAINBOW_THREADS environment variable.
int worker_count();

} // namespace rainbow
