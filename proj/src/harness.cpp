#include "rainbow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "rainbow/constructive.hpp"
#include "rainbow/exact.hpp"

namespace rainbow {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Index-claiming worker pool. Results must be written into per-index slots
// so aggregation stays deterministic regardless of scheduling.
template <typename Fn>
void parallel_for_indexed(long long count, Fn fn, std::atomic<bool>* stop = nullptr) {
  const long long workers = std::min<long long>(worker_count(), count);
  if (workers <= 1) {
    for (long long i = 0; i < count; ++i) {
      if (stop && stop->load()) break;
      fn(i);
    }
    return;
  }

  std::atomic<long long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (long long w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const long long i = next.fetch_add(1);
        if (i >= count || (stop && stop->load())) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          if (stop) stop->store(true);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct JobPlan {
  long long count = 0;
  // materialize instance #i and its display id
  Instance instance(const VerifyJob& job, long long i) const {
    if (!job.corpus.empty()) return job.corpus[i];
    RandomModel model = *job.model;
    model.seed = derive_seed(job.model->seed, static_cast<std::uint64_t>(i));
    return random_instance(model);
  }
  std::optional<std::uint64_t> seed(const VerifyJob& job, long long i) const {
    if (!job.corpus.empty()) return std::nullopt;
    return derive_seed(job.model->seed, static_cast<std::uint64_t>(i));
  }
  std::string id(const VerifyJob& job, long long i) const {
    if (!job.corpus.empty()) {
      if (i < static_cast<long long>(job.corpus_ids.size())) return job.corpus_ids[i];
      return "corpus[" + std::to_string(i) + "]";
    }
    return "trial-" + std::to_string(i);
  }
};

JobPlan plan_of(const VerifyJob& job) {
  if (!job.corpus.empty() && job.model)
    throw std::invalid_argument("verify_theorem: give either a corpus or a model, not both");
  JobPlan plan;
  if (!job.corpus.empty()) {
    plan.count = static_cast<long long>(job.corpus.size());
  } else if (job.model) {
    if (job.trials < 1) throw std::invalid_argument("verify_theorem: trials must be >= 1");
    plan.count = job.trials;
  } else {
    throw std::invalid_argument("verify_theorem: empty job");
  }
  return plan;
}

ReportRow run_row(const Instance& inst, std::string id, int k, VerifyMode mode) {
  if (inst.kind != GraphKind::Bipartite)
    throw std::invalid_argument("verify_theorem: non-bipartite instance '" + id + "'");
  if (k < 0 || k >= inst.n)
    throw std::invalid_argument("verify_theorem: k out of range for instance '" + id + "'");

  ReportRow row;
  row.id = std::move(id);
  row.n = inst.n;
  row.num_classes = inst.num_classes();
  row.hypothesis_met = inst.num_classes() >= theorem_bound(inst.n, k);

  const auto start = Clock::now();
  const FindResult found = find_rainbow(inst, inst.n - k);
  row.constructive_size = found.matching.size();
  row.augment_steps = found.steps;
  row.guarantee_met = row.constructive_size >= inst.n - k;
  if (mode == VerifyMode::CrossCheckExact) {
    const SolveResult exact = max_rainbow(inst);
    row.exact_size = exact.size;
    if (found.matching.size() > exact.size)
      throw std::logic_error("verify_theorem: constructive size exceeds the exact maximum on '" +
                             row.id + "'");
  }
  row.wall_ms = ms_since(start);
  return row;
}

} // namespace

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("RAINBOW_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

Report verify_theorem(const VerifyJob& job) {
  const JobPlan plan = plan_of(job);

  std::vector<std::optional<ReportRow>> slots(plan.count);
  std::atomic<bool> stop{false};
  parallel_for_indexed(
      plan.count,
      [&](long long i) {
        const Instance inst = plan.instance(job, i);
        ReportRow row = run_row(inst, plan.id(job, i), job.k, job.mode);
        row.seed = plan.seed(job, i);
        if (row.hypothesis_met && !row.guarantee_met) stop.store(true);
        slots[i] = std::move(row);
      },
      &stop);

  // Abort-and-dump: the first computed violating row becomes a repro bundle
  // (instance plus a traced re-run; find_rainbow is deterministic).
  for (long long i = 0; i < plan.count; ++i) {
    if (!slots[i]) continue;
    const ReportRow& row = *slots[i];
    if (row.hypothesis_met && !row.guarantee_met) {
      const Instance inst = plan.instance(job, i);
      Trace trace;
      (void)find_rainbow(inst, inst.n - job.k, &trace);
      throw TheoremViolationError(row, serialize_instance(inst), serialize_trace(trace));
    }
  }

  Report report;
  report.k = job.k;
  report.rows.reserve(plan.count);
  for (auto& slot : slots)
    if (slot) report.rows.push_back(std::move(*slot));
  report.violations = 0;
  report.min_constructive_size =
      report.rows.empty() ? 0
                          : std::min_element(report.rows.begin(), report.rows.end(),
                                             [](const ReportRow& a, const ReportRow& b) {
                                               return a.constructive_size < b.constructive_size;
                                             })
                                ->constructive_size;
  for (const auto& row : report.rows) report.total_wall_ms += row.wall_ms;
  return report;
}

std::string report_to_json(const Report& report) {
  ordered_json doc;
  doc["k"] = report.k;
  ordered_json rows = ordered_json::array();
  for (const ReportRow& row : report.rows) {
    ordered_json rj;
    rj["id"] = row.id;
    if (row.seed)
      rj["seed"] = *row.seed;
    else
      rj["seed"] = nullptr;
    rj["n"] = row.n;
    rj["N"] = row.num_classes;
    rj["constructive_size"] = row.constructive_size;
    if (row.exact_size)
      rj["exact_size"] = *row.exact_size;
    else
      rj["exact_size"] = nullptr;
    rj["hypothesis_met"] = row.hypothesis_met;
    rj["guarantee_met"] = row.guarantee_met;
    rj["augment_steps"] = row.augment_steps;
    rj["wall_ms"] = row.wall_ms;
    rows.push_back(std::move(rj));
  }
  doc["rows"] = std::move(rows);
  ordered_json summary;
  summary["rows"] = static_cast<long long>(report.rows.size());
  summary["violations"] = report.violations;
  summary["min_constructive_size"] = report.min_constructive_size;
  summary["total_wall_ms"] = report.total_wall_ms;
  doc["summary"] = std::move(summary);
  return doc.dump();
}

std::string report_to_csv(const Report& report) {
  std::ostringstream out;
  out << "id,seed,n,N,constructive_size,exact_size,hypothesis_met,guarantee_met,"
         "augment_steps,wall_ms\n";
  for (const ReportRow& row : report.rows) {
    out << row.id << ',';
    if (row.seed) out << *row.seed;
    out << ',' << row.n << ',' << row.num_classes << ','
        << row.constructive_size << ',';
    if (row.exact_size) out << *row.exact_size;
    out << ',' << (row.hypothesis_met ? 1 : 0) << ',' << (row.guarantee_met ? 1 : 0)
        << ',' << row.augment_steps << ',' << row.wall_ms << '\n';
  }
  return out.str();
}

namespace {

RandomModel search_model(const SearchJob& job, std::uint64_t seed) {
  RandomModel model;
  model.n = job.n;
  model.num_classes = job.num_classes;
  model.side_a = job.side_a > 0 ? job.side_a : job.n;
  model.side_b = job.side_b > 0 ? job.side_b : job.n;
  model.seed = seed;
  return model;
}

// Edge swap: re-point one edge of one class at a different B-vertex. When
// the new partner belongs to another edge of the class, that edge takes the
// old partner in exchange, so the class stays a matching either way.
Instance mutate_instance(const Instance& inst, std::mt19937_64& rng) {
  Instance mutant = inst;
  const int c = static_cast<int>(bounded_random(rng, mutant.num_classes()));
  auto& cls = mutant.matchings[c];
  const int ei = static_cast<int>(bounded_random(rng, cls.size()));

  const int old_b = cls[ei].v;
  int new_b = static_cast<int>(bounded_random(rng, inst.side_b - 1));
  if (new_b >= old_b) ++new_b; // uniform over B \ {old_b}

  for (auto& other : cls)
    if (other.v == new_b) other.v = old_b;
  cls[ei].v = new_b;
  return mutant;
}

} // namespace

std::optional<SearchHit> search_counterexample(const SearchJob& job) {
  if (job.n < 1 || job.k < 0 || job.k >= job.n)
    throw std::invalid_argument("search_counterexample: need 0 <= k < n");
  if (job.num_classes < 1 || job.trials < 1)
    throw std::invalid_argument("search_counterexample: N and trials must be >= 1");
  const int target = job.n - job.k;

  if (job.strategy == SearchStrategy::Random) {
    const long long chunk = std::max(1, worker_count()) * 8LL;
    for (long long base = 0; base < job.trials; base += chunk) {
      const long long count = std::min(chunk, job.trials - base);
      std::vector<std::optional<SearchHit>> hits(count);
      parallel_for_indexed(count, [&](long long i) {
        const long long trial = base + i;
        const Instance inst =
            random_instance(search_model(job, derive_seed(job.seed, trial)));
        if (!has_rainbow_of_size(inst, target)) {
          const SolveResult exact = max_rainbow(inst);
          hits[i] = SearchHit{inst, exact.size, trial};
        }
      });
      for (auto& hit : hits)
        if (hit) return hit;
    }
    return std::nullopt;
  }

  // Mutate: one hill-climbing chain, trials = mutation attempts.
  std::mt19937_64 rng(derive_seed(job.seed, 0x6d7574617465ULL));
  Instance current = random_instance(search_model(job, derive_seed(job.seed, 0)));
  int current_size = max_rainbow(current).size;
  if (current_size < target) return SearchHit{current, current_size, 0};
  for (long long trial = 0; trial < job.trials; ++trial) {
    Instance mutant = mutate_instance(current, rng);
    const int mutant_size = max_rainbow(mutant).size;
    if (mutant_size < current_size) {
      current = std::move(mutant);
      current_size = mutant_size;
      if (current_size < target) return SearchHit{current, current_size, trial};
    }
  }
  return std::nullopt;
}

} // namespace rainbow
