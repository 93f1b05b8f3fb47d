// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries the time budget it must finish within.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/constructive.hpp"
#include "rainbow/core.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"

using namespace rainbow;

namespace {

struct Failure {
  std::string detail;
};

class Checker {
 public:
  void require(bool cond, const std::string& detail) {
    if (!cond) throw Failure{detail};
  }
};

bool g_internal_contradiction_seen = false;

int isqrt(int n) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while ((r + 1) * (r + 1) <= n) ++r;
  while (r * r > n) --r;
  return r;
}

// ---------------------------------------------------------------------------
// 1. Bound table
void criterion_bound_table(Checker& c) {
  for (long long n = 1; n <= 50; ++n) {
    for (long long k = 0; k < n; ++k) {
      const long long via_identity = n + n / (k + 1) - (k + 1);
      const long long via_product = (k + 2) * n / (k + 1) - (k + 1);
      const long long got = theorem_bound(n, k);
      c.require(got == via_identity && got == via_product,
                "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  c.require(theorem_bound(5, 0) == 9, "spot (5,0)");
  c.require(theorem_bound(6, 1) == 7, "spot (6,1)");
  c.require(theorem_bound(7, 3) == 4, "spot (7,3)");
}

// ---------------------------------------------------------------------------
// 2. Drisko tightness: exact maximum of drisko_instance(n) is n-1
void criterion_drisko_tightness(Checker& c) {
  for (int n = 2; n <= 7; ++n) {
    const SolveResult res = max_rainbow(drisko_instance(n));
    c.require(res.optimal, "solver hit a budget at n=" + std::to_string(n));
    c.require(res.size == n - 1, "drisko(" + std::to_string(n) + ") gave " +
                                     std::to_string(res.size) + ", expected " +
                                     std::to_string(n - 1));
  }
}

// ---------------------------------------------------------------------------
// 3. Drisko guarantee: N = 2n-1 always yields a full rainbow matching
void criterion_drisko_guarantee(Checker& c) {
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      const Instance inst = random_instance(
          {n, 2 * n - 1, n, n, derive_seed(0xACC3, n * 1000 + trial)});
      const FindResult found = find_rainbow(inst, n);
      c.require(found.met_target, "constructive miss at n=" + std::to_string(n) +
                                      " trial=" + std::to_string(trial));
      c.require(is_rainbow_matching(inst, found.matching),
                "invalid matching at n=" + std::to_string(n));
      c.require(has_rainbow_of_size(inst, n),
                "exact cross-check failed at n=" + std::to_string(n) +
                    " trial=" + std::to_string(trial));
    }
  }
}

// ---------------------------------------------------------------------------
// 4. Remark construction: 2n-1 classes, still no full rainbow matching
void criterion_remark(Checker& c) {
  for (int n : {2, 4, 6}) {
    const SolveResult res = max_rainbow(remark_general_instance(n));
    c.require(res.optimal, "solver hit a budget at n=" + std::to_string(n));
    c.require(res.size <= n - 1, "remark(" + std::to_string(n) + ") gave " +
                                     std::to_string(res.size));
  }
}

// ---------------------------------------------------------------------------
// 5. Constructive soundness + guarantee sweep over 1000 random instances
void criterion_soundness_sweep(Checker& c) {
  for (int trial = 0; trial < 1000; ++trial) {
    std::mt19937_64 rng(derive_seed(0x5EED5, trial));
    const int n = 1 + static_cast<int>(bounded_random(rng, 6));
    const int lo = n, hi = static_cast<int>(theorem_bound(n, 0));
    const int classes = lo + static_cast<int>(bounded_random(rng, hi - lo + 1));
    const int side_a = n + static_cast<int>(bounded_random(rng, 3));
    const int side_b = n + static_cast<int>(bounded_random(rng, 3));
    const Instance inst =
        random_instance({n, classes, side_a, side_b, derive_seed(0x5EED6, trial)});

    const FindResult found = find_rainbow(inst);
    const std::string where = " (trial " + std::to_string(trial) + ", n=" +
                              std::to_string(n) + ", N=" + std::to_string(classes) + ")";
    c.require(is_rainbow_matching(inst, found.matching), "invalid output" + where);
    c.require(found.matching.size() <= max_rainbow(inst).size,
              "constructive exceeded exact" + where);
    const int promised =
        n - static_cast<int>(guaranteed_k(n, classes).value());
    c.require(found.matching.size() >= promised, "guarantee missed" + where);
  }
}

// ---------------------------------------------------------------------------
// 6. Square-root deficiency: cyclic factorizations reach n - floor(sqrt(n))
void criterion_sqrt_deficiency(Checker& c) {
  for (int n = 1; n <= 20; ++n) {
    const int promised = n - isqrt(n);
    const Instance inst = cyclic_factorization(n);
    const FindResult found = find_rainbow(inst, std::max(1, promised));
    c.require(found.matching.size() >= promised,
              "cyclic(" + std::to_string(n) + ") gave " +
                  std::to_string(found.matching.size()) + " < " +
                  std::to_string(promised));
  }
}

// ---------------------------------------------------------------------------
// 7. Oracle equivalence on random and generator instances
void criterion_oracle_equivalence(Checker& c) {
  for (int trial = 0; trial < 200; ++trial) {
    std::mt19937_64 rng(derive_seed(0x0AC7E, trial));
    const int n = 1 + static_cast<int>(bounded_random(rng, 3));
    const int classes = 1 + static_cast<int>(bounded_random(rng, 5));
    const int side_a = n + static_cast<int>(bounded_random(rng, 2));
    const int side_b = n + static_cast<int>(bounded_random(rng, 2));
    const Instance inst =
        random_instance({n, classes, side_a, side_b, derive_seed(0x0AC7F, trial)});
    c.require(max_rainbow(inst).size == brute_force_max_rainbow(inst),
              "random disagreement at trial " + std::to_string(trial));
  }

  std::vector<Instance> generated;
  for (int n = 2; n <= 5; ++n) generated.push_back(drisko_instance(n));
  for (int n = 1; n <= 7; ++n) generated.push_back(cyclic_factorization(n));
  for (int n : {2, 4}) generated.push_back(remark_general_instance(n));
  for (std::size_t i = 0; i < generated.size(); ++i)
    c.require(max_rainbow(generated[i]).size == brute_force_max_rainbow(generated[i]),
              "generator disagreement at index " + std::to_string(i));
}

// ---------------------------------------------------------------------------
// 8. Path and counting certificates over >= 1000 recorded augmentations
void criterion_certificates(Checker& c) {
  int augmentations = 0;
  int exhausted_states = 0;

  auto check_augmentation = [&](const Instance& inst, const RainbowMatching& before,
                                const Augmented& aug) {
    c.require(aug.path.add.size() == aug.path.remove.size() + 1, "|add| != |remove|+1");

    std::set<int> used_before;
    for (const auto& entry : before.entries) used_before.insert(entry.color);

    // layer labels = rank among unused colors in ascending order
    std::vector<int> unused;
    for (int col = 0; col < inst.num_classes(); ++col)
      if (!used_before.count(col)) unused.push_back(col);
    auto label_of = [&](int color) {
      for (std::size_t i = 0; i < unused.size(); ++i)
        if (unused[i] == color) return static_cast<int>(i) + 1;
      return -1;
    };

    std::set<int> add_colors;
    int prev_label = -1;
    for (std::size_t i = 0; i < aug.path.add.size(); ++i) {
      const int color = aug.path.add[i].color;
      c.require(add_colors.insert(color).second, "repeated color in add");
      c.require(!used_before.count(color), "add color already used");
      const int label = label_of(color);
      c.require(label >= 1, "add color not an unused class");
      if (i > 0) c.require(label < prev_label, "layer labels not strictly decreasing");
      prev_label = label;
    }

    std::set<int> walk_a, walk_b;
    for (const auto& entry : aug.path.add) {
      c.require(walk_a.insert(entry.edge.u).second, "walk revisits an A-vertex");
      c.require(walk_b.insert(entry.edge.v).second, "walk revisits a B-vertex");
    }

    c.require(is_rainbow_matching(inst, aug.matching), "post-augmentation invalid");
    c.require(aug.matching.size() == before.size() + 1, "wrong post size");
  };

  // corpora: random instances at the guarantee threshold plus extremal
  // families that terminate in Exhausted states
  std::vector<Instance> corpus;
  for (int trial = 0; trial < 280; ++trial) {
    std::mt19937_64 rng(derive_seed(0xCE27, trial));
    const int n = 2 + static_cast<int>(bounded_random(rng, 5));
    corpus.push_back(
        random_instance({n, 2 * n - 1, n, n, derive_seed(0xCE28, trial)}));
  }
  for (int n = 2; n <= 7; ++n) corpus.push_back(drisko_instance(n));
  for (int n = 2; n <= 12; ++n) corpus.push_back(cyclic_factorization(n));

  for (const Instance& inst : corpus) {
    RainbowMatching rm;
    while (rm.size() < inst.n) {
      const AugmentOutcome outcome = augment_once(inst, rm);
      if (const auto* aug = std::get_if<Augmented>(&outcome)) {
        check_augmentation(inst, rm, *aug);
        rm = aug->matching;
        ++augmentations;
      } else {
        const auto& ex = std::get<Exhausted>(outcome);
        c.require(check_counting_certificate(inst, ex.state, rm.size()),
                  "counting certificate failed");
        ++exhausted_states;
        break;
      }
    }
  }

  c.require(augmentations >= 1000, "only " + std::to_string(augmentations) +
                                       " augmentations recorded");
  c.require(exhausted_states >= 10, "too few exhausted outcomes exercised");
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Checker&)> run;
};

} // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "bound table (n <= 50) with spot values", 1.0, criterion_bound_table},
      {2, "drisko tightness: exact max = n-1 for n in 2..7", 30.0,
       criterion_drisko_tightness},
      {3, "drisko guarantee: 200 random instances per n in 2..5 at N=2n-1", 60.0,
       criterion_drisko_guarantee},
      {4, "remark construction: no full rainbow matching (n in {2,4,6})", 30.0,
       criterion_remark},
      {5, "constructive soundness + guarantee sweep (1000 instances)", 300.0,
       criterion_soundness_sweep},
      {6, "sqrt-deficiency corner: cyclic(n) reaches n - floor(sqrt(n)), n <= 20", 60.0,
       criterion_sqrt_deficiency},
      {7, "oracle equivalence: solver vs brute force", 60.0,
       criterion_oracle_equivalence},
      {8, "path and counting certificates (>= 1000 augmentations)", 60.0,
       criterion_certificates},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool passed = true;
    try {
      Checker checker;
      criterion.run(checker);
    } catch (const InternalContradictionError& e) {
      g_internal_contradiction_seen = true;
      passed = false;
      detail = std::string("InternalContradiction: ") + e.what();
    } catch (const Failure& f) {
      passed = false;
      detail = f.detail;
    } catch (const std::exception& e) {
      passed = false;
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (passed && elapsed > criterion.budget_seconds) {
      passed = false;
      detail = "exceeded time budget of " + std::to_string(criterion.budget_seconds) + " s";
    }
    if (!passed) ++failures;
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", passed ? "PASS" : "FAIL",
                criterion.id, criterion.name.c_str(), elapsed,
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
  }

  // 9. InternalContradiction must never surface anywhere above
  const bool no_contradiction = !g_internal_contradiction_seen;
  if (!no_contradiction) ++failures;
  std::printf("[%s] criterion 9: InternalContradiction never raised (0.00 s)\n",
              no_contradiction ? "PASS" : "FAIL");

  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
