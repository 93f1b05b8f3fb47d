#pragma once

#include <cstdint>
#include <optional>

#include "rainbow/core.hpp"

namespace rainbow {

struct SolverConfig {
  std::optional<long long> node_budget;
  bool use_matching_bound = true;
  std::optional<int> time_budget_ms;
  /// Recompute the matching relaxation only at depths divisible by this;
  /// other nodes reuse the parent's (safe, weaker) value.
  int matching_bound_stride = 1;
};

struct SolveResult {
  int size = 0;
  RainbowMatching witness;
  bool optimal = true; // false only when a budget was exhausted
  long long nodes_explored = 0;
};

/// Thrown by brute_force_max_rainbow when the enumeration guard trips.
class TooLargeError : public std::runtime_error {
 public:
  explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact maximum rainbow matching by depth-first branch and bound: classes
/// are visited in ascending size (stable on index); at each class the search
/// branches on every usable edge in input order and then on skipping the
/// class. Prunes on remaining-class count and, when enabled, on the maximum
/// ordinary matching of the still-usable edges of the remaining classes.
SolveResult max_rainbow(const Instance& inst, const SolverConfig& cfg = {});

/// Reference oracle: exhaustive enumeration of one-edge-or-skip per class.
/// Guarded by prod(|class|+1) <= 10^7; throws TooLargeError beyond that.
int brute_force_max_rainbow(const Instance& inst);

/// Decision form: true iff a rainbow matching of size s exists. Early-exits
/// as soon as the incumbent reaches s. Requires 0 <= s <= n.
bool has_rainbow_of_size(const Instance& inst, int s, const SolverConfig& cfg = {});

/// Maximum cardinality matching of an arbitrary graph on vcount vertices
/// (blossom contraction; handles bipartite graphs as a special case).
/// Exposed for the solver's relaxation bound and for its tests.
int max_matching_size(int vcount, const std::vector<Edge>& edges);

} // namespace rainbow
