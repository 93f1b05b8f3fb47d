#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

/// Parameters for the seeded random corpus: N independent classes, each a
/// uniformly sampled size-n matching between [0, side_a) and [0, side_b).
struct RandomModel {
  int n = 0;
  int num_classes = 0;
  int side_a = 0;
  int side_b = 0;
  std::uint64_t seed = 0;
};

// Seeded randomness is built on std::mt19937_64 (whose output stream is
// fixed by the standard) with hand-rolled bounded draws and Fisher-Yates
// shuffles, so corpora reproduce bit-for-bit across platforms.
// std::uniform_int_distribution is deliberately not used: its algorithm
// is implementation-defined.

/// Uniform draw from [0, bound) via rejection sampling. bound >= 1.
std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t bound);

/// count distinct values from [0, universe), in selection order
/// (partial Fisher-Yates over the identity array).
std::vector<int> sample_distinct(std::mt19937_64& rng, int count, int universe);

/// Uniform permutation of [0, count).
std::vector<int> random_permutation(std::mt19937_64& rng, int count);

/// Stream split: a stable per-trial seed derived from a master seed, so
/// independent trials can run in any order (splitmix64-based).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// The cycle C_{2n} with both perfect matchings repeated n-1 times:
/// 2n-2 classes of size n with no rainbow matching of size n.
/// Classes 0..n-2 are {(a_i,b_i)}, classes n-1..2n-3 are {(a_{i+1 mod n},b_i)}.
Instance drisko_instance(int n);

/// The general-graph example on 2n vertices (n even): n-1 copies of the even
/// perfect matching, n-1 copies of the odd one, plus one "skip" class, for
/// 2n-1 classes total with no full rainbow matching. Vertices are 0-based.
Instance remark_general_instance(int n);

/// The cyclic Latin square 1-factorization of K_{n,n}:
/// class c = {(a_i, b_{(i+c) mod n})}.
Instance cyclic_factorization(int n);

/// Seeded random instance per RandomModel; strict-valid by construction.
Instance random_instance(const RandomModel& model);

} // namespace rainbow
