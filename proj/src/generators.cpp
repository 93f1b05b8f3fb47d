#include "rainbow/generators.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace rainbow {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bounded_random: bound must be >= 1");
  if (bound == 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % bound + 1) % bound; // 2^64 mod bound
  std::uint64_t x = rng();
  while (rem != 0 && x >= max - rem + 1) x = rng(); // reject the biased tail
  return x % bound;
}

std::vector<int> sample_distinct(std::mt19937_64& rng, int count, int universe) {
  if (count < 0 || count > universe)
    throw std::invalid_argument("sample_distinct: need 0 <= count <= universe");
  std::vector<int> pool(universe);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(bounded_random(rng, universe - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::vector<int> random_permutation(std::mt19937_64& rng, int count) {
  return sample_distinct(rng, count, count);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

Instance drisko_instance(int n) {
  if (n < 2)
    throw std::invalid_argument("drisko_instance: n must be >= 2 (cycle degenerate)");
  Instance inst;
  inst.kind = GraphKind::Bipartite;
  inst.n = n;
  inst.side_a = n;
  inst.side_b = n;

  std::vector<Edge> identity, shifted;
  identity.reserve(n);
  shifted.reserve(n);
  for (int i = 0; i < n; ++i) {
    identity.push_back({i, i});
    shifted.push_back({(i + 1) % n, i});
  }
  inst.matchings.assign(n - 1, identity);
  inst.matchings.insert(inst.matchings.end(), n - 1, shifted);
  return inst;
}

Instance remark_general_instance(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument(
        "remark_general_instance: n must be even and >= 2 (the construction "
        "needs 2n = 4k vertices)");
  Instance inst;
  inst.kind = GraphKind::General;
  inst.n = n;
  inst.vertex_count = 2 * n;

  std::vector<Edge> even, odd, skip;
  for (int i = 0; i < n; ++i) even.push_back({2 * i, 2 * i + 1});
  for (int i = 0; i < n - 1; ++i) odd.push_back({2 * i + 1, 2 * i + 2});
  odd.push_back({0, 2 * n - 1}); // the wrap-around edge, canonical order
  for (int i = 0; i < n / 2; ++i) {
    skip.push_back({4 * i, 4 * i + 2});
    skip.push_back({4 * i + 1, 4 * i + 3});
  }

  inst.matchings.assign(n - 1, even);
  inst.matchings.insert(inst.matchings.end(), n - 1, odd);
  inst.matchings.push_back(std::move(skip));
  return inst;
}

Instance cyclic_factorization(int n) {
  if (n < 1) throw std::invalid_argument("cyclic_factorization: n must be >= 1");
  Instance inst;
  inst.kind = GraphKind::Bipartite;
  inst.n = n;
  inst.side_a = n;
  inst.side_b = n;
  inst.matchings.resize(n);
  for (int c = 0; c < n; ++c) {
    inst.matchings[c].reserve(n);
    for (int i = 0; i < n; ++i) inst.matchings[c].push_back({i, (i + c) % n});
  }
  return inst;
}

Instance random_instance(const RandomModel& model) {
  if (model.n < 1 || model.num_classes < 1)
    throw std::invalid_argument("random_instance: n and N must be >= 1");
  if (model.side_a < model.n || model.side_b < model.n)
    throw std::invalid_argument("random_instance: side sizes must be >= n");

  std::mt19937_64 rng(model.seed);
  Instance inst;
  inst.kind = GraphKind::Bipartite;
  inst.n = model.n;
  inst.side_a = model.side_a;
  inst.side_b = model.side_b;
  inst.matchings.resize(model.num_classes);
  for (auto& cls : inst.matchings) {
    const auto avs = sample_distinct(rng, model.n, model.side_a);
    const auto bvs = sample_distinct(rng, model.n, model.side_b);
    const auto perm = random_permutation(rng, model.n);
    cls.reserve(model.n);
    for (int i = 0; i < model.n; ++i) cls.push_back({avs[i], bvs[perm[i]]});
  }
  return inst;
}

} // namespace rainbow
