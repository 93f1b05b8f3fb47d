#include "rainbow/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <queue>

namespace rainbow {

namespace {

// Maximum cardinality matching with blossom contraction (O(V^3)).
class BlossomMatcher {
 public:
  explicit BlossomMatcher(int n) : n_(n), adj_(n) {}

  void add_edge(int a, int b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  int solve() {
    match_.assign(n_, -1);
    int matched = 0;
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1 && augment_from(v)) ++matched;
    return matched;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> on_path(n_, 0);
    while (true) {
      a = base_[a];
      on_path[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (on_path[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int stem, int child) {
    while (base_[v] != stem) {
      in_blossom_[base_[v]] = 1;
      in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  bool augment_from(int root) {
    visited_.assign(n_, 0);
    parent_.assign(n_, -1);
    base_.resize(n_);
    std::iota(base_.begin(), base_.end(), 0);

    visited_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          // odd cycle: contract the blossom at the common ancestor
          const int stem = lca(v, to);
          in_blossom_.assign(n_, 0);
          mark_path(v, stem, to);
          mark_path(to, stem, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = stem;
              if (!visited_[i]) {
                visited_[i] = 1;
                q.push(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) {
            // alternate along the tree to flip the augmenting path
            int u = to;
            while (u != -1) {
              const int pv = parent_[u];
              const int next = match_[pv];
              match_[u] = pv;
              match_[pv] = u;
              u = next;
            }
            return true;
          }
          visited_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return false;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> visited_, in_blossom_;
};

// Unified vertex numbering: bipartite B-vertices are offset by side_a.
struct VertexSpace {
  bool bipartite;
  int offset; // side_a when bipartite, 0 otherwise
  int count;

  explicit VertexSpace(const Instance& inst)
      : bipartite(inst.kind == GraphKind::Bipartite),
        offset(bipartite ? inst.side_a : 0),
        count(bipartite ? inst.side_a + inst.side_b : inst.vertex_count) {}

  int left(const Edge& e) const { return e.u; }
  int right(const Edge& e) const { return bipartite ? offset + e.v : e.v; }
};

void require_valid(const Instance& inst) {
  const auto rep = validate_instance(inst, /*strict=*/false);
  if (!rep.ok)
    throw std::invalid_argument("invalid instance: " + rep.violations.front().description);
}

void require_valid(const SolverConfig& cfg) {
  if (cfg.node_budget && *cfg.node_budget < 1)
    throw std::invalid_argument("node_budget must be positive when present");
  if (cfg.time_budget_ms && *cfg.time_budget_ms < 1)
    throw std::invalid_argument("time_budget_ms must be positive when present");
  if (cfg.matching_bound_stride < 1)
    throw std::invalid_argument("matching_bound_stride must be >= 1");
}

class RainbowSearch {
 public:
  RainbowSearch(const Instance& inst, const SolverConfig& cfg,
                std::optional<int> stop_size)
      : inst_(inst), cfg_(cfg), stop_size_(stop_size), space_(inst) {
    order_.resize(inst.num_classes());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return inst.matchings[a].size() < inst.matchings[b].size();
    });
    used_.assign(space_.count, 0);
    if (cfg_.time_budget_ms) deadline_ = Clock::now() + std::chrono::milliseconds(*cfg_.time_budget_ms);
  }

  SolveResult run() {
    dfs(0, std::numeric_limits<int>::max());
    SolveResult res;
    res.size = best_size_;
    res.witness.entries = best_entries_;
    std::sort(res.witness.entries.begin(), res.witness.entries.end());
    res.optimal = !budget_hit_;
    res.nodes_explored = nodes_;
    return res;
  }

 private:
  using Clock = std::chrono::steady_clock;

  bool out_of_budget() {
    if (cfg_.node_budget && nodes_ > *cfg_.node_budget) return true;
    if (deadline_ && (nodes_ & 255) == 0 && Clock::now() > *deadline_) return true;
    return false;
  }

  // Maximum ordinary matching over the usable edges of classes order_[pos..).
  int matching_relaxation(std::size_t pos) const {
    std::vector<Edge> usable;
    for (std::size_t i = pos; i < order_.size(); ++i) {
      for (const Edge& e : inst_.matchings[order_[i]]) {
        const int a = space_.left(e), b = space_.right(e);
        if (!used_[a] && !used_[b]) usable.push_back({a, b});
      }
    }
    std::sort(usable.begin(), usable.end());
    usable.erase(std::unique(usable.begin(), usable.end()), usable.end());
    BlossomMatcher matcher(space_.count);
    for (const Edge& e : usable) matcher.add_edge(e.u, e.v);
    return matcher.solve();
  }

  void dfs(std::size_t pos, int inherited_relaxation) {
    if (done_) return;
    ++nodes_;
    if (out_of_budget()) {
      budget_hit_ = true;
      done_ = true;
      return;
    }

    const int current = static_cast<int>(stack_.size());
    if (current > best_size_) {
      best_size_ = current;
      best_entries_ = stack_;
      if (stop_size_ && best_size_ >= *stop_size_) {
        done_ = true;
        return;
      }
    }
    if (pos == order_.size()) return;

    const int remaining = static_cast<int>(order_.size() - pos);
    if (current + remaining <= best_size_) return;

    int relaxation = inherited_relaxation;
    if (cfg_.use_matching_bound) {
      if (pos % static_cast<std::size_t>(cfg_.matching_bound_stride) == 0)
        relaxation = matching_relaxation(pos);
      if (current + std::min(relaxation, remaining) <= best_size_) return;
    }

    const int cls = order_[pos];
    for (const Edge& e : inst_.matchings[cls]) {
      const int a = space_.left(e), b = space_.right(e);
      if (used_[a] || used_[b]) continue;
      used_[a] = used_[b] = 1;
      stack_.push_back({cls, e});
      dfs(pos + 1, relaxation);
      stack_.pop_back();
      used_[a] = used_[b] = 0;
      if (done_) return;
    }
    dfs(pos + 1, relaxation); // skip this class
  }

  const Instance& inst_;
  SolverConfig cfg_;
  std::optional<int> stop_size_;
  VertexSpace space_;
  std::vector<int> order_;
  std::vector<char> used_;
  std::vector<RainbowEntry> stack_;
  std::vector<RainbowEntry> best_entries_;
  int best_size_ = 0;
  long long nodes_ = 0;
  bool budget_hit_ = false;
  bool done_ = false;
  std::optional<Clock::time_point> deadline_;
};

} // namespace

int max_matching_size(int vcount, const std::vector<Edge>& edges) {
  BlossomMatcher matcher(vcount);
  for (const Edge& e : edges) matcher.add_edge(e.u, e.v);
  return matcher.solve();
}

SolveResult max_rainbow(const Instance& inst, const SolverConfig& cfg) {
  require_valid(inst);
  require_valid(cfg);
  return RainbowSearch(inst, cfg, std::nullopt).run();
}

int brute_force_max_rainbow(const Instance& inst) {
  require_valid(inst);
  double combos = 1.0;
  for (const auto& cls : inst.matchings) {
    combos *= static_cast<double>(cls.size() + 1);
    if (combos > 1e7)
      throw TooLargeError("brute_force_max_rainbow: selection space exceeds 10^7");
  }

  const VertexSpace space(inst);
  std::vector<char> used(space.count, 0);
  int best = 0;

  auto recurse = [&](auto&& self, int cls, int chosen) -> void {
    if (cls == inst.num_classes()) {
      best = std::max(best, chosen);
      return;
    }
    self(self, cls + 1, chosen); // skip
    for (const Edge& e : inst.matchings[cls]) {
      const int a = space.left(e), b = space.right(e);
      if (used[a] || used[b]) continue;
      used[a] = used[b] = 1;
      self(self, cls + 1, chosen + 1);
      used[a] = used[b] = 0;
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

bool has_rainbow_of_size(const Instance& inst, int s, const SolverConfig& cfg) {
  require_valid(inst);
  require_valid(cfg);
  if (s < 0 || s > inst.n)
    throw std::invalid_argument("has_rainbow_of_size: need 0 <= s <= n");
  if (s == 0) return true;
  return RainbowSearch(inst, cfg, s).run().size >= s;
}

} // namespace rainbow
