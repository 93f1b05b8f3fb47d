#include "rainbow/constructive.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "json.hpp"

namespace rainbow {

namespace {

using ordered_json = nlohmann::ordered_json;

struct AugmentContext {
  const Instance& inst;
  const RainbowMatching& rm;
  LayerState st;
  std::vector<int> rm_color_at_a;          // color of the matching edge at each covered A-vertex
  std::vector<int> a_layer;                // 1-based layer whose A-set holds the vertex, else -1
  std::vector<char> b_taken;               // claimed by some B_i
  std::vector<std::vector<int>> f_a_at_b;  // per layer: B-vertex -> F-edge A-endpoint
};

AugmentContext make_context(const Instance& inst, const RainbowMatching& rm) {
  AugmentContext ctx{inst, rm, {}, {}, {}, {}, {}};
  ctx.st.partner_a_of_b.assign(inst.side_b, -1);
  ctx.st.partner_b_of_a.assign(inst.side_a, -1);
  ctx.st.free_a.assign(inst.side_a, 1);
  ctx.st.free_b.assign(inst.side_b, 1);
  ctx.st.reduced_cover.assign(inst.side_a, 0);
  ctx.rm_color_at_a.assign(inst.side_a, -1);
  ctx.a_layer.assign(inst.side_a, -1);
  ctx.b_taken.assign(inst.side_b, 0);
  for (const auto& entry : rm.entries) {
    ctx.st.partner_a_of_b[entry.edge.v] = entry.edge.u;
    ctx.st.partner_b_of_a[entry.edge.u] = entry.edge.v;
    ctx.st.free_a[entry.edge.u] = 0;
    ctx.st.free_b[entry.edge.v] = 0;
    ctx.st.reduced_cover[entry.edge.u] = 1;
    ctx.rm_color_at_a[entry.edge.u] = entry.color;
  }
  return ctx;
}

// Trace the alternating path from a selected edge whose B-endpoint is free.
// Descends through strictly earlier layers: matching edge up from the
// A-endpoint, then the unique F-edge at the reached B-vertex, until the
// walk lands on a free A-vertex.
Augmented build_augmented(AugmentContext& ctx, int hit_color, Edge hit_edge) {
  AugmentingPath path;
  path.add.push_back({hit_color, hit_edge});

  int a = hit_edge.u;
  while (!ctx.st.free_a[a]) {
    const int layer = ctx.a_layer[a];
    const int b = layer >= 1 ? ctx.st.partner_b_of_a[a] : -1;
    const int next_a = b >= 0 ? ctx.f_a_at_b[layer - 1][b] : -1;
    if (next_a < 0)
      throw std::logic_error("augment_once: internal error: descent left the layer structure");
    path.remove.push_back({ctx.rm_color_at_a[a], Edge{a, b}});
    path.add.push_back({ctx.st.layers[layer - 1].color, Edge{next_a, b}});
    a = next_a;
  }

  RainbowMatching next;
  next.entries.reserve(ctx.rm.entries.size() + 1);
  for (const auto& entry : ctx.rm.entries) {
    const bool removed =
        std::any_of(path.remove.begin(), path.remove.end(),
                    [&](const RainbowEntry& r) { return r.color == entry.color; });
    if (!removed) next.entries.push_back(entry);
  }
  next.entries.insert(next.entries.end(), path.add.begin(), path.add.end());
  std::sort(next.entries.begin(), next.entries.end());

  assert(next.size() == ctx.rm.size() + 1);
  assert(is_rainbow_matching(ctx.inst, next));
  return Augmented{std::move(next), std::move(path), std::move(ctx.st)};
}

ordered_json edge_json(const Edge& e) { return ordered_json::array({e.u, e.v}); }

ordered_json entries_json(const std::vector<RainbowEntry>& entries) {
  ordered_json arr = ordered_json::array();
  for (const auto& entry : entries) {
    ordered_json ej;
    ej["color"] = entry.color;
    ej["edge"] = edge_json(entry.edge);
    arr.push_back(std::move(ej));
  }
  return arr;
}

std::vector<int> bitmap_indices(const std::vector<char>& bits) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(bits.size()); ++i)
    if (bits[i]) out.push_back(i);
  return out;
}

ordered_json layer_state_json(const LayerState& st) {
  ordered_json doc;
  ordered_json partner = ordered_json::array();
  for (int b = 0; b < static_cast<int>(st.partner_a_of_b.size()); ++b)
    if (st.partner_a_of_b[b] >= 0) partner.push_back({b, st.partner_a_of_b[b]});
  doc["partner"] = std::move(partner);
  doc["free_a"] = bitmap_indices(st.free_a);
  doc["free_b"] = bitmap_indices(st.free_b);
  doc["reduced_cover"] = bitmap_indices(st.reduced_cover);
  ordered_json layers = ordered_json::array();
  for (const Layer& layer : st.layers) {
    ordered_json lj;
    lj["color"] = layer.color;
    ordered_json fe = ordered_json::array();
    for (const Edge& e : layer.f_edges) fe.push_back(edge_json(e));
    lj["f_edges"] = std::move(fe);
    lj["b_set"] = layer.b_set;
    lj["a_set"] = layer.a_set;
    layers.push_back(std::move(lj));
  }
  doc["layers"] = std::move(layers);
  return doc;
}

ordered_json path_json(const AugmentingPath& path) {
  ordered_json doc;
  doc["add"] = entries_json(path.add);
  doc["remove"] = entries_json(path.remove);
  return doc;
}

} // namespace

AugmentOutcome augment_once(const Instance& inst, const RainbowMatching& rm) {
  if (inst.kind != GraphKind::Bipartite)
    throw NotBipartiteError("augment_once: layer construction requires a bipartite instance");
  {
    const auto rep = validate_instance(inst, /*strict=*/false);
    if (!rep.ok)
      throw std::invalid_argument("augment_once: invalid instance: " +
                                  rep.violations.front().description);
  }
  if (!is_rainbow_matching(inst, rm))
    throw InvalidStateError("augment_once: rm is not a valid rainbow matching of this instance");
  const int n = inst.n;
  const int t = rm.size();
  if (t >= n)
    throw InvalidStateError("augment_once: matching already has size >= n");

  AugmentContext ctx = make_context(inst, rm);
  std::vector<char> color_used(inst.num_classes(), 0);
  for (const auto& entry : rm.entries) color_used[entry.color] = 1;

  const int per_layer = n - t;
  int label = 0;
  for (int c = 0; c < inst.num_classes(); ++c) {
    if (color_used[c]) continue;
    ++label;

    // F_label: edges of this class incident to A-vertices the reduced
    // matching no longer covers, lowest A-index first.
    std::vector<Edge> sorted = inst.matchings[c];
    std::sort(sorted.begin(), sorted.end(),
              [](const Edge& x, const Edge& y) { return x.u < y.u; });
    const int quota = label * per_layer;
    std::vector<Edge> selected;
    selected.reserve(quota);
    for (const Edge& e : sorted) {
      if (static_cast<int>(selected.size()) == quota) break;
      if (ctx.st.reduced_cover[e.u]) continue;
      selected.push_back(e);
      if (ctx.st.free_b[e.v]) return build_augmented(ctx, c, e);
    }
    if (static_cast<int>(selected.size()) < quota)
      throw std::invalid_argument(
          "augment_once: class " + std::to_string(c) +
          " cannot supply the layer quota; instance violates the size hypothesis");

    // No edge reached B_0, so the layer is retained: claim the n-t
    // lowest unclaimed B-endpoints and free their partners.
    std::vector<int> b_new;
    for (const Edge& e : selected)
      if (!ctx.b_taken[e.v]) b_new.push_back(e.v);
    std::sort(b_new.begin(), b_new.end());
    if (static_cast<int>(b_new.size()) < per_layer)
      throw std::logic_error("augment_once: internal error: short B-layer");
    b_new.resize(per_layer);

    Layer layer;
    layer.color = c;
    layer.f_edges = std::move(selected);
    layer.b_set = b_new;
    for (int b : b_new) {
      const int a = ctx.st.partner_a_of_b[b];
      assert(a >= 0);
      layer.a_set.push_back(a);
      ctx.b_taken[b] = 1;
      ctx.a_layer[a] = label;
      ctx.st.reduced_cover[a] = 0;
    }
    std::sort(layer.a_set.begin(), layer.a_set.end());

    std::vector<int> lookup(inst.side_b, -1);
    for (const Edge& e : layer.f_edges) lookup[e.v] = e.u;
    ctx.f_a_at_b.push_back(std::move(lookup));
    ctx.st.layers.push_back(std::move(layer));
  }

  // Every unused class consumed. The counting argument makes this
  // impossible once the class count reaches the bound for deficiency
  // n-1-t, so treat that as a broken implementation, not a result.
  if (inst.num_classes() >= theorem_bound(n, n - 1 - t))
    throw InternalContradictionError(
        "augment_once: exhausted all classes although N >= theorem_bound(n, n-1-t); "
        "this contradicts the guarantee and indicates a bug");
  return Exhausted{std::move(ctx.st)};
}

FindResult find_rainbow(const Instance& inst, std::optional<int> target_opt, Trace* trace) {
  if (inst.kind != GraphKind::Bipartite)
    throw NotBipartiteError("find_rainbow: requires a bipartite instance");
  {
    const auto rep = validate_instance(inst, /*strict=*/false);
    if (!rep.ok)
      throw std::invalid_argument("find_rainbow: invalid instance: " +
                                  rep.violations.front().description);
  }
  const int n = inst.n;
  int target;
  if (target_opt) {
    target = *target_opt;
    if (target < 1 || target > n)
      throw std::invalid_argument("find_rainbow: target out of range [1, n]");
  } else {
    target = static_cast<int>(n - guaranteed_k(n, inst.num_classes()).value());
  }

  FindResult res;
  res.matching = greedy_rainbow(inst);
  while (res.matching.size() < target) {
    AugmentOutcome outcome = augment_once(inst, res.matching);
    if (auto* aug = std::get_if<Augmented>(&outcome)) {
      if (trace)
        trace->steps.push_back(
            {res.matching.size(), true, aug->path, std::move(aug->layers_at_hit)});
      res.matching = std::move(aug->matching);
      ++res.steps;
      assert(res.steps <= n); // one augmentation per unit of growth
    } else {
      auto& ex = std::get<Exhausted>(outcome);
      if (trace)
        trace->steps.push_back({res.matching.size(), false, {}, std::move(ex.state)});
      break;
    }
  }
  res.met_target = res.matching.size() >= target;
  return res;
}

bool check_counting_certificate(const Instance& inst, const LayerState& state, int t) {
  if (inst.kind != GraphKind::Bipartite) return false;
  const int n = inst.n;
  const int num_classes = inst.num_classes();
  const int per_layer = n - t;
  if (t < 0 || per_layer <= 0) return false;

  if (static_cast<int>(state.partner_a_of_b.size()) != inst.side_b ||
      static_cast<int>(state.partner_b_of_a.size()) != inst.side_a ||
      static_cast<int>(state.free_a.size()) != inst.side_a ||
      static_cast<int>(state.free_b.size()) != inst.side_b)
    return false;

  // partner consistency (both directions) and |matched B| = t
  int matched = 0;
  for (int b = 0; b < inst.side_b; ++b) {
    const int a = state.partner_a_of_b[b];
    if (a < 0) continue;
    if (a >= inst.side_a || state.partner_b_of_a[a] != b) return false;
    if (state.free_a[a] || state.free_b[b]) return false;
    ++matched;
  }
  if (matched != t) return false;
  for (int a = 0; a < inst.side_a; ++a) {
    const int b = state.partner_b_of_a[a];
    if (b < 0) continue;
    if (b >= inst.side_b || state.partner_a_of_b[b] != a) return false;
  }

  // exhausted means every unused class became a layer
  if (static_cast<int>(state.layers.size()) != num_classes - t) return false;

  std::set<int> seen_colors;
  std::set<int> claimed_a, claimed_b;
  int prev_color = -1;
  for (std::size_t i = 0; i < state.layers.size(); ++i) {
    const Layer& layer = state.layers[i];
    const int index = static_cast<int>(i) + 1;

    if (layer.color <= prev_color || layer.color >= num_classes) return false;
    prev_color = layer.color;
    if (!seen_colors.insert(layer.color).second) return false;

    // F_i: sub-matching of its class with |F_i| = i(n-t)
    if (static_cast<int>(layer.f_edges.size()) != index * per_layer) return false;
    const auto& cls = inst.matchings[layer.color];
    std::set<int> f_a, f_b;
    for (const Edge& e : layer.f_edges) {
      if (std::find(cls.begin(), cls.end(), e) == cls.end()) return false;
      if (!f_a.insert(e.u).second || !f_b.insert(e.v).second) return false;
      if (state.free_b[e.v]) return false; // Property 1: V(F_i) avoids B_0
    }

    if (static_cast<int>(layer.b_set.size()) != per_layer ||
        static_cast<int>(layer.a_set.size()) != per_layer)
      return false;

    std::set<int> image;
    for (int b : layer.b_set) {
      if (b < 0 || b >= inst.side_b) return false;
      if (state.free_b[b]) return false;               // disjoint from B_0
      if (!claimed_b.insert(b).second) return false;   // disjoint from earlier B_j
      if (!f_b.count(b)) return false;                 // drawn from V(F_i)
      image.insert(state.partner_a_of_b[b]);
    }
    std::set<int> a_set(layer.a_set.begin(), layer.a_set.end());
    if (a_set != image) return false; // A_i = f(B_i)
    for (int a : a_set) {
      if (a < 0 || a >= inst.side_a || state.free_a[a]) return false;
      if (!claimed_a.insert(a).second) return false;
    }
  }

  // reduced_cover: exactly the covered A-vertices no layer has freed
  if (static_cast<int>(state.reduced_cover.size()) != inst.side_a) return false;
  for (int a = 0; a < inst.side_a; ++a) {
    const bool expected = state.partner_b_of_a[a] >= 0 && !claimed_a.count(a);
    if (static_cast<bool>(state.reduced_cover[a]) != expected) return false;
  }

  const long long lhs = static_cast<long long>(num_classes - t) * per_layer;
  return lhs <= t;
}

std::string serialize_layer_state(const LayerState& state) {
  return layer_state_json(state).dump();
}

std::string serialize_path(const AugmentingPath& path) { return path_json(path).dump(); }

std::string serialize_trace(const Trace& trace) {
  ordered_json doc;
  ordered_json steps = ordered_json::array();
  for (const TraceStep& step : trace.steps) {
    ordered_json sj;
    sj["t_before"] = step.t_before;
    sj["outcome"] = step.augmented ? "augmented" : "exhausted";
    if (step.augmented) sj["path"] = path_json(step.path);
    sj["state"] = layer_state_json(step.state);
    steps.push_back(std::move(sj));
  }
  doc["steps"] = std::move(steps);
  return doc.dump();
}

} // namespace rainbow
