#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

/// One retained layer of the augmentation bookkeeping: the sub-matching
/// F_i selected from an unused class, the (n-t)-element set B_i of its
/// newly claimed B-endpoints, and A_i, the partner image of B_i.
struct Layer {
  int color = -1;
  std::vector<Edge> f_edges;
  std::vector<int> b_set; // sorted
  std::vector<int> a_set; // sorted
};

/// The bookkeeping built by a single augmentation attempt. All fields are
/// plain data so tests can assemble (and corrupt) states by hand.
struct LayerState {
  std::vector<int> partner_a_of_b; // per B-vertex: matched A-vertex or -1
  std::vector<int> partner_b_of_a; // inverse map
  std::vector<char> free_a;        // A_0 membership
  std::vector<char> free_b;        // B_0 membership
  std::vector<char> reduced_cover; // A-vertices still covered by the reduced matching
  std::vector<Layer> layers;
};

/// The alternating path: add[0] comes from the layer under construction,
/// later add entries descend through strictly earlier layers; remove lists
/// the matching edges swapped out. Always |add| = |remove| + 1.
struct AugmentingPath {
  std::vector<RainbowEntry> add;
  std::vector<RainbowEntry> remove;
};

struct Augmented {
  RainbowMatching matching; // size t+1
  AugmentingPath path;
  LayerState layers_at_hit; // layers completed before the path was found
};

struct Exhausted {
  LayerState state; // every unused class consumed as a layer
};

using AugmentOutcome = std::variant<Augmented, Exhausted>;

class NotBipartiteError : public std::invalid_argument {
 public:
  explicit NotBipartiteError(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidStateError : public std::invalid_argument {
 public:
  explicit InvalidStateError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an augmentation attempt exhausts all unused classes even
/// though the class count meets the guarantee threshold. That outcome is
/// provably impossible, so reaching it means the implementation is wrong.
class InternalContradictionError : public std::logic_error {
 public:
  explicit InternalContradictionError(const std::string& what) : std::logic_error(what) {}
};

/// One augmentation attempt. Builds layers F_1, F_2, ... from the unused
/// classes (ascending index); the moment a selected edge touches B_0 the
/// alternating path down through earlier layers is traced and applied.
/// Requires a valid bipartite instance and a valid matching with |rm| < n.
AugmentOutcome augment_once(const Instance& inst, const RainbowMatching& rm);

struct TraceStep {
  int t_before = 0;
  bool augmented = false;
  AugmentingPath path; // empty unless augmented
  LayerState state;    // layers at the hit, or the full exhausted state
};

struct Trace {
  std::vector<TraceStep> steps;
};

struct FindResult {
  RainbowMatching matching;
  bool met_target = false;
  int steps = 0; // successful augmentations
};

/// Greedy start plus augment_once until the target size is reached or the
/// layer construction exhausts. Default target is n - guaranteed_k(n, N),
/// the size the class count provably supports.
FindResult find_rainbow(const Instance& inst,
                        std::optional<int> target = std::nullopt,
                        Trace* trace = nullptr);

/// Certificate check for an Exhausted outcome at matching size t: verifies
/// the layer invariants (disjointness, cardinalities, partner images,
/// V(F_i) disjoint from B_0, |F_i| = i(n-t)) and the counting inequality
/// (N-t)(n-t) <= t.
bool check_counting_certificate(const Instance& inst, const LayerState& state, int t);

std::string serialize_layer_state(const LayerState& state);
std::string serialize_path(const AugmentingPath& path);
std::string serialize_trace(const Trace& trace);

} // namespace rainbow
