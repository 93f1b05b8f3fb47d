#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

enum class GraphKind { Bipartite, General };

/// Which partition a vertex belongs to. General instances use a single
/// index space and report Side::A in diagnostics.
enum class Side { A, B };

struct VertexRef {
  Side side = Side::A;
  int index = 0;
  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// A single edge. Bipartite: u indexes side A, v indexes side B.
/// General: u < v over one vertex space, no loops.
struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// An edge-colored multigraph given as its color classes: N matchings,
/// nominally of size n each. Parallel edges across classes are fine.
struct Instance {
  GraphKind kind = GraphKind::Bipartite;
  int n = 0;            // required per-class matching size
  int side_a = 0;       // bipartite only
  int side_b = 0;       // bipartite only
  int vertex_count = 0; // general only
  std::vector<std::vector<Edge>> matchings;

  int num_classes() const { return static_cast<int>(matchings.size()); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

struct RainbowEntry {
  int color = 0; // class index
  Edge edge;
  friend auto operator<=>(const RainbowEntry&, const RainbowEntry&) = default;
};

/// A partial rainbow matching: pairwise vertex-disjoint edges, one per
/// color at most, each edge drawn from its named class. Operations in
/// this library keep entries sorted by color.
struct RainbowMatching {
  std::vector<RainbowEntry> entries;

  int size() const { return static_cast<int>(entries.size()); }
  friend bool operator==(const RainbowMatching&, const RainbowMatching&) = default;
};

struct Violation {
  int class_index = -1; // -1 for instance-level problems
  std::string description;
  std::optional<VertexRef> vertex;
  std::optional<Edge> edge;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Thrown by parse_instance / parse_rainbow on malformed documents.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Checks every Instance invariant and reports all violations instead of
/// throwing. strict requires |class| == n, lenient only |class| >= n.
ValidationReport validate_instance(const Instance& inst, bool strict);

/// True iff rm is a valid rainbow matching of inst: distinct colors,
/// pairwise vertex-disjoint edges, each edge present in its named class.
bool is_rainbow_matching(const Instance& inst, const RainbowMatching& rm);

/// Deterministic greedy baseline: scan classes in ascending index, take the
/// first edge of each class that is disjoint from the matching so far.
/// The result is inclusion-maximal.
RainbowMatching greedy_rainbow(const Instance& inst);

/// floor((k+2)n/(k+1)) - (k+1), evaluated as n + n/(k+1) - (k+1) so the
/// product never overflows. Requires n >= 1 and 0 <= k < n.
long long theorem_bound(long long n, long long k);

/// Smallest k in [0, n-1] with theorem_bound(n, k) <= num_classes, i.e. the
/// deficiency the bound guarantees for a union of num_classes matchings of
/// size n. Always engaged for n >= 1, num_classes >= 1.
std::optional<long long> guaranteed_k(long long n, long long num_classes);

/// JSON (de)serialization. Round-trip preserves class and edge order.
/// parse_instance checks the schema only; call validate_instance separately.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

RainbowMatching parse_rainbow(const std::string& text);
std::string serialize_rainbow(const RainbowMatching& rm);

/// Diagnostic vertex label: "a3" / "b0" for bipartite, "7" for general.
std::string vertex_name(GraphKind kind, Side side, int index);

} // namespace rainbow
