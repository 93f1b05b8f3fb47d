#include "rainbow/core.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "json.hpp"

namespace rainbow {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string kind_name(GraphKind kind) {
  return kind == GraphKind::Bipartite ? "bipartite" : "general";
}

// Translate a byte offset from nlohmann's parse_error into line/column.
std::pair<int, int> line_col_of(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

int require_positive_int(const ordered_json& obj, const char* field) {
  if (!obj.contains(field))
    throw ParseError(std::string("missing field '") + field + "'");
  const auto& v = obj.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError(std::string("field '") + field + "' must be a positive integer");
  if (v.get<long long>() > std::numeric_limits<int>::max())
    throw ParseError(std::string("field '") + field + "' is too large");
  return v.get<int>();
}

Edge parse_edge(const ordered_json& ej, GraphKind kind, int ci, int ei) {
  const std::string where =
      "matchings[" + std::to_string(ci) + "][" + std::to_string(ei) + "]";
  if (!ej.is_array() || ej.size() != 2 || !ej[0].is_number_integer() ||
      !ej[1].is_number_integer())
    throw ParseError(where + ": edge must be an array of two integers");
  long long u = ej[0].get<long long>();
  long long v = ej[1].get<long long>();
  if (u < 0 || v < 0)
    throw ParseError(where + ": vertex indices must be non-negative");
  if (kind == GraphKind::General) {
    if (u == v) throw ParseError(where + ": loop edge [" + std::to_string(u) +
                                 "," + std::to_string(v) + "]");
    if (u > v)
      throw ParseError(where + ": endpoints must be in canonical order (u < v)");
  }
  return Edge{static_cast<int>(u), static_cast<int>(v)};
}

void add_violation(ValidationReport& rep, int class_index, std::string text,
                   std::optional<VertexRef> vertex = std::nullopt,
                   std::optional<Edge> edge = std::nullopt) {
  rep.ok = false;
  rep.violations.push_back({class_index, std::move(text), vertex, edge});
}

} // namespace

std::string vertex_name(GraphKind kind, Side side, int index) {
  if (kind == GraphKind::General) return std::to_string(index);
  return (side == Side::A ? "a" : "b") + std::to_string(index);
}

ValidationReport validate_instance(const Instance& inst, bool strict) {
  ValidationReport rep;

  if (inst.n < 1) add_violation(rep, -1, "n must be positive");
  if (inst.kind == GraphKind::Bipartite) {
    if (inst.side_a < 1) add_violation(rep, -1, "side_a must be positive");
    if (inst.side_b < 1) add_violation(rep, -1, "side_b must be positive");
  } else {
    if (inst.vertex_count < 1) add_violation(rep, -1, "vertex count must be positive");
  }
  if (inst.num_classes() < 1) add_violation(rep, -1, "instance has no color classes");
  if (!rep.ok) return rep;

  for (int c = 0; c < inst.num_classes(); ++c) {
    const auto& cls = inst.matchings[c];
    const int sz = static_cast<int>(cls.size());
    if (strict && sz != inst.n)
      add_violation(rep, c,
                    "size mismatch: class " + std::to_string(c) + " has " +
                        std::to_string(sz) + " edges, expected exactly " +
                        std::to_string(inst.n));
    if (!strict && sz < inst.n)
      add_violation(rep, c,
                    "size mismatch: class " + std::to_string(c) + " has " +
                        std::to_string(sz) + " edges, expected at least " +
                        std::to_string(inst.n));

    std::set<std::pair<Side, int>> seen;
    auto touch = [&](Side side, int index) {
      if (!seen.insert({side, index}).second)
        add_violation(rep, c,
                      "vertex " + vertex_name(inst.kind, side, index) +
                          " repeated in class " + std::to_string(c),
                      VertexRef{side, index});
    };

    for (const Edge& e : cls) {
      if (inst.kind == GraphKind::Bipartite) {
        if (e.u < 0 || e.u >= inst.side_a)
          add_violation(rep, c,
                        "vertex a" + std::to_string(e.u) + " out of range in class " +
                            std::to_string(c),
                        VertexRef{Side::A, e.u}, e);
        if (e.v < 0 || e.v >= inst.side_b)
          add_violation(rep, c,
                        "vertex b" + std::to_string(e.v) + " out of range in class " +
                            std::to_string(c),
                        VertexRef{Side::B, e.v}, e);
        touch(Side::A, e.u);
        touch(Side::B, e.v);
      } else {
        if (e.u == e.v)
          add_violation(rep, c, "loop edge in class " + std::to_string(c),
                        std::nullopt, e);
        else if (e.u > e.v)
          add_violation(rep, c,
                        "edge not in canonical order (u < v) in class " +
                            std::to_string(c),
                        std::nullopt, e);
        for (int x : {e.u, e.v})
          if (x < 0 || x >= inst.vertex_count)
            add_violation(rep, c,
                          "vertex " + std::to_string(x) + " out of range in class " +
                              std::to_string(c),
                          VertexRef{Side::A, x}, e);
        touch(Side::A, e.u);
        if (e.v != e.u) touch(Side::A, e.v);
      }
    }
  }
  return rep;
}

bool is_rainbow_matching(const Instance& inst, const RainbowMatching& rm) {
  std::set<int> colors;
  std::set<std::pair<Side, int>> vertices;
  for (const auto& entry : rm.entries) {
    if (entry.color < 0 || entry.color >= inst.num_classes()) return false;
    if (!colors.insert(entry.color).second) return false; // repeated color

    const auto& cls = inst.matchings[entry.color];
    if (std::find(cls.begin(), cls.end(), entry.edge) == cls.end()) return false;

    if (inst.kind == GraphKind::Bipartite) {
      if (!vertices.insert({Side::A, entry.edge.u}).second) return false;
      if (!vertices.insert({Side::B, entry.edge.v}).second) return false;
    } else {
      if (!vertices.insert({Side::A, entry.edge.u}).second) return false;
      if (!vertices.insert({Side::A, entry.edge.v}).second) return false;
    }
  }
  return true;
}

RainbowMatching greedy_rainbow(const Instance& inst) {
  const bool bip = inst.kind == GraphKind::Bipartite;
  std::vector<char> used_a(bip ? inst.side_a : inst.vertex_count, 0);
  std::vector<char> used_b(bip ? inst.side_b : 0, 0);

  auto free_edge = [&](const Edge& e) {
    if (bip) return !used_a[e.u] && !used_b[e.v];
    return !used_a[e.u] && !used_a[e.v];
  };
  auto occupy = [&](const Edge& e) {
    used_a[e.u] = 1;
    if (bip)
      used_b[e.v] = 1;
    else
      used_a[e.v] = 1;
  };

  RainbowMatching rm;
  for (int c = 0; c < inst.num_classes(); ++c) {
    for (const Edge& e : inst.matchings[c]) {
      if (free_edge(e)) {
        occupy(e);
        rm.entries.push_back({c, e});
        break;
      }
    }
  }
  return rm;
}

long long theorem_bound(long long n, long long k) {
  if (n < 1) throw std::invalid_argument("theorem_bound: n must be positive");
  if (k < 0 || k >= n)
    throw std::invalid_argument("theorem_bound: k must satisfy 0 <= k < n");
  return n + n / (k + 1) - (k + 1);
}

std::optional<long long> guaranteed_k(long long n, long long num_classes) {
  if (n < 1) return std::nullopt;
  if (num_classes < 1)
    throw std::invalid_argument("guaranteed_k: need at least one class");
  if (num_classes < theorem_bound(n, n - 1)) return std::nullopt; // unreachable for N >= 1
  // theorem_bound is strictly decreasing in k, so binary-search the
  // smallest k whose bound fits under num_classes.
  long long lo = 0, hi = n - 1;
  while (lo < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (theorem_bound(n, mid) <= num_classes)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

Instance parse_instance(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("JSON syntax error at line " + std::to_string(line) +
                     ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("top-level value must be an object");

  if (!doc.contains("kind")) throw ParseError("missing field 'kind'");
  if (!doc.at("kind").is_string())
    throw ParseError("field 'kind' must be \"bipartite\" or \"general\"");
  const std::string kind_str = doc.at("kind").get<std::string>();

  Instance inst;
  if (kind_str == "bipartite") {
    inst.kind = GraphKind::Bipartite;
  } else if (kind_str == "general") {
    inst.kind = GraphKind::General;
  } else {
    throw ParseError("unknown kind '" + kind_str +
                     "' (expected \"bipartite\" or \"general\")");
  }

  inst.n = require_positive_int(doc, "n");
  if (inst.kind == GraphKind::Bipartite) {
    inst.side_a = require_positive_int(doc, "side_a");
    inst.side_b = require_positive_int(doc, "side_b");
  } else {
    inst.vertex_count = require_positive_int(doc, "vertices");
  }

  if (!doc.contains("matchings")) throw ParseError("missing field 'matchings'");
  const auto& ms = doc.at("matchings");
  if (!ms.is_array()) throw ParseError("field 'matchings' must be an array");

  inst.matchings.reserve(ms.size());
  for (std::size_t ci = 0; ci < ms.size(); ++ci) {
    const auto& cj = ms[ci];
    if (!cj.is_array())
      throw ParseError("matchings[" + std::to_string(ci) + "] must be an array of edges");
    std::vector<Edge> cls;
    cls.reserve(cj.size());
    for (std::size_t ei = 0; ei < cj.size(); ++ei)
      cls.push_back(parse_edge(cj[ei], inst.kind, static_cast<int>(ci),
                               static_cast<int>(ei)));
    inst.matchings.push_back(std::move(cls));
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["kind"] = kind_name(inst.kind);
  doc["n"] = inst.n;
  if (inst.kind == GraphKind::Bipartite) {
    doc["side_a"] = inst.side_a;
    doc["side_b"] = inst.side_b;
  } else {
    doc["vertices"] = inst.vertex_count;
  }
  ordered_json ms = ordered_json::array();
  for (const auto& cls : inst.matchings) {
    ordered_json cj = ordered_json::array();
    for (const Edge& e : cls) cj.push_back({e.u, e.v});
    ms.push_back(std::move(cj));
  }
  doc["matchings"] = std::move(ms);
  return doc.dump();
}

RainbowMatching parse_rainbow(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("JSON syntax error at line " + std::to_string(line) +
                     ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc.at("entries").is_array())
    throw ParseError("expected an object with an 'entries' array");

  RainbowMatching rm;
  for (std::size_t i = 0; i < doc.at("entries").size(); ++i) {
    const auto& ej = doc.at("entries")[i];
    const std::string where = "entries[" + std::to_string(i) + "]";
    if (!ej.is_object() || !ej.contains("color") || !ej.contains("edge"))
      throw ParseError(where + ": expected {\"color\":..., \"edge\":[u,v]}");
    if (!ej.at("color").is_number_integer() || ej.at("color").get<long long>() < 0)
      throw ParseError(where + ": 'color' must be a non-negative integer");
    const auto& edge = ej.at("edge");
    if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_integer() ||
        !edge[1].is_number_integer())
      throw ParseError(where + ": 'edge' must be an array of two integers");
    rm.entries.push_back({ej.at("color").get<int>(),
                          Edge{edge[0].get<int>(), edge[1].get<int>()}});
  }
  return rm;
}

std::string serialize_rainbow(const RainbowMatching& rm) {
  ordered_json doc;
  ordered_json entries = ordered_json::array();
  for (const auto& entry : rm.entries) {
    ordered_json ej;
    ej["color"] = entry.color;
    ej["edge"] = {entry.edge.u, entry.edge.v};
    entries.push_back(std::move(ej));
  }
  doc["entries"] = std::move(entries);
  return doc.dump();
}

} // namespace rainbow
