#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgl/engine.hpp"
#include "fgl/graph.hpp"
#include "fgl/kernel.hpp"
#include "fgl/reductions.hpp"

namespace fgl {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kGraphFormat = "fgl-graph-v1";
inline constexpr const char* kTranscriptFormat = "fgl-transcript-v1";

using json = nlohmann::ordered_json;

/// Malformed or inconsistent input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contents of an fgl-graph-v1 document: an undirected multigraph or, with
/// "directed": true, a digraph.
struct GraphDocument {
  bool directed = false;
  Graph graph;
  Digraph digraph;

  [[nodiscard]] std::size_t vertex_count() const {
    return directed ? digraph.vertex_count() : graph.vertex_count();
  }
  [[nodiscard]] const std::vector<std::string>& labels() const {
    return directed ? digraph.labels() : graph.labels();
  }
};

namespace detail {

inline json graph_json(bool directed, const std::vector<std::string>& labels,
                       const std::vector<std::pair<VertexId, VertexId>>& edges) {
  json edge_list = json::array();
  for (const auto& [a, b] : edges) edge_list.push_back({a, b});
  return json{{"format", kGraphFormat}, {"directed", directed}, {"vertices", labels}, {"edges", edge_list}};
}

}  // namespace detail

inline json to_json(const Graph& g) { return detail::graph_json(false, g.labels(), g.edges()); }
inline json to_json(const Digraph& d) { return detail::graph_json(true, d.labels(), d.arcs()); }

/// "vertices" is a list of labels or a vertex count; "edges" a list of
/// index pairs.
inline GraphDocument graph_from_json(const json& doc) {
  try {
    if (!doc.is_object() || doc.value("format", "") != kGraphFormat) {
      throw FormatError(std::string("expected \"format\": \"") + kGraphFormat + "\"");
    }
    std::vector<std::string> labels;
    const auto& vs = doc.at("vertices");
    if (vs.is_number_unsigned()) {
      for (std::size_t v = 0; v < vs.get<std::size_t>(); ++v) labels.push_back(std::to_string(v));
    } else {
      labels = vs.get<std::vector<std::string>>();
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("every edge must be a pair of vertex indices");
      edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
    GraphDocument out;
    out.directed = doc.value("directed", false);
    if (out.directed) {
      out.digraph = Digraph(std::move(labels), std::move(edges));
    } else {
      out.graph = Graph(std::move(labels), std::move(edges));
    }
    return out;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("bad graph document: ") + ex.what());
  } catch (const GraphError& ex) {
    throw FormatError(std::string("bad graph document: ") + ex.what());
  }
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw FormatError(source + ": " + ex.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

inline GraphDocument read_graph_file(const std::string& path) { return graph_from_json(read_json_file(path)); }

/// Sidecar mapping vertex index (as a string key) to label.
inline json label_map_json(const std::vector<std::string>& labels) {
  json out = json::object();
  for (std::size_t v = 0; v < labels.size(); ++v) out[std::to_string(v)] = labels[v];
  return out;
}

inline json to_json(const KernelSet& k) { return json{{"start", k.start}, {"S", k.members.members()}}; }

inline KernelSet kernel_from_json(const json& doc, std::size_t vertex_count) {
  try {
    KernelSet k{doc.at("start").get<VertexId>(), VertexSet(vertex_count)};
    if (k.start >= vertex_count) throw FormatError("kernel start out of range");
    for (const auto& v : doc.at("S")) {
      const auto id = v.get<VertexId>();
      if (id >= vertex_count) throw FormatError("kernel member " + std::to_string(id) + " out of range");
      k.members.insert(id);
    }
    return k;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("bad kernel document: ") + ex.what());
  }
}

/// A played game: the moves in order and how it ended.
struct Transcript {
  VertexId start = 0;
  Variant variant = Variant::Feedback;
  std::vector<EdgeId> moves;
  /// Empty while the game is unfinished.
  std::string winner;
  std::string reason;
};

/// Plays `moves` from the initial position and records the result.
inline Transcript make_transcript(const GameState& initial, const std::vector<EdgeId>& moves) {
  auto [st, outcome] = replay(initial, moves);
  Transcript t{initial.start, initial.variant, moves, "", ""};
  if (auto w = decided_winner(st)) {
    t.winner = to_string(*w);
    t.reason = st.winner ? std::string(to_string(outcome)) : "NO_MOVES";
  }
  return t;
}

inline json to_json(const Transcript& t) {
  json outcome = t.winner.empty() ? json{{"result", "ONGOING"}} : json{{"winner", t.winner}, {"reason", t.reason}};
  return json{{"format", kTranscriptFormat},
              {"start", t.start},
              {"variant", std::string(to_string(t.variant))},
              {"moves", t.moves},
              {"outcome", outcome}};
}

inline Transcript transcript_from_json(const json& doc) {
  try {
    Transcript t;
    t.start = doc.at("start").get<VertexId>();
    t.variant = parse_variant(doc.value("variant", "feedback"));
    t.moves = doc.at("moves").get<std::vector<EdgeId>>();
    const auto& outcome = doc.at("outcome");
    t.winner = outcome.value("winner", "");
    t.reason = outcome.value("reason", "");
    return t;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("bad transcript: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string("bad transcript: ") + ex.what());
  }
}

/// FNV-1a over a canonical configuration string, as 16 hex digits.
inline std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace fgl
