#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace emm {

using VertexId = int;
using EdgeId = int;
using DartId = int;

inline constexpr VertexId kNoVertex = -1;

/// Oriented multigraph stored as half-edges. Edge e owns darts 2e (at its
/// beginning) and 2e+1 (at its end), so the dart involution is d ^ 1. Loops
/// and parallel edges are allowed. A vertex-free loop is an edge whose two
/// darts are attached to no vertex; it behaves as a circle component.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int num_vertices);

  VertexId add_vertex(std::string name = {});
  EdgeId add_edge(VertexId beg, VertexId end, std::string label = {});
  EdgeId add_free_loop(std::string label = {});

  int num_vertices() const { return static_cast<int>(incident_.size()); }
  int num_edges() const { return static_cast<int>(dart_vertex_.size() / 2); }
  int num_darts() const { return static_cast<int>(dart_vertex_.size()); }

  static constexpr DartId beg_dart(EdgeId e) { return 2 * e; }
  static constexpr DartId end_dart(EdgeId e) { return 2 * e + 1; }
  static constexpr EdgeId edge_of(DartId d) { return d / 2; }
  static constexpr DartId opposite(DartId d) { return d ^ 1; }
  /// +1 for the beginning dart of its edge, -1 for the end dart.
  static constexpr int dart_sign(DartId d) { return (d & 1) ? -1 : 1; }

  VertexId dart_vertex(DartId d) const { return dart_vertex_[d]; }
  VertexId beg(EdgeId e) const { return dart_vertex_[beg_dart(e)]; }
  VertexId end(EdgeId e) const { return dart_vertex_[end_dart(e)]; }
  bool is_loop(EdgeId e) const { return beg(e) == end(e); }
  bool is_free_loop(EdgeId e) const { return beg(e) == kNoVertex; }

  /// Darts attached to v, in insertion order (a loop contributes both darts).
  const std::vector<DartId>& darts_at(VertexId v) const { return incident_[v]; }
  int degree(VertexId v) const { return static_cast<int>(incident_[v].size()); }

  const std::string& label(EdgeId e) const { return labels_[e]; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  void set_label(EdgeId e, std::string label) { labels_[e] = std::move(label); }

  /// Display name of an edge: its label, or "e<id>" when unlabeled.
  std::string edge_name(EdgeId e) const;

 private:
  std::vector<VertexId> dart_vertex_;
  std::vector<std::vector<DartId>> incident_;
  std::vector<std::string> labels_;
  std::vector<std::string> vertex_names_;
};

/// Component index per vertex plus one component per vertex-free loop.
struct Components {
  int count = 0;
  std::vector<int> of_vertex;
  std::vector<int> of_edge;
};

Components connected_components(const Multigraph& g);
bool is_connected(const Multigraph& g);

/// Sum over components of m - n + 1; a vertex-free loop contributes 1.
int genus(const Multigraph& g);

/// Edges whose removal increases the number of components.
std::vector<bool> bridges(const Multigraph& g);

/// Graph with the listed edges removed (vertices kept, ids compacted).
Multigraph delete_edges(const Multigraph& g, const std::vector<bool>& remove);

/// Parses the edge-list text format: one edge per line `beg end [label]`,
/// `LOOP label` for a vertex-free loop, `#` starts a comment.
Multigraph parse_edge_list(std::istream& in);
Multigraph parse_edge_list_string(const std::string& text);
std::string to_edge_list(const Multigraph& g);

}  // namespace emm
