#include "emm/multigraph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace emm {

Multigraph::Multigraph(int num_vertices) {
  for (int i = 0; i < num_vertices; ++i) add_vertex();
}

VertexId Multigraph::add_vertex(std::string name) {
  const VertexId v = num_vertices();
  incident_.emplace_back();
  vertex_names_.push_back(name.empty() ? "v" + std::to_string(v) : std::move(name));
  return v;
}

EdgeId Multigraph::add_edge(VertexId beg, VertexId end, std::string label) {
  if (beg < 0 || beg >= num_vertices() || end < 0 || end >= num_vertices())
    throw std::out_of_range("add_edge: vertex out of range");
  const EdgeId e = num_edges();
  dart_vertex_.push_back(beg);
  dart_vertex_.push_back(end);
  incident_[beg].push_back(beg_dart(e));
  incident_[end].push_back(end_dart(e));
  labels_.push_back(std::move(label));
  return e;
}

EdgeId Multigraph::add_free_loop(std::string label) {
  const EdgeId e = num_edges();
  dart_vertex_.push_back(kNoVertex);
  dart_vertex_.push_back(kNoVertex);
  labels_.push_back(std::move(label));
  return e;
}

std::string Multigraph::edge_name(EdgeId e) const {
  return labels_[e].empty() ? "e" + std::to_string(e) : labels_[e];
}

Components connected_components(const Multigraph& g) {
  Components c;
  c.of_vertex.assign(g.num_vertices(), -1);
  c.of_edge.assign(g.num_edges(), -1);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (c.of_vertex[s] >= 0) continue;
    const int id = c.count++;
    c.of_vertex[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (DartId d : g.darts_at(v)) {
        c.of_edge[Multigraph::edge_of(d)] = id;
        const VertexId w = g.dart_vertex(Multigraph::opposite(d));
        if (c.of_vertex[w] < 0) {
          c.of_vertex[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.is_free_loop(e)) c.of_edge[e] = c.count++;
  return c;
}

bool is_connected(const Multigraph& g) { return connected_components(g).count <= 1; }

int genus(const Multigraph& g) {
  const Components c = connected_components(g);
  int free_loops = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) free_loops += g.is_free_loop(e);
  return g.num_edges() - g.num_vertices() + c.count - free_loops;
}

std::vector<bool> bridges(const Multigraph& g) {
  // Low-link over darts so parallel edges are handled (we never re-enter
  // through the same edge, only through the same vertex).
  const int n = g.num_vertices();
  std::vector<bool> is_bridge(g.num_edges(), false);
  std::vector<int> order(n, -1), low(n, 0);
  int counter = 0;
  struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
  };
  for (VertexId root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    order[root] = low[root] = counter++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& darts = g.darts_at(f.v);
      if (f.next < darts.size()) {
        const DartId d = darts[f.next++];
        const EdgeId e = Multigraph::edge_of(d);
        if (e == f.parent_edge) continue;
        const VertexId w = g.dart_vertex(Multigraph::opposite(d));
        if (order[w] < 0) {
          order[w] = low[w] = counter++;
          stack.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], order[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > order[parent.v]) is_bridge[done.parent_edge] = true;
        }
      }
    }
  }
  return is_bridge;
}

Multigraph delete_edges(const Multigraph& g, const std::vector<bool>& remove) {
  Multigraph h;
  for (VertexId v = 0; v < g.num_vertices(); ++v) h.add_vertex(g.vertex_name(v));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (remove[e]) continue;
    if (g.is_free_loop(e))
      h.add_free_loop(g.label(e));
    else
      h.add_edge(g.beg(e), g.end(e), g.label(e));
  }
  return h;
}

Multigraph parse_edge_list(std::istream& in) {
  Multigraph g;
  std::map<std::string, VertexId> ids;
  auto vertex = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    const VertexId v = g.add_vertex(name);
    ids.emplace(name, v);
    return v;
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "LOOP") {
      if (tok.size() > 2) throw std::invalid_argument("line " + std::to_string(line_no) + ": LOOP takes one label");
      g.add_free_loop(tok.size() == 2 ? tok[1] : std::string{});
      continue;
    }
    if (tok.size() < 2 || tok.size() > 3)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected `beg end [label]`");
    const VertexId a = vertex(tok[0]);
    const VertexId b = vertex(tok[1]);
    g.add_edge(a, b, tok.size() == 3 ? tok[2] : std::string{});
  }
  return g;
}

Multigraph parse_edge_list_string(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string to_edge_list(const Multigraph& g) {
  std::ostringstream out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.is_free_loop(e)) {
      out << "LOOP " << g.edge_name(e) << '\n';
      continue;
    }
    out << g.vertex_name(g.beg(e)) << ' ' << g.vertex_name(g.end(e));
    if (!g.label(e).empty()) out << ' ' << g.label(e);
    out << '\n';
  }
  return out.str();
}

}  // namespace emm
