#include "emm/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace emm {

IntMatrix cycle_map_matrix(const HomologyBasis& target, const std::vector<IntVec>& images) {
  IntMatrix m(static_cast<int>(images.size()), target.genus(), 0);
  for (std::size_t l = 0; l < images.size(); ++l)
    for (int j = 0; j < target.genus(); ++j) m(static_cast<int>(l), j) = images[l][target.basis_edges[j]];
  return m;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Decomposition decompose(const Multigraph& g) {
  Decomposition dec;
  dec.parent_basis = forest_basis(g);
  const HomologyBasis& pb = dec.parent_basis;
  const int m = g.num_edges();

  UnionFind uf(m);
  std::vector<bool> on_cycle(m, false);
  for (const IntVec& f : pb.fundamental_cycles) {
    int first = -1;
    for (EdgeId e = 0; e < m; ++e) {
      if (f[e] == 0) continue;
      on_cycle[e] = true;
      if (first < 0)
        first = e;
      else
        uf.unite(e, first);
    }
  }

  std::map<int, std::vector<EdgeId>> classes;  // keyed by representative
  std::vector<int> order;
  for (EdgeId e = 0; e < m; ++e) {
    if (!on_cycle[e]) continue;  // bridge
    const int r = uf.find(e);
    if (!classes.count(r)) order.push_back(r);
    classes[r].push_back(e);
  }

  for (int r : order) {
    const auto& edges = classes[r];
    IrreducibleComponent comp;
    comp.parent_edges = edges;
    comp.is_loop = edges.size() == 1;
    std::map<VertexId, VertexId> relabel;
    std::vector<VertexId> verts;
    for (EdgeId e : edges)
      if (!g.is_free_loop(e)) {
        verts.push_back(g.beg(e));
        verts.push_back(g.end(e));
      }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (VertexId v : verts) relabel[v] = comp.graph.add_vertex(g.vertex_name(v));
    for (EdgeId e : edges) {
      if (g.is_free_loop(e))
        comp.graph.add_free_loop(g.label(e));
      else
        comp.graph.add_edge(relabel[g.beg(e)], relabel[g.end(e)], g.label(e));
    }
    comp.basis = homology_basis(comp.graph);

    std::vector<IntVec> images;
    for (const IntVec& f : comp.basis.fundamental_cycles) {
      IntVec chain(m, 0);
      for (std::size_t i = 0; i < edges.size(); ++i) chain[edges[i]] = f[i];
      images.push_back(std::move(chain));
    }
    comp.projection = cycle_map_matrix(pb, images);

    comp.inclusion = IntMatrix(pb.genus(), comp.basis.genus(), 0);
    for (int j = 0; j < pb.genus(); ++j)
      for (int l = 0; l < comp.basis.genus(); ++l)
        comp.inclusion(j, l) = pb.fundamental_cycles[j][edges[comp.basis.basis_edges[l]]];
    dec.components.push_back(std::move(comp));
  }
  return dec;
}

namespace {

struct Segment {
  VertexId beg;
  VertexId end;
  std::vector<std::pair<EdgeId, int>> path;  // source edges with signs
  bool alive = true;
};

}  // namespace

CubicModel reduce_component(const Multigraph& component, const HomologyBasis& source_basis) {
  const int m = component.num_edges();
  std::vector<Segment> segs;
  for (EdgeId e = 0; e < m; ++e) segs.push_back({component.beg(e), component.end(e), {{e, 1}}, true});

  // Vertex incidences as (segment, is_end) in input order.
  const int n = component.num_vertices();
  auto incidences = [&](VertexId v) {
    std::vector<std::pair<int, bool>> inc;
    for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
      if (!segs[s].alive) continue;
      if (segs[s].beg == v) inc.emplace_back(s, false);
      if (segs[s].end == v) inc.emplace_back(s, true);
    }
    return inc;
  };

  std::vector<bool> vertex_alive(n, true);
  bool changed = true;
  bool collapsed_to_loop = false;
  while (changed && !collapsed_to_loop) {
    changed = false;
    for (VertexId v = 0; v < n; ++v) {
      if (!vertex_alive[v]) continue;
      const auto inc = incidences(v);
      if (inc.size() != 2) continue;
      const auto [s1, end1] = inc[0];
      const auto [s2, end2] = inc[1];
      if (s1 == s2) {
        // Only a loop is left at v: the component was a cycle.
        collapsed_to_loop = true;
        break;
      }
      // New segment: far end of s1 -> v -> far end of s2.
      Segment merged;
      const int sign1 = end1 ? 1 : -1;   // s1 traversed toward v
      const int sign2 = end2 ? -1 : 1;   // s2 traversed away from v
      merged.beg = end1 ? segs[s1].beg : segs[s1].end;
      merged.end = end2 ? segs[s2].beg : segs[s2].end;
      for (auto [e, s] : segs[s1].path) merged.path.emplace_back(e, s * sign1);
      for (auto [e, s] : segs[s2].path) merged.path.emplace_back(e, s * sign2);
      segs[s1].alive = segs[s2].alive = false;
      vertex_alive[v] = false;
      segs.push_back(std::move(merged));
      changed = true;
    }
  }

  CubicModel model;
  std::vector<std::vector<std::pair<EdgeId, int>>> model_paths;
  if (collapsed_to_loop || component.num_vertices() == 0) {
    model.is_loop = true;
    model.graph.add_vertex();
    model.graph.add_edge(0, 0);
    std::vector<std::pair<EdgeId, int>> path;
    for (const auto& s : segs)
      if (s.alive) path = s.path;
    if (component.num_vertices() == 0) path = {{0, 1}};
    model_paths.push_back(path);
  } else {
    // Compact vertices; then split high-degree vertices.
    std::vector<VertexId> relabel(n, -1);
    for (VertexId v = 0; v < n; ++v)
      if (vertex_alive[v]) relabel[v] = model.graph.add_vertex(component.vertex_name(v));
    std::vector<std::pair<VertexId, VertexId>> ends;
    for (const auto& s : segs) {
      if (!s.alive) continue;
      ends.emplace_back(relabel[s.beg], relabel[s.end]);
      model_paths.push_back(s.path);
    }
    // Dart lists per vertex in input order: dart 2i / 2i+1 of segment i.
    std::vector<std::vector<DartId>> at(model.graph.num_vertices());
    for (std::size_t i = 0; i < ends.size(); ++i) {
      at[ends[i].first].push_back(static_cast<DartId>(2 * i));
      at[ends[i].second].push_back(static_cast<DartId>(2 * i + 1));
    }
    std::vector<VertexId> dart_vertex(2 * ends.size());
    for (VertexId v = 0; v < static_cast<VertexId>(at.size()); ++v)
      for (DartId d : at[v]) dart_vertex[d] = v;
    for (VertexId v = 0; v < static_cast<VertexId>(at.size()); ++v) {
      while (at[v].size() > 3) {
        const VertexId w = static_cast<VertexId>(at.size());
        at.emplace_back();
        const DartId d1 = at[v][0];
        const DartId d2 = at[v][1];
        at[v].erase(at[v].begin(), at[v].begin() + 2);
        at[w] = {d1, d2};
        dart_vertex[d1] = w;
        dart_vertex[d2] = w;
        const DartId nb = static_cast<DartId>(dart_vertex.size());
        dart_vertex.push_back(w);
        dart_vertex.push_back(v);
        at[w].push_back(nb);
        at[v].push_back(nb + 1);
        model_paths.emplace_back();
      }
    }
    Multigraph out;
    for (VertexId v = 0; v < static_cast<VertexId>(at.size()); ++v)
      out.add_vertex(v < model.graph.num_vertices() ? model.graph.vertex_name(v) : "s" + std::to_string(v));
    for (std::size_t e = 0; e < dart_vertex.size() / 2; ++e) out.add_edge(dart_vertex[2 * e], dart_vertex[2 * e + 1]);
    model.graph = std::move(out);
  }

  const int mm = model.graph.num_edges();
  model.edge_image.assign(m, {-1, 0});
  model.original.assign(mm, false);
  for (EdgeId r = 0; r < mm; ++r) {
    model.graph.set_label(r, model_paths[r].empty() ? "split" + std::to_string(r) : component.edge_name(model_paths[r].front().first));
    for (auto [e, s] : model_paths[r]) {
      model.edge_image[e] = {r, s};
      model.original[r] = true;
    }
  }
  model.basis = homology_basis(model.graph);
  std::vector<IntVec> images;
  for (const IntVec& f : model.basis.fundamental_cycles) {
    IntVec chain(m, 0);
    for (EdgeId r = 0; r < mm; ++r)
      for (auto [e, s] : model_paths[r]) chain[e] += f[r] * s;
    images.push_back(std::move(chain));
  }
  model.to_source = cycle_map_matrix(source_basis, images);
  return model;
}

std::vector<ReducedComponent> cubic_reduction(const Multigraph& g) {
  std::vector<ReducedComponent> out;
  for (auto& comp : decompose(g).components) {
    CubicModel model = reduce_component(comp.graph, comp.basis);
    out.push_back({std::move(comp), std::move(model)});
  }
  return out;
}

}  // namespace emm
