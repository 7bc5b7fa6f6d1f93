#include "emm/embedding.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace emm {

bool Embedding::orientable() const {
  return std::all_of(edge_signs.begin(), edge_signs.end(), [](int s) { return s > 0; });
}

namespace {

void require_no_free_loops(const Multigraph& g, const char* who) {
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.is_free_loop(e)) throw std::invalid_argument(std::string(who) + ": vertex-free loops have no rotation system");
}

std::pair<VertexId, VertexId> ordered_pair(VertexId a, VertexId b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Flag walk over a partial or complete rotation system given as successor /
// predecessor arrays on the placed darts.
struct FlagWalker {
  const std::vector<DartId>& succ;
  const std::vector<DartId>& pred;
  const std::vector<int>& sign;  // per edge

  int corner(int f) const {
    const DartId d = f >> 1;
    return (f & 1) ? 2 * succ[d] : 2 * pred[d] + 1;
  }
  int across(int f) const {
    const DartId d = f >> 1;
    const int s = f & 1;
    const DartId o = d ^ 1;
    return sign[d >> 1] < 0 ? 2 * o + s : 2 * o + (1 - s);
  }
};

}  // namespace

Embedding make_embedding(const Multigraph& g, std::vector<std::vector<DartId>> rotation, std::vector<int> edge_signs) {
  require_no_free_loops(g, "make_embedding");
  if (static_cast<int>(rotation.size()) != g.num_vertices() || static_cast<int>(edge_signs.size()) != g.num_edges())
    throw std::invalid_argument("make_embedding: size mismatch");
  const int nd = g.num_darts();
  std::vector<DartId> succ(nd, -1), pred(nd, -1);
  std::vector<int> seen(nd, 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& r = rotation[v];
    if (static_cast<int>(r.size()) != g.degree(v)) throw std::invalid_argument("make_embedding: rotation has wrong degree");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const DartId d = r[i];
      if (d < 0 || d >= nd || g.dart_vertex(d) != v || seen[d]++)
        throw std::invalid_argument("make_embedding: invalid rotation at vertex " + g.vertex_name(v));
      succ[d] = r[(i + 1) % r.size()];
      pred[succ[d]] = d;
    }
  }
  Embedding emb;
  emb.rotation = std::move(rotation);
  emb.edge_signs = std::move(edge_signs);
  const FlagWalker walk{succ, pred, emb.edge_signs};
  std::vector<bool> visited(2 * nd, false);
  for (DartId d = 0; d < nd; ++d) {
    const int start = 2 * d + 1;
    if (visited[start]) continue;
    std::vector<DartId> darts;
    IntVec chain(g.num_edges(), 0);
    int f = start;
    do {
      visited[f] = true;
      const int c = walk.corner(f);
      visited[c] = true;
      const DartId x = c >> 1;
      darts.push_back(x);
      chain[Multigraph::edge_of(x)] += Multigraph::dart_sign(x);
      f = walk.across(c);
    } while (f != start);
    emb.face_darts.push_back(std::move(darts));
    emb.face_chains.push_back(std::move(chain));
  }
  return emb;
}

int euler_characteristic(const Multigraph& g, const Embedding& emb) {
  const int faces = g.num_edges() == 0 ? 1 : emb.num_faces();
  return g.num_vertices() - g.num_edges() + faces;
}

bool faces_are_cycle_double_cover(const Multigraph& g, const Embedding& emb) {
  std::vector<int> uses(g.num_edges(), 0);
  for (const auto& c : emb.face_chains)
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (c[e] < -1 || c[e] > 1) return false;
      uses[e] += c[e] != 0;
    }
  return std::all_of(uses.begin(), uses.end(), [](int u) { return u == 2; });
}

PlanarityResult planar_embed(const Multigraph& g) {
  require_no_free_loops(g, "planar_embed");
  if (!is_connected(g)) throw std::invalid_argument("planar_embed: graph is disconnected");
  using namespace boost;
  using BGraph = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>, property<edge_index_t, int>>;
  using BEdge = graph_traits<BGraph>::edge_descriptor;

  const int n = g.num_vertices();
  BGraph bg(n);
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> bundles;
  std::vector<EdgeId> rep;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e)) continue;
    const auto key = ordered_pair(g.beg(e), g.end(e));
    auto& b = bundles[{key.first, key.second}];
    if (b.empty()) {
      const BEdge be = add_edge(key.first, key.second, bg).first;
      put(edge_index, bg, be, static_cast<int>(rep.size()));
      rep.push_back(e);
    }
    b.push_back(e);
  }

  std::vector<std::vector<BEdge>> order(n);
  std::vector<BEdge> kuratowski;
  const bool planar = boyer_myrvold_planarity_test(
      boyer_myrvold_params::graph = bg,
      boyer_myrvold_params::embedding = make_iterator_property_map(order.begin(), get(vertex_index, bg)),
      boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));

  PlanarityResult result;
  if (!planar) {
    for (const BEdge& be : kuratowski) result.kuratowski_edges.push_back(rep[get(edge_index, bg, be)]);
    std::sort(result.kuratowski_edges.begin(), result.kuratowski_edges.end());
    return result;
  }

  auto dart_at = [&](EdgeId e, VertexId v) { return g.beg(e) == v ? Multigraph::beg_dart(e) : Multigraph::end_dart(e); };
  std::vector<std::vector<DartId>> rotation(n);
  for (VertexId v = 0; v < n; ++v) {
    for (const BEdge& be : order[v]) {
      const EdgeId r = rep[get(edge_index, bg, be)];
      const auto key = ordered_pair(g.beg(r), g.end(r));
      const auto& bundle = bundles[{key.first, key.second}];
      // Parallel copies sit next to the representative: after it at the
      // lower endpoint, before it (reversed) at the other, bounding digons.
      if (v == key.first) {
        for (EdgeId e : bundle) rotation[v].push_back(dart_at(e, v));
      } else {
        for (auto it = bundle.rbegin(); it != bundle.rend(); ++it) rotation[v].push_back(dart_at(*it, v));
      }
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.is_loop(e)) {
      rotation[g.beg(e)].push_back(Multigraph::beg_dart(e));
      rotation[g.beg(e)].push_back(Multigraph::end_dart(e));
    }
  Embedding emb = make_embedding(g, std::move(rotation), std::vector<int>(g.num_edges(), 1));
  if (euler_characteristic(g, emb) != 2) throw std::logic_error("planar_embed: face count certification failed");
  result.embedding = std::move(emb);
  return result;
}

namespace {

class ProjectiveSearch {
 public:
  ProjectiveSearch(const Multigraph& g, std::uint64_t max_nodes, const EmbeddingFilter& accept)
      : g_(g), max_nodes_(max_nodes), accept_(accept) {
    const int nd = g.num_darts();
    succ_.assign(nd, -1);
    pred_.assign(nd, -1);
    sign_.assign(g.num_edges(), 1);
    placed_at_.assign(g.num_vertices(), {});
    stamp_.assign(2 * nd, 0);
    build_order();
  }

  ProjectiveResult run() {
    ProjectiveResult r;
    if (g_.num_vertices() > 0) vertex_placed_[0] = true;
    placed_vertices_ = g_.num_vertices() > 0 ? 1 : 0;
    const bool found = place(0);
    stats_.budget_exceeded = aborted_;
    stats_.exhausted = !found && !aborted_;
    r.stats = stats_;
    if (found) r.embedding = std::move(found_);
    return r;
  }

 private:
  void build_order() {
    const int n = g_.num_vertices();
    vertex_placed_.assign(n, false);
    std::vector<bool> seen(n, false), used(g_.num_edges(), false);
    if (n == 0) return;
    std::vector<VertexId> queue{0};
    seen[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::vector<DartId> darts = g_.darts_at(queue[i]);
      std::sort(darts.begin(), darts.end());
      for (DartId d : darts) {
        const EdgeId e = Multigraph::edge_of(d);
        if (used[e]) continue;
        used[e] = true;
        order_.push_back(e);
        const VertexId w = g_.dart_vertex(d ^ 1);
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }

  void insert_after(DartId x, DartId y) {
    if (y < 0) {
      succ_[x] = pred_[x] = x;
      return;
    }
    succ_[x] = succ_[y];
    pred_[x] = y;
    pred_[succ_[y]] = x;
    succ_[y] = x;
  }

  void remove(DartId x) {
    if (succ_[x] != x) {
      succ_[pred_[x]] = succ_[x];
      pred_[succ_[x]] = pred_[x];
    }
    succ_[x] = pred_[x] = -1;
  }

  int count_faces() {
    ++generation_;
    const FlagWalker walk{succ_, pred_, sign_};
    int faces = 0;
    for (DartId d : placed_darts_) {
      for (int side = 0; side < 2; ++side) {
        const int start = 2 * d + side;
        if (stamp_[start] == generation_) continue;
        ++faces;
        int f = start;
        do {
          stamp_[f] = generation_;
          const int c = walk.corner(f);
          stamp_[c] = generation_;
          f = walk.across(c);
        } while (f != start);
      }
    }
    return faces;
  }

  // Euler genus 2 - V + E - F of the placed (connected) subgraph.
  int euler_genus() { return 2 - placed_vertices_ + placed_edges_ - count_faces(); }

  bool complete() {
    ++stats_.embeddings_seen;
    std::vector<std::vector<DartId>> rotation(g_.num_vertices());
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (placed_at_[v].empty()) continue;
      DartId d = placed_at_[v].front();
      do {
        rotation[v].push_back(d);
        d = succ_[d];
      } while (d != placed_at_[v].front());
    }
    Embedding emb = make_embedding(g_, std::move(rotation), sign_);
    if (accept_ && !accept_(emb)) return false;
    found_ = std::move(emb);
    return true;
  }

  std::vector<DartId> corners(VertexId v) const {
    if (placed_at_[v].empty()) return {-1};
    return placed_at_[v];
  }

  bool place(std::size_t k) {
    if (k == order_.size()) {
      if (placed_edges_ == 0 || euler_genus() != 1) return false;
      return complete();
    }
    const EdgeId e = order_[k];
    const DartId a = Multigraph::beg_dart(e), b = Multigraph::end_dart(e);
    const VertexId u = g_.beg(e), v = g_.end(e);
    const bool new_u = !vertex_placed_[u], new_v = !vertex_placed_[v];
    const bool tree = new_u || new_v;
    for (int s : {1, -1}) {
      if (tree && s < 0) continue;
      sign_[e] = s;
      for (DartId ya : corners(u)) {
        insert_after(a, ya);
        placed_at_[u].push_back(a);
        for (DartId yb : corners(v)) {
          if (++stats_.nodes > max_nodes_) {
            aborted_ = true;
          } else {
            insert_after(b, yb);
            placed_at_[v].push_back(b);
            placed_darts_.push_back(a);
            placed_darts_.push_back(b);
            ++placed_edges_;
            if (new_u) vertex_placed_[u] = true;
            if (new_v) vertex_placed_[v] = true;
            placed_vertices_ += new_u + new_v;
            const bool ok = euler_genus() <= 1 && place(k + 1);
            placed_vertices_ -= new_u + new_v;
            if (new_u) vertex_placed_[u] = false;
            if (new_v) vertex_placed_[v] = false;
            --placed_edges_;
            placed_darts_.resize(placed_darts_.size() - 2);
            placed_at_[v].pop_back();
            remove(b);
            if (ok) {
              placed_at_[u].pop_back();
              remove(a);
              sign_[e] = 1;
              return true;
            }
          }
          if (aborted_) break;
        }
        placed_at_[u].pop_back();
        remove(a);
        if (aborted_) break;
      }
      if (aborted_) break;
    }
    sign_[e] = 1;
    return false;
  }

  const Multigraph& g_;
  std::uint64_t max_nodes_;
  const EmbeddingFilter& accept_;
  std::vector<EdgeId> order_;
  std::vector<DartId> succ_, pred_;
  std::vector<int> sign_;
  std::vector<std::vector<DartId>> placed_at_;
  std::vector<DartId> placed_darts_;
  std::vector<bool> vertex_placed_;
  int placed_vertices_ = 0;
  int placed_edges_ = 0;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t generation_ = 0;
  bool aborted_ = false;
  ProjectiveSearchStats stats_;
  Embedding found_;
};

}  // namespace

ProjectiveResult projective_embed(const Multigraph& g, std::uint64_t max_nodes, const EmbeddingFilter& accept) {
  require_no_free_loops(g, "projective_embed");
  if (!is_connected(g)) throw std::invalid_argument("projective_embed: graph is disconnected");
  std::map<std::pair<VertexId, VertexId>, int> simple;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!g.is_loop(e)) simple[ordered_pair(g.beg(e), g.end(e))] = 1;
  ProjectiveResult r;
  r.stats.simple_vertices = g.num_vertices();
  r.stats.simple_edges = static_cast<int>(simple.size());
  if (r.stats.simple_edges > 3 * g.num_vertices() - 3) {
    r.stats.edge_bound_rejected = true;
    return r;
  }
  ProjectiveResult s = ProjectiveSearch(g, max_nodes, accept).run();
  s.stats.simple_vertices = r.stats.simple_vertices;
  s.stats.simple_edges = r.stats.simple_edges;
  return s;
}

std::string SurfaceClass::to_string() const {
  switch (kind) {
    case SurfaceKind::Sphere:
      return "Sphere";
    case SurfaceKind::ProjectivePlane:
      return "ProjectivePlane";
    case SurfaceKind::Other:
      return "Other(" + std::to_string(euler_characteristic) + ")";
    case SurfaceKind::Singular: {
      std::string s = "Singular(";
      for (std::size_t i = 0; i < singular_vertices.size(); ++i)
        s += (i ? "," : "") + std::to_string(singular_vertices[i]);
      return s + ")";
    }
  }
  return {};
}

namespace {

struct Arc {
  EdgeId edge;
  int dir;  // +1 beg -> end, -1 end -> beg
};

// Simple cycles of a balanced chain as arc sequences.
std::vector<std::vector<Arc>> simple_arc_cycles(const Multigraph& g, const IntVec& chain) {
  const int m = g.num_edges();
  std::vector<std::int64_t> rem(m);
  for (EdgeId e = 0; e < m; ++e) rem[e] = chain[e] < 0 ? -chain[e] : chain[e];
  auto tail = [&](EdgeId e) { return chain[e] > 0 ? g.beg(e) : g.end(e); };
  auto head = [&](EdgeId e) { return chain[e] > 0 ? g.end(e) : g.beg(e); };
  std::vector<std::vector<Arc>> out;
  for (EdgeId first = 0; first < m; ++first) {
    while (rem[first] > 0) {
      if (g.is_free_loop(first)) {
        --rem[first];
        out.push_back({{first, chain[first] > 0 ? 1 : -1}});
        continue;
      }
      const VertexId start = tail(first);
      std::vector<VertexId> path{start};
      std::vector<Arc> arcs;
      VertexId cur = start;
      EdgeId next = first;
      while (true) {
        if (next < 0) {
          for (EdgeId e = 0; e < m; ++e)
            if (rem[e] > 0 && !g.is_free_loop(e) && tail(e) == cur) {
              next = e;
              break;
            }
          if (next < 0) throw std::invalid_argument("split_into_simple_cycles: chain is not a cycle");
        }
        --rem[next];
        arcs.push_back({next, chain[next] > 0 ? 1 : -1});
        cur = head(next);
        next = -1;
        const auto it = std::find(path.begin(), path.end(), cur);
        if (it != path.end()) {
          const std::size_t i = it - path.begin();
          out.emplace_back(arcs.begin() + i, arcs.end());
          arcs.resize(i);
          path.resize(i + 1);
          if (path.size() == 1 && arcs.empty()) break;
        } else {
          path.push_back(cur);
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<IntVec> split_into_simple_cycles(const Multigraph& g, const IntVec& chain) {
  if (!is_cycle(g, chain)) throw std::invalid_argument("split_into_simple_cycles: chain is not a cycle");
  std::vector<IntVec> out;
  for (const auto& arcs : simple_arc_cycles(g, chain)) {
    IntVec c(g.num_edges(), 0);
    for (const Arc& a : arcs) c[a.edge] += a.dir;
    out.push_back(std::move(c));
  }
  return out;
}

SurfaceClass surface_from_cover(const Multigraph& g, const std::vector<IntVec>& cover) {
  require_no_free_loops(g, "surface_from_cover");
  const int m = g.num_edges();
  std::vector<std::int64_t> mult(m, 0);
  for (const auto& c : cover) {
    if (static_cast<int>(c.size()) != m || !is_cycle(g, c))
      throw std::invalid_argument("surface_from_cover: cover member is not a cycle");
    for (EdgeId e = 0; e < m; ++e) mult[e] += c[e] < 0 ? -c[e] : c[e];
  }
  for (EdgeId e = 0; e < m; ++e)
    if (mult[e] != 2)
      throw std::invalid_argument("surface_from_cover: edge " + g.edge_name(e) + " is covered " +
                                  std::to_string(mult[e]) + " times");

  SurfaceClass out;
  std::vector<int> parent(g.num_darts());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& c : cover)
    for (const auto& arcs : simple_arc_cycles(g, c)) {
      ++out.disks;
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        const Arc& in = arcs[i];
        const Arc& o = arcs[(i + 1) % arcs.size()];
        const DartId in_dart = in.dir > 0 ? Multigraph::end_dart(in.edge) : Multigraph::beg_dart(in.edge);
        const DartId out_dart = o.dir > 0 ? Multigraph::beg_dart(o.edge) : Multigraph::end_dart(o.edge);
        parent[find(in_dart)] = find(out_dart);
      }
    }
  int vertices = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& darts = g.darts_at(v);
    if (darts.empty()) continue;
    ++vertices;
    const int root = find(darts.front());
    if (std::any_of(darts.begin(), darts.end(), [&](DartId d) { return find(d) != root; }))
      out.singular_vertices.push_back(v);
  }
  out.euler_characteristic = out.disks - m + vertices;
  if (!out.singular_vertices.empty())
    out.kind = SurfaceKind::Singular;
  else if (out.euler_characteristic == 2)
    out.kind = SurfaceKind::Sphere;
  else if (out.euler_characteristic == 1)
    out.kind = SurfaceKind::ProjectivePlane;
  else
    out.kind = SurfaceKind::Other;
  return out;
}

}  // namespace emm
