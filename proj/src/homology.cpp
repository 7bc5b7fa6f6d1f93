#include "emm/homology.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace emm {

bool HomologyBasis::is_zero_coedge(EdgeId e) const {
  return std::all_of(coedges[e].begin(), coedges[e].end(), [](std::int64_t x) { return x == 0; });
}

IntMatrix HomologyBasis::coedge_matrix() const {
  IntMatrix m(genus(), num_edges(), 0);
  for (int e = 0; e < num_edges(); ++e)
    for (int k = 0; k < genus(); ++k) m(k, e) = coedges[e][k];
  return m;
}

namespace {

HomologyBasis build_from_tree(const Multigraph& g, std::vector<bool> in_tree) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  // Parent structure of the forest, rooted at the lowest vertex of each tree.
  std::vector<VertexId> parent(n, -1);
  std::vector<EdgeId> parent_edge(n, -1);
  std::vector<int> depth(n, -1);
  for (VertexId root = 0; root < n; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (DartId d : g.darts_at(v)) {
        const EdgeId e = Multigraph::edge_of(d);
        if (!in_tree[e]) continue;
        const VertexId w = g.dart_vertex(Multigraph::opposite(d));
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        parent[w] = v;
        parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }

  HomologyBasis basis;
  basis.in_tree = std::move(in_tree);
  for (EdgeId e = 0; e < m; ++e)
    if (!basis.in_tree[e]) basis.basis_edges.push_back(e);

  // Coefficient of tree edge t when walked from child x up to its parent.
  auto up_sign = [&](VertexId x) { return g.beg(parent_edge[x]) == x ? 1 : -1; };

  for (EdgeId e : basis.basis_edges) {
    IntVec f(m, 0);
    f[e] = 1;
    if (!g.is_free_loop(e) && !g.is_loop(e)) {
      // Close e = (u -> v) by the tree path v -> u.
      VertexId a = g.end(e);
      VertexId b = g.beg(e);
      std::vector<std::pair<VertexId, int>> down;
      while (a != b) {
        if (depth[a] >= depth[b]) {
          f[parent_edge[a]] += up_sign(a);
          a = parent[a];
        } else {
          down.emplace_back(b, -up_sign(b));
          b = parent[b];
        }
      }
      for (auto [x, s] : down) f[parent_edge[x]] += s;
    }
    basis.fundamental_cycles.push_back(std::move(f));
  }

  basis.coedges.assign(m, IntVec(basis.basis_edges.size(), 0));
  for (std::size_t k = 0; k < basis.basis_edges.size(); ++k)
    for (EdgeId e = 0; e < m; ++e) basis.coedges[e][k] = basis.fundamental_cycles[k][e];
  return basis;
}

std::vector<bool> bfs_forest(const Multigraph& g) {
  std::vector<bool> in_tree(g.num_edges(), false);
  std::vector<bool> seen(g.num_vertices(), false);
  for (VertexId root = 0; root < g.num_vertices(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      std::vector<DartId> darts = g.darts_at(v);
      std::sort(darts.begin(), darts.end());
      for (DartId d : darts) {
        const VertexId w = g.dart_vertex(Multigraph::opposite(d));
        if (seen[w]) continue;
        seen[w] = true;
        in_tree[Multigraph::edge_of(d)] = true;
        queue.push_back(w);
      }
    }
  }
  return in_tree;
}

}  // namespace

HomologyBasis homology_basis(const Multigraph& g) {
  const Components c = connected_components(g);
  if (c.count > 1)
    throw std::invalid_argument("homology_basis: graph is disconnected (" + std::to_string(c.count) +
                                " components)");
  return build_from_tree(g, bfs_forest(g));
}

HomologyBasis homology_basis(const Multigraph& g, std::span<const EdgeId> tree_edges) {
  if (!is_connected(g)) throw std::invalid_argument("homology_basis: graph is disconnected");
  std::vector<bool> in_tree(g.num_edges(), false);
  for (EdgeId e : tree_edges) {
    if (e < 0 || e >= g.num_edges() || in_tree[e] || g.is_loop(e))
      throw std::invalid_argument("homology_basis: invalid tree edge " + std::to_string(e));
    in_tree[e] = true;
  }
  std::vector<bool> not_tree(in_tree.size());
  for (std::size_t i = 0; i < in_tree.size(); ++i) not_tree[i] = !in_tree[i];
  if (static_cast<int>(tree_edges.size()) != std::max(0, g.num_vertices() - 1) ||
      connected_components(delete_edges(g, not_tree)).count > 1)
    throw std::invalid_argument("homology_basis: edges do not form a spanning tree");
  return build_from_tree(g, std::move(in_tree));
}

HomologyBasis forest_basis(const Multigraph& g) { return build_from_tree(g, bfs_forest(g)); }

bool Cycle::is_zero_one() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t x) { return x >= -1 && x <= 1; });
}

bool is_cycle(const Multigraph& g, const IntVec& chain) {
  std::vector<std::int64_t> boundary(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (chain[e] == 0 || g.is_free_loop(e)) continue;
    boundary[g.end(e)] += chain[e];
    boundary[g.beg(e)] -= chain[e];
  }
  return std::all_of(boundary.begin(), boundary.end(), [](std::int64_t x) { return x == 0; });
}

IntVec cycle_coordinates(const HomologyBasis& basis, const IntVec& chain) {
  IntVec c(basis.genus());
  for (int k = 0; k < basis.genus(); ++k) c[k] = chain[basis.basis_edges[k]];
  return c;
}

std::int64_t evaluate_cocycle(const HomologyBasis& basis, const IntVec& z, const IntVec& chain) {
  if (static_cast<int>(z.size()) != basis.genus()) throw std::invalid_argument("cocycle dimension mismatch");
  std::int64_t s = 0;
  for (int k = 0; k < basis.genus(); ++k) s += z[k] * chain[basis.basis_edges[k]];
  return s;
}

std::vector<Cycle> simple_cycles(const Multigraph& g) {
  const int m = g.num_edges();
  if (m > 64) throw std::invalid_argument("simple_cycles: more than 64 edges");
  std::vector<Cycle> out;
  std::unordered_set<std::uint64_t> seen;

  auto emit = [&](IntVec chain, std::uint64_t mask) {
    if (!seen.insert(mask).second) return;
    const int low = std::countr_zero(mask);
    if (chain[low] < 0)
      for (auto& x : chain) x = -x;
    out.push_back({std::move(chain), 1});
  };

  for (EdgeId e = 0; e < m; ++e)
    if (g.is_loop(e)) {
      IntVec c(m, 0);
      c[e] = 1;
      emit(std::move(c), std::uint64_t{1} << e);
    }

  const int n = g.num_vertices();
  std::vector<bool> on_path(n, false);
  IntVec chain(m, 0);
  std::uint64_t mask = 0;
  std::function<void(VertexId, VertexId, int)> extend = [&](VertexId start, VertexId x, int length) {
    for (DartId d : g.darts_at(x)) {
      const EdgeId e = Multigraph::edge_of(d);
      if (g.is_loop(e) || (mask >> e & 1)) continue;
      const VertexId w = g.dart_vertex(Multigraph::opposite(d));
      const int sign = Multigraph::dart_sign(d);
      if (w == start) {
        chain[e] = sign;
        emit(chain, mask | (std::uint64_t{1} << e));
        chain[e] = 0;
        continue;
      }
      if (w < start || on_path[w]) continue;
      on_path[w] = true;
      chain[e] = sign;
      mask |= std::uint64_t{1} << e;
      extend(start, w, length + 1);
      mask &= ~(std::uint64_t{1} << e);
      chain[e] = 0;
      on_path[w] = false;
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    on_path[s] = true;
    extend(s, s, 0);
    on_path[s] = false;
  }
  return out;
}

namespace {

std::uint64_t support_mask(const IntVec& c) {
  std::uint64_t mask = 0;
  for (std::size_t e = 0; e < c.size(); ++e)
    if (c[e] != 0) mask |= std::uint64_t{1} << e;
  return mask;
}

// All families of pairwise edge-disjoint cycles of size 2..max_parts, as
// increasing index tuples.
std::vector<std::vector<int>> disjoint_families(const std::vector<Cycle>& cycles, int max_parts) {
  std::vector<std::uint64_t> masks;
  for (const auto& c : cycles) masks.push_back(support_mask(c.coeffs));
  std::vector<std::vector<int>> families;
  std::vector<int> current;
  std::function<void(int, std::uint64_t)> grow = [&](int from, std::uint64_t used) {
    if (current.size() >= 2) families.push_back(current);
    if (static_cast<int>(current.size()) == max_parts) return;
    for (int i = from; i < static_cast<int>(cycles.size()); ++i) {
      if (masks[i] & used) continue;
      current.push_back(i);
      grow(i + 1, used | masks[i]);
      current.pop_back();
    }
  };
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    current = {i};
    grow(i + 1, masks[i]);
  }
  std::stable_sort(families.begin(), families.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return families;
}

}  // namespace

std::vector<Cycle> zero_one_cycles(const Multigraph& g, int max_parts) {
  std::vector<Cycle> simple = simple_cycles(g);
  std::vector<Cycle> out = simple;
  if (max_parts < 2) return out;
  for (const auto& family : disjoint_families(simple, max_parts)) {
    Cycle c{IntVec(g.num_edges(), 0), static_cast<int>(family.size())};
    for (int i : family)
      for (int e = 0; e < g.num_edges(); ++e) c.coeffs[e] += simple[i].coeffs[e];
    out.push_back(std::move(c));
  }
  return out;
}

bool is_coedge_by_columns(const HomologyBasis& basis, const IntVec& z) {
  if (static_cast<int>(z.size()) != basis.genus()) throw std::invalid_argument("is_coedge: dimension mismatch");
  if (std::all_of(z.begin(), z.end(), [](std::int64_t x) { return x == 0; }))
    throw std::invalid_argument("is_coedge: zero cocycle is not classified");
  IntVec neg(z.size());
  std::transform(z.begin(), z.end(), neg.begin(), [](std::int64_t x) { return -x; });
  return std::any_of(basis.coedges.begin(), basis.coedges.end(),
                     [&](const IntVec& col) { return col == z || col == neg; });
}

CoedgeCycleTest::CoedgeCycleTest(const Multigraph& g, const HomologyBasis& basis, int max_parts) {
  const std::vector<Cycle> cycles = simple_cycles(g);
  for (const auto& c : cycles) simple_.push_back(cycle_coordinates(basis, c.coeffs));
  if (max_parts >= 2) groups_ = disjoint_families(cycles, max_parts);
}

bool CoedgeCycleTest::operator()(const IntVec& z) const {
  if (std::all_of(z.begin(), z.end(), [](std::int64_t x) { return x == 0; }))
    throw std::invalid_argument("is_coedge: zero cocycle is not classified");
  std::vector<std::int64_t> value(simple_.size());
  for (std::size_t i = 0; i < simple_.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * simple_[i][k];
    if (s > 1 || s < -1) return false;
    value[i] = s;
  }
  // A family with parts p_j reaches sum |z(p_j)| under a suitable choice of
  // relative signs.
  for (const auto& family : groups_) {
    std::int64_t s = 0;
    for (int i : family) s += std::llabs(value[i]);
    if (s > 1) return false;
  }
  return true;
}

bool is_coedge_by_cycles(const Multigraph& g, const HomologyBasis& basis, const IntVec& z, int max_parts) {
  if (static_cast<int>(z.size()) != basis.genus()) throw std::invalid_argument("is_coedge: dimension mismatch");
  return CoedgeCycleTest(g, basis, max_parts)(z);
}

std::optional<EdgeId> edge_outside_2cutsets(const Multigraph& g) {
  if (!is_connected(g)) throw std::invalid_argument("edge_outside_2cutsets: graph is disconnected");
  const auto br = bridges(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (br[e]) throw std::invalid_argument("edge_outside_2cutsets: edge " + g.edge_name(e) + " is a bridge");
  bool cyclic = true;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) != 2) cyclic = false;
  if (g.num_edges() == 0 || cyclic) return std::nullopt;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    std::vector<bool> remove(g.num_edges(), false);
    remove[e] = true;
    const Multigraph h = delete_edges(g, remove);
    const auto hb = bridges(h);
    if (std::none_of(hb.begin(), hb.end(), [](bool b) { return b; })) return e;
  }
  return std::nullopt;
}

}  // namespace emm
