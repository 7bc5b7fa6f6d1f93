#include "emm/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace emm {

namespace {

using Adjacency = std::vector<std::vector<int>>;

Adjacency adjacency(const Multigraph& g) {
  const int n = g.num_vertices();
  Adjacency a(n, std::vector<int>(n, 0));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.is_free_loop(e)) continue;
    if (g.is_loop(e)) {
      ++a[g.beg(e)][g.beg(e)];
    } else {
      ++a[g.beg(e)][g.end(e)];
      ++a[g.end(e)][g.beg(e)];
    }
  }
  return a;
}

std::vector<int> refine(const Adjacency& a, std::vector<int> colors) {
  const int n = static_cast<int>(a.size());
  int count = static_cast<int>(std::set<int>(colors.begin(), colors.end()).size());
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v] = {colors[v], a[v][v]};
      std::vector<std::pair<int, int>> nb;
      for (int u = 0; u < n; ++u)
        if (u != v && a[v][u] > 0) nb.emplace_back(colors[u], a[v][u]);
      std::sort(nb.begin(), nb.end());
      for (auto [c, m] : nb) {
        sig[v].push_back(c);
        sig[v].push_back(m);
      }
    }
    std::vector<std::vector<int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v)
      colors[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    const int next = static_cast<int>(sorted.size());
    if (next == count) return colors;
    count = next;
  }
}

}  // namespace

CanonicalLabeling canonical_labeling(const Multigraph& g) {
  const Adjacency a = adjacency(g);
  const int n = g.num_vertices();
  CanonicalLabeling best;
  bool have = false;
  std::function<void(std::vector<int>)> search = [&](std::vector<int> colors) {
    colors = refine(a, std::move(colors));
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[colors[v]].push_back(v);
    const std::vector<int>* target = nullptr;
    for (const auto& [c, members] : cells)
      if (members.size() > 1) {
        target = &members;
        break;
      }
    if (!target) {
      std::vector<VertexId> order(n);
      for (int v = 0; v < n; ++v) order[colors[v]] = v;
      std::string s;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s.push_back(static_cast<char>('0' + a[order[i]][order[j]]));
      if (!have || s < best.key) {
        best.key = std::move(s);
        best.order = std::move(order);
        have = true;
      }
      return;
    }
    const std::vector<int> members = *target;
    for (int v : members) {
      std::vector<int> next(n);
      for (int u = 0; u < n; ++u) next[u] = 2 * colors[u] + 1;
      next[v] = 2 * colors[v];
      search(next);
    }
  };
  search(std::vector<int>(n, 0));
  int free_loops = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) free_loops += g.is_free_loop(e);
  best.key = std::to_string(n) + ":" + std::to_string(free_loops) + ":" + best.key;
  return best;
}

CanonicalGraph canonical_graph(const Multigraph& g) {
  const CanonicalLabeling lab = canonical_labeling(g);
  const int n = g.num_vertices();
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[lab.order[i]] = i;

  struct Item {
    int lo, hi;
    EdgeId edge;
    int sign;
  };
  std::vector<Item> items;
  std::vector<EdgeId> free_loops;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.is_free_loop(e)) {
      free_loops.push_back(e);
      continue;
    }
    const int p = position[g.beg(e)], q = position[g.end(e)];
    items.push_back({std::min(p, q), std::max(p, q), e, p <= q ? 1 : -1});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& x, const Item& y) { return std::pair(x.lo, x.hi) < std::pair(y.lo, y.hi); });

  CanonicalGraph out;
  out.key = lab.key;
  out.graph = Multigraph(n);
  out.edge_map.resize(g.num_edges());
  for (const Item& it : items) out.edge_map[it.edge] = {out.graph.add_edge(it.lo, it.hi), it.sign};
  for (EdgeId e : free_loops) out.edge_map[e] = {out.graph.add_free_loop(), 1};
  return out;
}

}  // namespace emm
