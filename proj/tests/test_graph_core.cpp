#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "emm/corpus.hpp"
#include "emm/homology.hpp"
#include "emm/lattice.hpp"
#include "emm/structure.hpp"
#include "support/generators.hpp"

using namespace emm;

namespace {

Multigraph theta() { return find_corpus_entry("theta")->graph; }

Multigraph path_graph(int n) {
  Multigraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

IntVec mat_vec(const IntMatrix& m, const IntVec& v) {
  IntVec out(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

IntVec negated(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

// Every 2-element edge subset leaves the graph connected when e is removed
// together with it.
bool in_no_two_cut(const Multigraph& g, EdgeId e) {
  for (EdgeId f = 0; f < g.num_edges(); ++f) {
    if (f == e) continue;
    std::vector<bool> drop(g.num_edges(), false);
    drop[e] = drop[f] = true;
    if (!is_connected(delete_edges(g, drop))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("genus of small graphs") {
  Multigraph loop(1);
  loop.add_edge(0, 0);
  CHECK(genus(loop) == 1);
  CHECK(genus(theta()) == 2);
  CHECK(genus(find_corpus_entry("fig1_genus9")->graph) == 9);
  CHECK(find_corpus_entry("fig1_genus9")->graph.num_vertices() == 13);
  Multigraph free;
  free.add_free_loop("x");
  CHECK(genus(free) == 1);
  for (const auto& entry : corpus()) CHECK(genus(entry.graph) == entry.genus);
}

TEST_CASE("homology basis of the theta graph with a chosen tree") {
  const Multigraph g = theta();
  const EdgeId tree[] = {2};
  const HomologyBasis b = homology_basis(g, tree);
  REQUIRE(b.genus() == 2);
  CHECK(b.coedges[0] == IntVec{1, 0});
  CHECK(b.coedges[1] == IntVec{0, 1});
  CHECK(b.coedges[2] == IntVec{-1, -1});
  CHECK(b.fundamental_cycles[0] == IntVec{1, 0, -1});
  CHECK(b.fundamental_cycles[1] == IntVec{0, 1, -1});
}

TEST_CASE("homology basis of a path and of K4") {
  const HomologyBasis p = homology_basis(path_graph(5));
  CHECK(p.genus() == 0);
  for (EdgeId e = 0; e < 4; ++e) CHECK(p.is_zero_coedge(e));

  const HomologyBasis k = homology_basis(complete_graph(4));
  REQUIRE(k.num_edges() == 6);
  REQUIRE(k.genus() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(k.coedges[k.basis_edges[i]][j] == (i == j ? 1 : 0));

  Multigraph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK_THROWS_AS(homology_basis(two), std::invalid_argument);
}

TEST_CASE("coedge matrix invariants on generated graphs") {
  for (const auto& g : testgen::connected_multigraphs(6)) {
    const HomologyBasis b = homology_basis(g);
    CHECK(rank(to_rational(b.coedge_matrix())) == genus(g));
    const auto br = bridges(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      CHECK(b.is_zero_coedge(e) == br[e]);
      for (int k = 0; k < b.genus(); ++k) CHECK(b.coedges[e][k] == b.fundamental_cycles[k][e]);
    }
    for (int i = 0; i < b.genus(); ++i) {
      CHECK(is_cycle(g, b.fundamental_cycles[i]));
      for (int j = 0; j < b.genus(); ++j) CHECK(b.coedges[b.basis_edges[j]][i] == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("decompose splits blocks and loops") {
  Multigraph bowtie(5);
  bowtie.add_edge(0, 1);
  bowtie.add_edge(1, 2);
  bowtie.add_edge(2, 0);
  bowtie.add_edge(0, 3);
  bowtie.add_edge(3, 4);
  bowtie.add_edge(4, 0);
  auto d = decompose(bowtie);
  REQUIRE(d.components.size() == 2);
  for (const auto& c : d.components) {
    CHECK(c.graph.num_edges() == 3);
    CHECK(c.graph.num_vertices() == 3);
  }

  CHECK(decompose(theta()).components.size() == 1);

  Multigraph pendant(3);
  pendant.add_edge(0, 1);
  pendant.add_edge(1, 2);
  pendant.add_edge(2, 0);
  pendant.add_edge(0, 0);
  d = decompose(pendant);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0].graph.num_edges() == 3);
  CHECK(d.components[1].is_loop);
}

TEST_CASE("decompose is a direct sum of coedge lattices") {
  for (const auto& g : testgen::connected_multigraphs(6)) {
    const Decomposition d = decompose(g);
    int total = 0;
    for (const auto& c : d.components) {
      total += c.basis.genus();
      CHECK((c.is_loop || (testgen::is_biconnected(c.graph))));
    }
    CHECK(total == genus(g));
    const HomologyBasis& pb = d.parent_basis;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      int hits = 0;
      for (const auto& c : d.components) {
        const IntVec proj = mat_vec(c.projection, pb.coedges[e]);
        const auto it = std::find(c.parent_edges.begin(), c.parent_edges.end(), e);
        if (it == c.parent_edges.end()) {
          CHECK(is_zero(proj));
          continue;
        }
        ++hits;
        const IntVec& local = c.basis.coedges[it - c.parent_edges.begin()];
        CHECK(proj == local);
        CHECK(mat_vec(c.inclusion, local) == pb.coedges[e]);
      }
      CHECK(hits == (pb.is_zero_coedge(e) ? 0 : 1));
    }
  }
}

TEST_CASE("cubic reduction examples") {
  auto r = cubic_reduction(cycle_graph(5));
  REQUIRE(r.size() == 1);
  CHECK(r[0].model.is_loop);

  r = cubic_reduction(complete_graph(4));
  REQUIRE(r.size() == 1);
  CHECK(r[0].model.graph.num_vertices() == 4);
  CHECK(r[0].model.graph.num_edges() == 6);

  r = cubic_reduction(complete_graph(5));
  REQUIRE(r.size() == 1);
  CHECK(r[0].model.graph.num_vertices() == 10);
  CHECK(genus(r[0].model.graph) == 6);
}

TEST_CASE("cubic reduction preserves genus and maps coedges to coedges") {
  auto check = [](const Multigraph& g) {
    for (const auto& [comp, model] : cubic_reduction(g)) {
      CHECK(genus(model.graph) == comp.basis.genus());
      if (!model.is_loop) {
        for (VertexId v = 0; v < model.graph.num_vertices(); ++v) CHECK(model.graph.degree(v) == 3);
        CHECK(testgen::is_two_edge_connected(model.graph));
      }
      CHECK(std::abs(determinant(model.to_source)) == 1);
      for (EdgeId e = 0; e < comp.graph.num_edges(); ++e) {
        const auto [r, s] = model.edge_image[e];
        REQUIRE(r >= 0);
        CHECK(model.original[r]);
        IntVec expect = model.basis.coedges[r];
        if (s < 0) expect = negated(expect);
        CHECK(mat_vec(model.to_source, comp.basis.coedges[e]) == expect);
      }
    }
  };
  for (const auto& g : testgen::connected_multigraphs(6)) check(g);
  for (const auto& entry : corpus()) check(entry.graph);
}

TEST_CASE("zero-one cycles") {
  CHECK(zero_one_cycles(cycle_graph(3), 2).size() == 1);
  const auto t = zero_one_cycles(theta(), 2);
  CHECK(t.size() == 3);
  CHECK(std::all_of(t.begin(), t.end(), [](const Cycle& c) { return c.parts == 1; }));

  Multigraph two(6);
  two.add_edge(0, 1);
  two.add_edge(1, 2);
  two.add_edge(2, 0);
  two.add_edge(3, 4);
  two.add_edge(4, 5);
  two.add_edge(5, 3);
  two.add_edge(0, 3);
  const auto c = zero_one_cycles(two, 2);
  CHECK(c.size() == 3);
  for (const auto& x : c) {
    CHECK(x.is_zero_one());
    CHECK(is_cycle(two, x.coeffs));
  }
}

TEST_CASE("simple cycles match an exhaustive chain oracle") {
  // Oracle: every {-1,0,1} chain with zero boundary whose support is
  // connected with all degrees 2 is a simple cycle.
  for (const auto& g : testgen::connected_multigraphs(5)) {
    const int m = g.num_edges();
    std::set<IntVec> oracle;
    IntVec chain(m, 0);
    std::function<void(int)> rec = [&](int e) {
      if (e == m) {
        if (is_zero(chain) || !is_cycle(g, chain)) return;
        std::vector<int> deg(g.num_vertices(), 0);
        std::vector<bool> keep(m, true);
        for (EdgeId x = 0; x < m; ++x) {
          if (chain[x] == 0) continue;
          keep[x] = false;
          ++deg[g.beg(x)];
          ++deg[g.end(x)];
        }
        if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 0 && d != 2; })) return;
        // connected support: the number of vertices touched equals the number of edges
        int verts = 0;
        for (int d : deg) verts += d > 0;
        int edges = 0;
        for (auto x : chain) edges += x != 0;
        if (verts != edges) return;
        Multigraph sub(g.num_vertices());
        for (EdgeId x = 0; x < m; ++x)
          if (chain[x] != 0) sub.add_edge(g.beg(x), g.end(x));
        if (connected_components(sub).count != g.num_vertices() - verts + 1) return;
        IntVec key = chain;
        const auto first = std::find_if(key.begin(), key.end(), [](std::int64_t x) { return x != 0; });
        if (*first < 0) key = negated(key);
        oracle.insert(key);
        return;
      }
      for (int s : {0, 1, -1}) {
        chain[e] = s;
        rec(e + 1);
      }
      chain[e] = 0;
    };
    rec(0);
    std::set<IntVec> got;
    for (const auto& c : simple_cycles(g)) got.insert(c.coeffs);
    CHECK(got == oracle);
  }
}

TEST_CASE("is_coedge examples") {
  const Multigraph g = theta();
  const HomologyBasis b = homology_basis(g);
  CHECK(is_coedge_by_columns(b, {1, 0}));
  CHECK(is_coedge_by_cycles(g, b, {1, 0}));
  CHECK_FALSE(is_coedge_by_columns(b, {1, -1}));
  CHECK_FALSE(is_coedge_by_cycles(g, b, {1, -1}));
  CHECK_THROWS_AS(is_coedge_by_columns(b, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(is_coedge_by_cycles(g, b, {0, 0}), std::invalid_argument);

  const Multigraph k4 = complete_graph(4);
  const HomologyBasis kb = homology_basis(k4);
  for (EdgeId e = 0; e < 6; ++e) {
    CHECK(is_coedge_by_columns(kb, kb.coedges[e]));
    CHECK(is_coedge_by_cycles(k4, kb, kb.coedges[e]));
  }
}

TEST_CASE("edge outside two-element cuts") {
  CHECK_FALSE(edge_outside_2cutsets(cycle_graph(4)).has_value());
  Multigraph loop(1);
  loop.add_edge(0, 0);
  CHECK_FALSE(edge_outside_2cutsets(loop).has_value());
  Multigraph free;
  free.add_free_loop();
  CHECK_FALSE(edge_outside_2cutsets(free).has_value());
  CHECK_THROWS_AS(edge_outside_2cutsets(path_graph(3)), std::invalid_argument);

  for (const auto& g : testgen::connected_multigraphs(7)) {
    if (!testgen::is_two_edge_connected(g) || g.num_edges() == 0) continue;
    const auto e = edge_outside_2cutsets(g);
    bool cycle_graph_like = true;
    for (VertexId v = 0; v < g.num_vertices(); ++v) cycle_graph_like &= g.degree(v) == 2;
    if (e) {
      CHECK(in_no_two_cut(g, *e));
    } else if (!cycle_graph_like) {
      for (EdgeId f = 0; f < g.num_edges(); ++f) CHECK_FALSE(in_no_two_cut(g, f));
    }
    bool min_degree_three = true;
    for (VertexId v = 0; v < g.num_vertices(); ++v) min_degree_three &= g.degree(v) >= 3;
    if (testgen::is_biconnected(g) && (cycle_graph_like || min_degree_three))
      CHECK_MESSAGE(e.has_value() != cycle_graph_like, to_edge_list(g));
  }
  for (const auto& g : testgen::bridgeless_cubic(8)) CHECK(edge_outside_2cutsets(g).has_value());

  // Two triangles sharing a vertex: every edge lies in a 2-element cut.
  Multigraph bowtie(5);
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}) bowtie.add_edge(a, b);
  CHECK_FALSE(edge_outside_2cutsets(bowtie).has_value());
}

TEST_CASE("edge-list round trip and errors") {
  const Multigraph g = find_corpus_entry("fig1_genus9")->graph;
  const Multigraph h = parse_edge_list_string(to_edge_list(g));
  CHECK(h.num_vertices() == g.num_vertices());
  CHECK(h.num_edges() == g.num_edges());
  CHECK(to_edge_list(h) == to_edge_list(g));
  const Multigraph f = parse_edge_list_string("# comment\nLOOP z\na b\n");
  CHECK(f.num_edges() == 2);
  CHECK(f.is_free_loop(0));
  CHECK_THROWS_AS(parse_edge_list_string("a\n"), std::invalid_argument);
}
