#include <algorithm>
#include <functional>
#include <numeric>

#include "doctest.h"
#include "emm/corpus.hpp"
#include "emm/embedding.hpp"
#include "emm/homology.hpp"
#include "support/generators.hpp"

using namespace emm;

namespace {

Multigraph graph(const std::string& name) { return find_corpus_entry(name)->graph; }

bool has_free_loop(const Multigraph& g) {
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.is_free_loop(e)) return true;
  return false;
}

std::vector<EdgeId> bfs_tree(const Multigraph& g) {
  std::vector<EdgeId> tree;
  const HomologyBasis b = homology_basis(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (b.in_tree[e]) tree.push_back(e);
  return tree;
}

struct BruteForce {
  bool planar = false;
  bool euler_genus_one = false;
  bool complete = true;
};

// Every rotation system (first dart fixed per vertex) with every sign
// pattern that is +1 on a spanning tree.
BruteForce brute_force_embeddings(const Multigraph& g, std::uint64_t limit) {
  BruteForce out;
  const int n = g.num_vertices();
  std::uint64_t count = 1;
  for (VertexId v = 0; v < n; ++v)
    for (int k = 2; k < g.degree(v); ++k) count *= k;
  const auto tree = bfs_tree(g);
  std::vector<EdgeId> free_edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (std::find(tree.begin(), tree.end(), e) == tree.end()) free_edges.push_back(e);
  count <<= free_edges.size();
  if (count > limit) {
    out.complete = false;
    return out;
  }
  std::vector<std::vector<DartId>> rotation(n);
  for (VertexId v = 0; v < n; ++v) {
    rotation[v] = g.darts_at(v);
    std::sort(rotation[v].begin(), rotation[v].end());
  }
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      for (std::uint64_t mask = 0; mask < (1ULL << free_edges.size()); ++mask) {
        std::vector<int> signs(g.num_edges(), 1);
        for (std::size_t i = 0; i < free_edges.size(); ++i)
          if (mask >> i & 1) signs[free_edges[i]] = -1;
        const Embedding emb = make_embedding(g, rotation, signs);
        const int eg = 2 - euler_characteristic(g, emb);
        if (mask == 0 && eg == 0) out.planar = true;
        if (eg == 1) out.euler_genus_one = true;
      }
      return;
    }
    auto& r = rotation[v];
    if (r.size() <= 2) {
      rec(v + 1);
      return;
    }
    std::sort(r.begin() + 1, r.end());
    do rec(v + 1);
    while (std::next_permutation(r.begin() + 1, r.end()));
  };
  rec(0);
  return out;
}

IntVec chain_sum(const std::vector<IntVec>& chains, int m) {
  IntVec s(m, 0);
  for (const auto& c : chains)
    for (int e = 0; e < m; ++e) s[e] += c[e];
  return s;
}

Multigraph k5_wedge_k5() {
  Multigraph g(9);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) g.add_edge(i, j);
  const int shift[5] = {4, 5, 6, 7, 8};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) g.add_edge(shift[i], shift[j]);
  return g;
}

Multigraph k44_minus_edge() {
  Multigraph g(8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0) g.add_edge(i, 4 + j);
  return g;
}

}  // namespace

TEST_CASE("planar_embed on the corpus") {
  SUBCASE("K4 has four faces") {
    const auto r = planar_embed(graph("k4"));
    REQUIRE(r.embedding);
    CHECK(r.embedding->num_faces() == 4);
    CHECK(r.embedding->orientable());
  }
  SUBCASE("theta has three faces") {
    const auto r = planar_embed(graph("theta"));
    REQUIRE(r.embedding);
    CHECK(r.embedding->num_faces() == 3);
  }
  SUBCASE("K5 and K3,3 are rejected with a Kuratowski subgraph") {
    for (const char* name : {"k5", "k33"}) {
      const Multigraph g = graph(name);
      const auto r = planar_embed(g);
      CHECK_FALSE(r.embedding);
      REQUIRE_FALSE(r.kuratowski_edges.empty());
      std::vector<bool> keep(g.num_edges(), true);
      for (EdgeId e : r.kuratowski_edges) keep[e] = false;
      std::vector<bool> remove(g.num_edges());
      for (EdgeId e = 0; e < g.num_edges(); ++e) remove[e] = keep[e];
      CHECK_FALSE(planar_embed(delete_edges(g, remove)).embedding);
    }
  }
  SUBCASE("corpus planarity flags") {
    for (const auto& entry : corpus()) {
      if (has_free_loop(entry.graph)) continue;
      CAPTURE(entry.name);
      CHECK(planar_embed(entry.graph).embedding.has_value() == entry.planar);
    }
  }
}

TEST_CASE("planar faces are a compatibly oriented double cover") {
  for (const Multigraph& g : testgen::connected_multigraphs(7)) {
    if (has_free_loop(g) || g.num_vertices() == 0) continue;
    const auto r = planar_embed(g);
    if (!r.embedding) continue;
    const Embedding& emb = *r.embedding;
    CHECK(euler_characteristic(g, emb) == 2);
    const IntVec sum = chain_sum(emb.face_chains, g.num_edges());
    CHECK(std::all_of(sum.begin(), sum.end(), [](auto x) { return x == 0; }));
    for (const auto& c : emb.face_chains) CHECK(is_cycle(g, c));
    if (testgen::is_biconnected(g) && g.num_edges() >= 2) {
      CHECK(faces_are_cycle_double_cover(g, emb));
      const SurfaceClass s = surface_from_cover(g, emb.face_chains);
      CHECK(s.kind == SurfaceKind::Sphere);
      CHECK(s.disks == genus(g) + 1);
    }
  }
}

TEST_CASE("projective_embed on the corpus") {
  SUBCASE("K5 embeds with six faces") {
    const Multigraph g = graph("k5");
    const auto r = projective_embed(g);
    REQUIRE(r.embedding);
    CHECK(euler_characteristic(g, *r.embedding) == 1);
    CHECK(r.embedding->num_faces() == 6);
  }
  SUBCASE("K3,3 and Petersen embed") {
    for (const char* name : {"k33", "petersen"}) {
      const Multigraph g = graph(name);
      const auto r = projective_embed(g);
      REQUIRE(r.embedding);
      CHECK(euler_characteristic(g, *r.embedding) == 1);
      CHECK_FALSE(r.embedding->orientable());
    }
  }
  SUBCASE("K7 fails the edge bound") {
    const auto r = projective_embed(graph("k7"));
    CHECK_FALSE(r.embedding);
    CHECK(r.stats.edge_bound_rejected);
    CHECK(r.stats.simple_edges == 21);
    CHECK(r.stats.simple_vertices == 7);
    CHECK(r.stats.nodes == 0);
  }
  SUBCASE("genus 9 example is exhausted") {
    const auto r = projective_embed(graph("fig1_genus9"));
    CHECK_FALSE(r.embedding);
    CHECK_FALSE(r.stats.edge_bound_rejected);
    CHECK(r.stats.exhausted);
    CHECK(r.stats.embeddings_seen == 0);
  }
  SUBCASE("known obstructions are exhausted") {
    for (const Multigraph& g : {complete_bipartite(3, 5), k44_minus_edge(), k5_wedge_k5()}) {
      const auto r = projective_embed(g);
      CHECK_FALSE(r.embedding);
      CHECK((r.stats.exhausted || r.stats.edge_bound_rejected));
    }
  }
  SUBCASE("K6 and K3,4 embed") {
    for (const Multigraph& g : {complete_graph(6), complete_bipartite(3, 4)}) {
      const auto r = projective_embed(g);
      REQUIRE(r.embedding);
      CHECK(euler_characteristic(g, *r.embedding) == 1);
    }
  }
  SUBCASE("node budget is reported") {
    const auto r = projective_embed(graph("fig1_genus9"), 10);
    CHECK_FALSE(r.embedding);
    CHECK(r.stats.budget_exceeded);
    CHECK_FALSE(r.stats.exhausted);
  }
}

TEST_CASE("embedding searches agree with brute force over rotation systems") {
  int compared = 0;
  for (const Multigraph& g : testgen::connected_multigraphs(6)) {
    if (has_free_loop(g) || g.num_edges() == 0) continue;
    const BruteForce bf = brute_force_embeddings(g, 50'000);
    if (!bf.complete) continue;
    ++compared;
    CAPTURE(to_edge_list(g));
    CHECK(planar_embed(g).embedding.has_value() == bf.planar);
    const auto r = projective_embed(g);
    CHECK(r.embedding.has_value() == bf.euler_genus_one);
    if (r.embedding) CHECK(euler_characteristic(g, *r.embedding) == 1);
    else CHECK(r.stats.exhausted);
  }
  CHECK(compared > 50);
}

TEST_CASE("projective search with a double cover filter") {
  for (const char* name : {"k5", "k33", "petersen"}) {
    CAPTURE(name);
    const Multigraph g = graph(name);
    const auto r = projective_embed(g, 200'000'000, [&](const Embedding& e) { return faces_are_cycle_double_cover(g, e); });
    REQUIRE(r.embedding);
    const SurfaceClass s = surface_from_cover(g, r.embedding->face_chains);
    CHECK(s.kind == SurfaceKind::ProjectivePlane);
    CHECK(s.euler_characteristic == 1);
    CHECK(s.disks == genus(g));
  }
}

TEST_CASE("surface_from_cover") {
  SUBCASE("K4 faces give the sphere") {
    const Multigraph g = graph("k4");
    const SurfaceClass s = surface_from_cover(g, planar_embed(g).embedding->face_chains);
    CHECK(s.kind == SurfaceKind::Sphere);
    CHECK(s.disks == 4);
    CHECK(s.to_string() == "Sphere");
  }
  SUBCASE("K4 Hamiltonian cycles give the projective plane") {
    const Multigraph g = graph("k4");
    std::vector<IntVec> cover;
    for (const Cycle& c : simple_cycles(g))
      if (std::count_if(c.coeffs.begin(), c.coeffs.end(), [](auto x) { return x != 0; }) == 4) cover.push_back(c.coeffs);
    REQUIRE(cover.size() == 3);
    const SurfaceClass s = surface_from_cover(g, cover);
    CHECK(s.kind == SurfaceKind::ProjectivePlane);
    CHECK(s.disks == 3);
  }
  SUBCASE("edge covered three times is rejected by name") {
    const Multigraph g = graph("theta");
    const IntVec c12{1, -1, 0}, c23{0, 1, -1}, c31{-1, 0, 1};
    CHECK_THROWS_WITH_AS(surface_from_cover(g, {c12, c12, c23, c31}), doctest::Contains("e1"), std::invalid_argument);
  }
  SUBCASE("uncovered edge is rejected") {
    const Multigraph g = graph("theta");
    const IntVec c12{1, -1, 0};
    CHECK_THROWS_AS(surface_from_cover(g, {c12, c12}), std::invalid_argument);
  }
  SUBCASE("two spheres sharing a vertex are singular") {
    Multigraph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(0, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 0);
    const IntVec t1{1, 1, 1, 0, 0, 0}, t2{0, 0, 0, 1, 1, 1};
    const SurfaceClass s = surface_from_cover(g, {t1, t1, t2, t2});
    CHECK(s.kind == SurfaceKind::Singular);
    CHECK(s.singular_vertices == std::vector<VertexId>{0});
  }
  SUBCASE("K5 on the torus") {
    const Multigraph g = graph("k5");
    bool found = false;
    for (const auto& cover : testgen::cycle_double_covers(g, 5)) {
      std::vector<IntVec> chains;
      for (const Cycle& c : cover) chains.push_back(c.coeffs);
      const SurfaceClass s = surface_from_cover(g, chains);
      if (s.kind == SurfaceKind::Other && s.euler_characteristic == 0) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("split_into_simple_cycles") {
  Multigraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(0, 3);
  g.add_edge(3, 4);
  g.add_edge(4, 0);
  const IntVec figure_eight{1, 1, 1, 1, 1, 1};
  const auto parts = split_into_simple_cycles(g, figure_eight);
  CHECK(parts.size() == 2);
  CHECK(chain_sum(parts, 6) == figure_eight);
  for (const auto& p : parts) CHECK(is_cycle(g, p));
}
