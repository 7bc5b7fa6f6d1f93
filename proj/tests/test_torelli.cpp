#include <algorithm>
#include <random>

#include "doctest.h"
#include "emm/corpus.hpp"
#include "emm/torelli.hpp"
#include "support/generators.hpp"

using namespace emm;

TEST_CASE("s_of_g") {
  SUBCASE("tree") {
    Multigraph t;
    const VertexId a = t.add_vertex(), b = t.add_vertex(), c = t.add_vertex();
    t.add_edge(a, b);
    t.add_edge(b, c);
    CHECK(s_of_g(t, forest_basis(t)).empty());
  }
  SUBCASE("theta") {
    const Multigraph g = find_corpus_entry("theta")->graph;
    CHECK(s_of_g(g, forest_basis(g)).size() == 3);
  }
  SUBCASE("digon") {
    Multigraph d;
    const VertexId a = d.add_vertex(), b = d.add_vertex();
    d.add_edge(a, b);
    d.add_edge(a, b);
    CHECK(s_of_g(d, forest_basis(d)).size() == 1);
  }
  SUBCASE("never more than the non-bridge edges") {
    for (const Multigraph& g : testgen::connected_multigraphs(6)) {
      const auto b = bridges(g);
      CHECK(s_of_g(g, forest_basis(g)).size() <= static_cast<std::size_t>(std::count(b.begin(), b.end(), false)));
    }
  }
}

TEST_CASE("torelli_regular on the corpus") {
  const Multigraph fig1 = find_corpus_entry("fig1_genus9")->graph;
  SUBCASE("fig1 central is not regular") {
    const RegularityVerdict v = torelli_regular(fig1, FanKind::Central);
    REQUIRE(v.regular);
    CHECK_FALSE(*v.regular);
    REQUIRE(v.zemm);
    CHECK(v.zemm->status == ZemmStatus::DoesNotExist);
    CHECK(v.zemm->components.at(0).projective.exhausted);
  }
  SUBCASE("fig1 perfect is regular") {
    const RegularityVerdict v = torelli_regular(fig1, FanKind::Perfect);
    REQUIRE(v.regular);
    CHECK(*v.regular);
    CHECK(verify_emm(fig1, forest_basis(fig1), v.qemm->form, EmmKind::Q, true).ok);
  }
  SUBCASE("K7 central is not regular") {
    const RegularityVerdict v = torelli_regular(find_corpus_entry("k7")->graph, FanKind::Central);
    REQUIRE(v.regular);
    CHECK_FALSE(*v.regular);
  }
  SUBCASE("central below genus 7 and second Voronoi everywhere") {
    for (const CorpusEntry& c : corpus()) {
      CAPTURE(c.name);
      const RegularityVerdict vor = torelli_regular(c.graph, FanKind::SecondVoronoi);
      REQUIRE(vor.regular);
      CHECK(*vor.regular);
      CHECK(totally_unimodular(forest_basis(c.graph).coedge_matrix()).totally_unimodular);
      if (c.genus > 6) continue;
      const RegularityVerdict cent = torelli_regular(c.graph, FanKind::Central);
      REQUIRE(cent.regular);
      CHECK(*cent.regular);
      CHECK(verify_emm(c.graph, forest_basis(c.graph), *cent.zemm->form, EmmKind::Z, false).ok);
    }
  }
  SUBCASE("fan names") {
    for (FanKind f : {FanKind::Perfect, FanKind::SecondVoronoi, FanKind::Central}) CHECK(parse_fan(to_string(f)) == f);
    CHECK_FALSE(parse_fan("voronoi"));
  }
}

TEST_CASE("torelli_regular on generated graphs") {
  for (const Multigraph& g : testgen::connected_multigraphs(6)) {
    const RegularityVerdict perf = torelli_regular(g, FanKind::Perfect);
    const RegularityVerdict vor = torelli_regular(g, FanKind::SecondVoronoi);
    const RegularityVerdict cent = torelli_regular(g, FanKind::Central);
    CHECK(perf.regular == std::optional<bool>(true));
    CHECK(vor.regular == std::optional<bool>(true));
    const ZemmResult z = decide_zemm(g);
    CHECK(cent.regular == std::optional<bool>(z.status == ZemmStatus::Exists));
  }
}

TEST_CASE("contraction monotonicity") {
  SUBCASE("one edge of K4") {
    const Multigraph k4 = find_corpus_entry("k4")->graph;
    const MonotonicityReport r = contraction_monotonicity_check(k4, {0});
    CHECK(r.ok);
    CHECK(r.contraction.graph.num_vertices() == 3);
    CHECK(r.small.size() == 5);
    CHECK(std::includes(r.big.begin(), r.big.end(), r.small.begin(), r.small.end()));
  }
  SUBCASE("contracting bridges changes nothing") {
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(2, 3);  // bridge
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 3);
    g.add_edge(5, 5);
    const MonotonicityReport r = contraction_monotonicity_check(g, {3});
    CHECK(r.ok);
    CHECK(r.small == r.big);
  }
  SUBCASE("nothing contracted") {
    const Multigraph theta = find_corpus_entry("theta")->graph;
    const MonotonicityReport r = contraction_monotonicity_check(theta, {});
    CHECK(r.ok);
    CHECK(r.small == r.big);
  }
  SUBCASE("invalid edge") {
    CHECK_THROWS_AS(contraction_monotonicity_check(find_corpus_entry("k4")->graph, {6}), std::out_of_range);
  }
  SUBCASE("Z-emms restrict along random contraction chains") {
    std::mt19937 rng(11);
    int chains = 0;
    for (const char* name : {"k4", "k5", "k33", "petersen", "w5", "prism"}) {
      Multigraph g = find_corpus_entry(name)->graph;
      for (int round = 0; round < 4; ++round) {
        Multigraph cur = g;
        std::optional<QuadForm> q = decide_zemm(cur).form;
        REQUIRE(q);
        while (cur.num_edges() > 0) {
          const EdgeId e = static_cast<EdgeId>(rng() % cur.num_edges());
          const MonotonicityReport r = contraction_monotonicity_check(cur, {e}, q, EmmKind::Z);
          CHECK(r.ok);
          for (const auto& p : r.problems) MESSAGE(p);
          cur = r.contraction.graph;
          q = r.restricted;
          CHECK(decide_zemm(cur).status == ZemmStatus::Exists);
        }
        ++chains;
      }
    }
    CHECK(chains == 24);
  }
}
