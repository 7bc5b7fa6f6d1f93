#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emm/homology.hpp"
#include "emm/lattice.hpp"
#include "emm/multigraph.hpp"
#include "emm/verify.hpp"

namespace emm {

/// One of the three graphs obtained by deleting both ends of e0 and
/// reconnecting the four loose darts in pairs.
struct SplitGraph {
  Multigraph graph;
  /// e1 and e2 in `graph`; e2 is -1 when both pairings lie on one strand.
  std::array<EdgeId, 2> new_edges{-1, -1};
  /// Per edge of `graph`, the chain in G it stands for.
  std::vector<IntVec> lift;
  HomologyBasis basis;  // forest basis of `graph`
  /// phi: H^1(G) -> H^1(graph), genus(graph) x genus(G).
  IntMatrix phi;
  /// Integer basis of ker phi (exact linear algebra).
  std::vector<IntVec> kernel;
  bool has_bridge = false;
};

/// Darts a, b at u = beg(e0) and c, d at v = end(e0) are paired as
///   G1: a-c, b-d    G2: a-d, b-c    G3: a-b, d-c
/// with new edges oriented along the listed direction. A strand running
/// from u to v crosses e0 forward.
struct SplitTriple {
  EdgeId e0 = -1;
  VertexId u = kNoVertex, v = kNoVertex;
  std::array<DartId, 4> darts{};  // a, b, c, d
  HomologyBasis basis;            // forest basis of G
  std::array<SplitGraph, 3> graphs;
  /// Cocycles of G killed by phi_1, phi_2, phi_3: a+c, a+d, a+b with each
  /// dart's coedge oriented into its vertex (a+b = e0*).
  std::array<IntVec, 3> kernel_cocycles;
};

/// Throws std::invalid_argument when G is not cubic (free loops allowed) or
/// e0 is a loop.
SplitTriple split_at_edge(const Multigraph& g, EdgeId e0);

/// psi_i(q_i): the pullback of a form on G_i to G.
QuadForm push_form(const SplitTriple& t, int i, const QuadForm& qi);

struct CValues {
  /// c1 = psi_1(q_1)(e0*), c2 = psi_2(q_2)(e0*), c3 = psi_3(q_3)(a + d);
  /// unset when that q_i is not available.
  std::array<std::optional<Rational>, 3> c;
  /// psi_j(q_j) on the kernel cocycle of phi_i, indexed [i][j].
  std::array<std::array<std::optional<Rational>, 3>, 3> kernel_values;
  /// q_i(e1* - e2*) = 4 - c_i wherever it applies.
  bool complement_identity = true;
};

CValues c_values(const SplitTriple& t, const std::array<std::optional<QuadForm>, 3>& q);

struct QemmStep {
  int depth = 0;
  int vertices = 0;
  int edges = 0;
  int genus = 0;
  std::string key;  // canonical key of the graph at this step
  EdgeId e0 = -1;
  std::array<std::optional<Rational>, 3> c;
  std::array<bool, 3> bridged{};
  /// "base", "memo", "A", "B", "generic-1", "generic-2", "generic-3",
  /// "perturb", or "fallback-<case>".
  std::string case_name;
  std::array<Rational, 3> x;
  std::optional<Rational> epsilon;
  /// The chosen combination on in(a)+in(c), in(a)+in(d) and e0*.
  std::array<std::optional<Rational>, 3> kernel_norms;
  int extra_squares = 0;  // perturb: coedge squares of the cubic model not in S(G)
  /// Denominator the verified form was rounded to (free Gram entries, coedge
  /// norms kept exact); empty when rounding did not verify.
  std::optional<std::int64_t> snapped;
};

struct StrongEmmCertificate {
  HomologyBasis basis;
  QuadForm form;
  std::vector<QemmStep> trace;
  EmmVerdict verdict;
  std::uint64_t memo_hits = 0;
  std::uint64_t memo_size = 0;
};

/// Edge-splitting recursion on a bridgeless cubic graph (vertex-free loops
/// allowed as components). Throws std::invalid_argument on bridges or
/// vertices of degree other than 3.
StrongEmmCertificate strong_qemm_cubic(const Multigraph& g);

/// Any graph: decompose, reduce each piece to a cubic model, run the cubic
/// recursion, pull back, and perturb by q0 when the model has more coedges.
StrongEmmCertificate strong_qemm(const Multigraph& g);

}  // namespace emm
