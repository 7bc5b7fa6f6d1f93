#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emm/homology.hpp"
#include "emm/lattice.hpp"
#include "emm/multigraph.hpp"
#include "emm/qemm.hpp"
#include "emm/verify.hpp"
#include "emm/zemm.hpp"

namespace emm {

enum class FanKind { Perfect, SecondVoronoi, Central };

/// "perf", "vor", "cent".
std::string to_string(FanKind f);
std::optional<FanKind> parse_fan(const std::string& s);

/// Distinct nonzero coedges up to sign (first nonzero entry positive), sorted.
using SGSet = std::vector<IntVec>;

SGSet s_of_g(const Multigraph& g, const HomologyBasis& basis);

struct RegularityVerdict {
  FanKind fan = FanKind::Perfect;
  /// Empty when a search budget ran out before a decision.
  std::optional<bool> regular;
  std::string narrative;
  HomologyBasis basis;
  IntMatrix coedge_matrix;
  std::optional<UnimodularityReport> unimodularity;  // SecondVoronoi
  std::optional<StrongEmmCertificate> qemm;          // Perfect
  std::optional<ZemmResult> zemm;                    // Central
};

RegularityVerdict torelli_regular(const Multigraph& g, FanKind fan, std::uint64_t max_nodes = kDefaultMaxNodes);

struct Contraction {
  Multigraph graph;
  /// Per edge of the original graph, its id in the contracted graph or -1.
  std::vector<EdgeId> edge_map;
};

/// Contracts the listed edges; an edge whose ends are already identified is
/// removed, as are contracted loops.
Contraction contract_edges(const Multigraph& g, const std::vector<EdgeId>& edges);

struct MonotonicityReport {
  bool ok = true;
  Contraction contraction;
  /// Cocycles of the contracted graph as cocycles of the original, column
  /// per forest-basis coordinate: z_big = inclusion * z_small.
  IntMatrix inclusion;
  SGSet small;
  SGSet big;
  /// Set when a certificate was given: its restriction and verdict.
  std::optional<QuadForm> restricted;
  std::optional<EmmVerdict> restricted_verdict;
  std::vector<std::string> problems;
};

/// Checks S(G) in S(G') for G = G' with `edges` contracted, under the induced
/// inclusion of cocycle lattices, and that an emm of G' (on forest_basis(G'))
/// restricts to an emm of G.
MonotonicityReport contraction_monotonicity_check(const Multigraph& big, const std::vector<EdgeId>& edges,
                                                  const std::optional<QuadForm>& certificate = std::nullopt,
                                                  EmmKind kind = EmmKind::Z);

}  // namespace emm
