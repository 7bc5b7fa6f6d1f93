#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emm/embedding.hpp"
#include "emm/homology.hpp"
#include "emm/lattice.hpp"
#include "emm/multigraph.hpp"

namespace emm {

inline constexpr std::uint64_t kDefaultMaxNodes = 200'000'000;

/// q = 1/2 sum_k c_k^2, each cycle read as the functional z -> z(c_k).
QuadForm cover_form(const HomologyBasis& basis, const std::vector<IntVec>& cover);

/// A-type form from the faces of a plane embedding; none when not planar.
std::optional<QuadForm> a_type_emm(const Multigraph& g, const HomologyBasis& basis);

struct DTypeResult {
  QuadForm form;
  /// "planar-pair" (two edge-disjoint faces combined) or "projective".
  std::string construction;
  Embedding embedding;
  int face1 = -1;
  int face2 = -1;
  int pair_sign = 0;  // form uses c_face1 + pair_sign * c_face2
};

struct DTypeReport {
  std::optional<DTypeResult> result;
  bool planar = false;
  ProjectiveSearchStats projective;
};

/// D-type Z-emm for genus >= 4 (throws std::invalid_argument below that).
DTypeReport d_type_emm(const Multigraph& g, const HomologyBasis& basis, std::uint64_t max_nodes = kDefaultMaxNodes);

struct ESearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;  // complete Gram matrices reached
  bool exhausted = false;
  bool budget_exceeded = false;
};

struct ETypeReport {
  std::optional<QuadForm> form;
  ESearchStats stats;
};

/// Backtracking over Gram matrices of 2q with diagonal 2 and off-diagonal
/// entries in {-1, 0, 1}, constrained so every coedge is a root and distinct
/// coedges pair to {-1, 0, 1}. Genus must be 6, 7 or 8.
ETypeReport e_type_search(const Multigraph& g, const HomologyBasis& basis, std::uint64_t max_nodes = kDefaultMaxNodes);

enum class ZemmStatus { Exists, DoesNotExist, Inconclusive };

std::string to_string(ZemmStatus s);

struct ComponentZemm {
  std::vector<EdgeId> parent_edges;
  int genus = 0;
  /// "loop", "A", "D", "E", or "none".
  std::string method;
  std::optional<QuadForm> form;  // in the component's own basis
  RootDecomposition type;
  bool planar = false;
  std::vector<EdgeId> kuratowski_edges;  // parent edge ids
  bool projective_tried = false;
  ProjectiveSearchStats projective;
  bool e_in_range = false;
  bool e_tried = false;
  ESearchStats e_stats;
  std::optional<Embedding> embedding;
  ZemmStatus status = ZemmStatus::Exists;
};

struct ZemmResult {
  ZemmStatus status = ZemmStatus::Exists;
  HomologyBasis basis;           // forest basis of the input graph
  std::optional<QuadForm> form;  // direct sum of the component forms
  RootDecomposition type;
  std::vector<ComponentZemm> components;
  std::string summary;
};

/// Per irreducible component: loop, then A (planar), then D (projective
/// planar, genus >= 4), then E (genus 6..8). A component with no branch left
/// means there is no Z-emm.
ZemmResult decide_zemm(const Multigraph& g, std::uint64_t max_nodes = kDefaultMaxNodes);

}  // namespace emm
