#pragma once

#include <utility>
#include <vector>

#include "emm/homology.hpp"
#include "emm/multigraph.hpp"
#include "emm/rational.hpp"

namespace emm {

/// Matrix of a homomorphism H_1(source) -> H_1(target) given by the target
/// edge chains that the source fundamental cycles map to.
/// Entry (l, j) is image(f_l)(e_j*) for the j-th target basis edge, so a
/// target cocycle z pulls back to matrix * z, and a source form pushes
/// forward to matrixᵀ · gram · matrix.
IntMatrix cycle_map_matrix(const HomologyBasis& target, const std::vector<IntVec>& images);

/// A piece of the H^1 direct-sum decomposition.
struct IrreducibleComponent {
  Multigraph graph;  // a single loop, or loopless and 2-connected
  bool is_loop = false;
  std::vector<EdgeId> parent_edges;  // component edge -> parent edge
  HomologyBasis basis;
  /// genus(component) x genus(parent): projection of parent cocycles.
  IntMatrix projection;
  /// genus(parent) x genus(component): inclusion of component cocycles.
  IntMatrix inclusion;
};

struct Decomposition {
  HomologyBasis parent_basis;
  std::vector<IrreducibleComponent> components;
};

/// Blocks of the graph with bridges dropped and loops split off.
Decomposition decompose(const Multigraph& g);

/// Cubic bridgeless model of one irreducible component.
struct CubicModel {
  Multigraph graph;  // cubic bridgeless, or a single loop
  bool is_loop = false;
  /// Per source edge: (model edge, sign) with e* = sign * r* under the
  /// identification of first cohomology groups.
  std::vector<std::pair<EdgeId, int>> edge_image;
  /// Model edges that are images of some source edge.
  std::vector<bool> original;
  HomologyBasis basis;  // of the model
  /// genus x genus isomorphism H_1(model) -> H_1(source) in the sense of
  /// cycle_map_matrix; model cocycles = to_source * source cocycles.
  IntMatrix to_source;
};

/// Suppresses degree-2 vertices, then splits vertices of degree >= 4 one
/// edge at a time. `source_basis` must be a basis of `component`.
CubicModel reduce_component(const Multigraph& component, const HomologyBasis& source_basis);

struct ReducedComponent {
  IrreducibleComponent component;
  CubicModel model;
};

/// Decomposition followed by reduce_component on every piece.
std::vector<ReducedComponent> cubic_reduction(const Multigraph& g);

}  // namespace emm
