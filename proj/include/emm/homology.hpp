#pragma once

#include <optional>
#include <span>
#include <vector>

#include "emm/multigraph.hpp"
#include "emm/rational.hpp"

namespace emm {

/// Spanning tree T, basis edges I = complement of T, fundamental cycles
/// f_i = e_i + sum over T of b_is e_s, and the coordinate vector of every
/// coedge e* in the dual basis {e_i*}.
struct HomologyBasis {
  std::vector<bool> in_tree;
  std::vector<EdgeId> basis_edges;
  /// genus x num_edges, entries in {-1, 0, 1}.
  std::vector<IntVec> fundamental_cycles;
  /// num_edges x genus; row e is e* = (f_k(e))_k.
  std::vector<IntVec> coedges;

  int genus() const { return static_cast<int>(basis_edges.size()); }
  int num_edges() const { return static_cast<int>(coedges.size()); }
  bool is_zero_coedge(EdgeId e) const;
  /// Coedge matrix with one column per edge (genus x num_edges).
  IntMatrix coedge_matrix() const;
};

/// Breadth-first spanning tree from the lowest vertex, scanning incident
/// edges by increasing id. Throws std::invalid_argument when disconnected.
HomologyBasis homology_basis(const Multigraph& g);

/// Same construction with a caller-chosen spanning tree.
HomologyBasis homology_basis(const Multigraph& g, std::span<const EdgeId> tree_edges);

/// Spanning-forest variant for graphs with several components.
HomologyBasis forest_basis(const Multigraph& g);

/// An oriented chain that is a cycle (boundary zero).
struct Cycle {
  IntVec coeffs;
  int parts = 1;

  bool is_zero_one() const;
  bool operator==(const Cycle&) const = default;
};

/// True when the chain has zero boundary.
bool is_cycle(const Multigraph& g, const IntVec& chain);

/// Coordinates of a cycle in the fundamental-cycle basis: its coefficients on
/// the basis edges.
IntVec cycle_coordinates(const HomologyBasis& basis, const IntVec& chain);

/// z(c) for a cocycle z (coedge coordinates) and cycle c (edge chain).
std::int64_t evaluate_cocycle(const HomologyBasis& basis, const IntVec& z, const IntVec& chain);

/// Simple cycles of g (each once, with the lowest edge carrying +1).
std::vector<Cycle> simple_cycles(const Multigraph& g);

/// (0,1)-cycles that are sums of at most max_parts edge-disjoint simple
/// cycles. Each combination of supports appears once, with every simple part
/// in its canonical orientation; all relative signs of parts describe the same
/// support set and are not repeated. Exponential; desk-scale graphs only.
std::vector<Cycle> zero_one_cycles(const Multigraph& g, int max_parts = 2);

/// is_coedge, implementation (a): z equals plus or minus some coedge column.
bool is_coedge_by_columns(const HomologyBasis& basis, const IntVec& z);

/// is_coedge, implementation (b): |z(c)| <= 1 on every (0,1)-cycle with at
/// most max_parts parts (all relative signs of the parts are considered).
bool is_coedge_by_cycles(const Multigraph& g, const HomologyBasis& basis, const IntVec& z, int max_parts = 2);

/// Reusable form of implementation (b) when many cocycles are tested.
class CoedgeCycleTest {
 public:
  CoedgeCycleTest(const Multigraph& g, const HomologyBasis& basis, int max_parts = 2);
  bool operator()(const IntVec& z) const;

 private:
  std::vector<IntVec> simple_;  // coordinates of simple cycles
  std::vector<std::vector<int>> groups_;  // disjoint families by index into simple_
};

/// An edge contained in no 2-element edge cut, or nullopt iff g is a cycle
/// graph. Throws std::invalid_argument when g has a bridge or is disconnected.
std::optional<EdgeId> edge_outside_2cutsets(const Multigraph& g);

}  // namespace emm
