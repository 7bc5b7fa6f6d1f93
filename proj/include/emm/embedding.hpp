#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "emm/homology.hpp"
#include "emm/multigraph.hpp"

namespace emm {

/// Signed rotation system with traced faces. Flags are (dart, side); faces
/// are the orbits of the two flag involutions
///   corner: (d, 1) <-> (next(d), 0)
///   edge:   (d, s) <-> (d ^ 1, 1 - s), or (d ^ 1, s) on a twisted edge.
struct Embedding {
  std::vector<std::vector<DartId>> rotation;  // cyclic dart order per vertex
  std::vector<int> edge_signs;                // +1, or -1 for twisted edges
  /// One closed walk per face: the darts it leaves through, in order.
  std::vector<std::vector<DartId>> face_darts;
  /// Face boundaries as edge chains (dart 2e walked forward counts +1).
  std::vector<IntVec> face_chains;

  int num_faces() const { return static_cast<int>(face_darts.size()); }
  bool orientable() const;
};

/// Traces the faces of a rotation system. Faces of an untwisted embedding
/// are oriented compatibly, so their chains sum to zero.
Embedding make_embedding(const Multigraph& g, std::vector<std::vector<DartId>> rotation, std::vector<int> edge_signs);

/// V - E + F of the embedded (connected) graph.
int euler_characteristic(const Multigraph& g, const Embedding& emb);

/// Each face chain has entries in {-1, 0, 1} and every edge is used by
/// exactly two faces.
bool faces_are_cycle_double_cover(const Multigraph& g, const Embedding& emb);

struct PlanarityResult {
  std::optional<Embedding> embedding;
  /// Edges of a subdivision of K5 or K3,3 when not planar.
  std::vector<EdgeId> kuratowski_edges;
};

/// Plane embedding of a connected multigraph (loops and parallel edges
/// allowed), certified by F = E - V + 2.
PlanarityResult planar_embed(const Multigraph& g);

struct ProjectiveSearchStats {
  bool edge_bound_rejected = false;
  int simple_vertices = 0;
  int simple_edges = 0;
  bool exhausted = false;     // search space fully explored
  bool budget_exceeded = false;
  std::uint64_t nodes = 0;
  std::uint64_t embeddings_seen = 0;  // complete Euler-genus-1 embeddings
};

struct ProjectiveResult {
  std::optional<Embedding> embedding;
  ProjectiveSearchStats stats;
};

using EmbeddingFilter = std::function<bool(const Embedding&)>;

/// Searches signed rotation systems of Euler genus 1, inserting edges one at
/// a time in breadth-first order and pruning partial embeddings of Euler
/// genus above 1. Returns the first complete embedding accepted by `accept`
/// (any, when empty). When the search ends without one, stats.exhausted is
/// set unless the node budget ran out first.
ProjectiveResult projective_embed(const Multigraph& g, std::uint64_t max_nodes = 200'000'000,
                                  const EmbeddingFilter& accept = {});

enum class SurfaceKind { Sphere, ProjectivePlane, Other, Singular };

struct SurfaceClass {
  SurfaceKind kind = SurfaceKind::Other;
  int euler_characteristic = 0;
  int disks = 0;                          // N: simple cycles after splitting
  std::vector<VertexId> singular_vertices;
  std::string to_string() const;
};

/// Glues one disk along each simple cycle of the cover and classifies the
/// resulting 2-complex. Throws std::invalid_argument naming an edge that is
/// not covered exactly twice.
SurfaceClass surface_from_cover(const Multigraph& g, const std::vector<IntVec>& cover);

/// Splits a cycle chain into simple cycles (oriented Eulerian decomposition).
std::vector<IntVec> split_into_simple_cycles(const Multigraph& g, const IntVec& chain);

}  // namespace emm
