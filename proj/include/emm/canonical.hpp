#pragma once

#include <string>
#include <vector>

#include "emm/multigraph.hpp"

namespace emm {

struct CanonicalLabeling {
  /// order[i] is the vertex placed at canonical position i.
  std::vector<VertexId> order;
  /// Equal for two graphs iff they are isomorphic.
  std::string key;
};

/// Colour refinement with individualization, keeping the lexicographically
/// least adjacency string over all leaves. Exponential on very symmetric
/// graphs; fine at desk scale.
CanonicalLabeling canonical_labeling(const Multigraph& g);

struct CanonicalGraph {
  Multigraph graph;
  /// Per edge of the input: image edge in `graph` and orientation sign.
  std::vector<std::pair<EdgeId, int>> edge_map;
  std::string key;
};

/// Relabels g canonically: vertices by canonical position, edges sorted by
/// endpoint pair and oriented from the lower position, free loops last.
CanonicalGraph canonical_graph(const Multigraph& g);

}  // namespace emm
