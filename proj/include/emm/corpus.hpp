#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emm/multigraph.hpp"

namespace emm {

struct CorpusEntry {
  std::string name;
  Multigraph graph;
  int genus = 0;
  bool planar = false;
  bool projective_planar = false;
  std::optional<bool> has_zemm;
};

/// loop, theta, k4, k5, k33, k7, petersen, w5, prism, fig1_genus9.
const std::vector<CorpusEntry>& corpus();

/// Case-insensitive lookup; "K3,3" is accepted for k33.
const CorpusEntry* find_corpus_entry(const std::string& name);

Multigraph complete_graph(int n);
Multigraph complete_bipartite(int a, int b);
Multigraph cycle_graph(int n);
Multigraph wheel_graph(int spokes);

}  // namespace emm
