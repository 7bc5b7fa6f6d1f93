#include "emm/corpus.hpp"

#include <algorithm>
#include <cctype>

namespace emm {

Multigraph complete_graph(int n) {
  Multigraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Multigraph complete_bipartite(int a, int b) {
  Multigraph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

Multigraph cycle_graph(int n) {
  Multigraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Multigraph wheel_graph(int spokes) {
  Multigraph g(spokes + 1);
  for (int i = 0; i < spokes; ++i) g.add_edge(i + 1, (i + 1) % spokes + 1);
  for (int i = 0; i < spokes; ++i) g.add_edge(0, i + 1);
  return g;
}

namespace {

Multigraph loop_graph() {
  Multigraph g(1);
  g.add_edge(0, 0, "e1");
  return g;
}

Multigraph theta_graph() {
  Multigraph g(2);
  for (int i = 1; i <= 3; ++i) g.add_edge(0, 1, "e" + std::to_string(i));
  return g;
}

Multigraph petersen_graph() {
  Multigraph g(10);
  for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
  for (int i = 0; i < 5; ++i) g.add_edge(i, i + 5);
  for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);
  return g;
}

Multigraph prism_graph() {
  Multigraph g(6);
  for (int i = 0; i < 3; ++i) g.add_edge(i, (i + 1) % 3);
  for (int i = 0; i < 3; ++i) g.add_edge(3 + i, 3 + (i + 1) % 3);
  for (int i = 0; i < 3; ++i) g.add_edge(i, i + 3);
  return g;
}

Multigraph fig1_graph() {
  return parse_edge_list_string(
      "n1 n2\nn2 n3\nn3 n4\nn4 n1\n"
      "n7 n8\nn8 n9\nn9 n10\nn10 n7\n"
      "n1 n5\nn5 n3\nn7 n11\nn11 n9\n"
      "n2 v1\nv1 n8\nn5 v2\nv2 n11\nn4 v3\nv3 n10\n"
      "v1 v2\nv2 v3\nv3 v1\n");
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  s.erase(std::remove(s.begin(), s.end(), ','), s.end());
  return s;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    v.push_back({"loop", loop_graph(), 1, true, true, true});
    v.push_back({"theta", theta_graph(), 2, true, true, true});
    v.push_back({"k4", complete_graph(4), 3, true, true, true});
    v.push_back({"k5", complete_graph(5), 6, false, true, true});
    v.push_back({"k33", complete_bipartite(3, 3), 4, false, true, true});
    v.push_back({"k7", complete_graph(7), 15, false, false, false});
    v.push_back({"petersen", petersen_graph(), 6, false, true, true});
    v.push_back({"w5", wheel_graph(5), 5, true, true, true});
    v.push_back({"prism", prism_graph(), 4, true, true, true});
    v.push_back({"fig1_genus9", fig1_graph(), 9, false, false, false});
    return v;
  }();
  return entries;
}

const CorpusEntry* find_corpus_entry(const std::string& name) {
  const std::string key = lower(name);
  for (const auto& e : corpus())
    if (e.name == key) return &e;
  return nullptr;
}

}  // namespace emm
