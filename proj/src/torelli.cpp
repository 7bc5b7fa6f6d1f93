#include "emm/torelli.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "emm/structure.hpp"

namespace emm {

std::string to_string(FanKind f) {
  switch (f) {
    case FanKind::Perfect:
      return "perf";
    case FanKind::SecondVoronoi:
      return "vor";
    case FanKind::Central:
      return "cent";
  }
  return "?";
}

std::optional<FanKind> parse_fan(const std::string& s) {
  if (s == "perf") return FanKind::Perfect;
  if (s == "vor") return FanKind::SecondVoronoi;
  if (s == "cent") return FanKind::Central;
  return std::nullopt;
}

namespace {

IntVec sign_normalized(IntVec z) {
  for (auto x : z)
    if (x != 0) {
      if (x < 0)
        for (auto& y : z) y = -y;
      break;
    }
  return z;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

}  // namespace

SGSet s_of_g(const Multigraph& g, const HomologyBasis& basis) {
  std::set<IntVec> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!is_zero(basis.coedges[e])) out.insert(sign_normalized(basis.coedges[e]));
  return {out.begin(), out.end()};
}

RegularityVerdict torelli_regular(const Multigraph& g, FanKind fan, std::uint64_t max_nodes) {
  RegularityVerdict v;
  v.fan = fan;
  v.basis = forest_basis(g);
  v.coedge_matrix = v.basis.coedge_matrix();
  switch (fan) {
    case FanKind::SecondVoronoi: {
      v.unimodularity = totally_unimodular(v.coedge_matrix);
      v.regular = v.unimodularity->totally_unimodular;
      v.narrative = *v.regular ? "second Voronoi: the coedge matrix is totally unimodular, so S(G) lies in a dicing cone"
                               : "second Voronoi: the coedge matrix has a minor outside {-1, 0, 1}";
      break;
    }
    case FanKind::Perfect: {
      v.qemm = strong_qemm(g);
      v.regular = v.qemm->verdict.ok;
      v.narrative = *v.regular ? "perfect: strong Q-emm constructed; its minimal vectors are exactly the coedges"
                               : "perfect: the constructed form failed verification";
      break;
    }
    case FanKind::Central: {
      v.zemm = decide_zemm(g, max_nodes);
      if (v.zemm->status == ZemmStatus::Exists) v.regular = true;
      if (v.zemm->status == ZemmStatus::DoesNotExist) v.regular = false;
      v.narrative = "central: " + v.zemm->summary;
      break;
    }
  }
  return v;
}

Contraction contract_edges(const Multigraph& g, const std::vector<EdgeId>& edges) {
  std::vector<bool> contracted(g.num_edges(), false);
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.num_edges()) throw std::out_of_range("contract_edges: edge " + std::to_string(e));
    contracted[e] = true;
  }
  std::vector<VertexId> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (contracted[e] && !g.is_free_loop(e)) parent[find(g.beg(e))] = find(g.end(e));

  Contraction c;
  std::vector<VertexId> vmap(g.num_vertices(), kNoVertex);
  for (VertexId x = 0; x < g.num_vertices(); ++x)
    if (find(x) == x) vmap[x] = c.graph.add_vertex(g.vertex_name(x));
  c.edge_map.assign(g.num_edges(), -1);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (contracted[e]) continue;
    c.edge_map[e] = g.is_free_loop(e) ? c.graph.add_free_loop(g.label(e))
                                      : c.graph.add_edge(vmap[find(g.beg(e))], vmap[find(g.end(e))], g.label(e));
  }
  return c;
}

MonotonicityReport contraction_monotonicity_check(const Multigraph& big, const std::vector<EdgeId>& edges,
                                                  const std::optional<QuadForm>& certificate, EmmKind kind) {
  MonotonicityReport r;
  r.contraction = contract_edges(big, edges);
  const Multigraph& small = r.contraction.graph;
  const HomologyBasis bb = forest_basis(big);
  const HomologyBasis sb = forest_basis(small);

  std::vector<IntVec> images;
  for (const IntVec& f : bb.fundamental_cycles) {
    IntVec chain(small.num_edges(), 0);
    for (EdgeId e = 0; e < big.num_edges(); ++e)
      if (r.contraction.edge_map[e] >= 0) chain[r.contraction.edge_map[e]] = f[e];
    images.push_back(std::move(chain));
  }
  r.inclusion = cycle_map_matrix(sb, images);

  auto include = [&](const IntVec& z) {
    IntVec out(bb.genus(), 0);
    for (int i = 0; i < bb.genus(); ++i)
      for (int j = 0; j < sb.genus(); ++j) out[i] += r.inclusion(i, j) * z[j];
    return out;
  };
  for (EdgeId e = 0; e < big.num_edges(); ++e) {
    const EdgeId s = r.contraction.edge_map[e];
    if (s < 0) continue;
    if (include(sb.coedges[s]) != bb.coedges[e]) {
      r.ok = false;
      r.problems.push_back("coedge of " + big.edge_name(e) + " does not map to itself");
    }
  }

  r.big = s_of_g(big, bb);
  for (const IntVec& z : s_of_g(small, sb)) r.small.push_back(sign_normalized(include(z)));
  std::sort(r.small.begin(), r.small.end());
  if (!std::includes(r.big.begin(), r.big.end(), r.small.begin(), r.small.end())) {
    r.ok = false;
    r.problems.push_back("S(G) is not contained in S(G')");
  }

  if (certificate) {
    if (certificate->dim() != bb.genus()) throw std::invalid_argument("contraction_monotonicity_check: dimension mismatch");
    r.restricted = pullback(*certificate, r.inclusion);
    r.restricted_verdict = verify_emm(small, sb, *r.restricted, kind, false);
    if (!r.restricted_verdict->ok) {
      r.ok = false;
      r.problems.push_back("restricted certificate is not an emm");
    }
  }
  return r;
}

}  // namespace emm
