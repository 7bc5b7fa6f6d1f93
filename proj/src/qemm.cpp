#include "emm/qemm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "emm/canonical.hpp"
#include "emm/structure.hpp"

namespace emm {

namespace {

IntVec scaled(const IntVec& v, std::int64_t s) {
  IntVec out = v;
  for (auto& x : out) x *= s;
  return out;
}

IntVec added(const IntVec& a, const IntVec& b) {
  IntVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

// Coedge of the dart's edge oriented into the dart's vertex.
IntVec inward(const HomologyBasis& basis, DartId d) {
  return scaled(basis.coedges[Multigraph::edge_of(d)], -Multigraph::dart_sign(d));
}

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

// Rounds the Gram entries that are free modulo the equations q(e*) = 1 to
// multiples of 1/D, solving for the rest, for growing D until the result
// verifies.
std::optional<std::pair<QuadForm, std::int64_t>> snap_form(const Multigraph& g, const HomologyBasis& basis,
                                                           const QuadForm& q) {
  const int n = basis.genus();
  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) vars.emplace_back(i, j);
  const int nv = static_cast<int>(vars.size());
  std::set<IntVec> rows_set;
  for (const IntVec& z : basis.coedges)
    if (!is_zero(z)) rows_set.insert(sign_normalized(z));
  std::vector<std::vector<Rational>> rows;
  for (const IntVec& z : rows_set) {
    std::vector<Rational> r(nv + 1);
    for (int k = 0; k < nv; ++k) {
      const auto [i, j] = vars[k];
      r[k] = (i == j ? 1 : 2) * z[i] * z[j];
    }
    r[nv] = 1;
    rows.push_back(std::move(r));
  }
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (int col = 0; col < nv && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col];
      for (int k = col; k <= nv; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivots.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(nv, false);
  for (int c : pivots) is_pivot[c] = true;

  for (std::int64_t den = 2; den <= (std::int64_t{1} << 24); den *= 2) {
    std::vector<Rational> t(nv);
    for (int k = 0; k < nv; ++k) {
      if (is_pivot[k]) continue;
      const Rational scaled = q(vars[k].first, vars[k].second) * den;
      mpz_class r;
      mpz_fdiv_q(r.get_mpz_t(), mpz_class(scaled.get_num() * 2 + scaled.get_den()).get_mpz_t(),
                 mpz_class(scaled.get_den() * 2).get_mpz_t());
      t[k] = Rational(r, mpz_class(den));
      t[k].canonicalize();
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Rational val = rows[r][nv];
      for (int k = 0; k < nv; ++k)
        if (!is_pivot[k] && rows[r][k] != 0) val -= rows[r][k] * t[k];
      t[pivots[r]] = val;
    }
    RatMatrix gram(n, n, Rational(0));
    for (int k = 0; k < nv; ++k) gram(vars[k].first, vars[k].second) = gram(vars[k].second, vars[k].first) = t[k];
    QuadForm cand(std::move(gram));
    if (verify_emm(g, basis, cand, EmmKind::Q, true).ok) return std::make_pair(std::move(cand), den);
  }
  return std::nullopt;
}

void require_cubic(const Multigraph& g, const char* who) {
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) != 3)
      throw std::invalid_argument(std::string(who) + ": vertex " + g.vertex_name(v) + " has degree " +
                                  std::to_string(g.degree(v)));
}

void require_bridgeless(const Multigraph& g, const char* who) {
  const auto b = bridges(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (b[e]) throw std::invalid_argument(std::string(who) + ": edge " + g.edge_name(e) + " is a bridge");
}

// Images of the fundamental cycles of `basis` (chains over h) as chains over
// g, given a per-edge substitution.
std::vector<IntVec> lifted_cycles(const HomologyBasis& basis, const std::vector<IntVec>& lift, int m) {
  std::vector<IntVec> out;
  for (const IntVec& f : basis.fundamental_cycles) {
    IntVec chain(m, 0);
    for (std::size_t k = 0; k < f.size(); ++k)
      if (f[k] != 0)
        for (int e = 0; e < m; ++e) chain[e] += f[k] * lift[k][e];
    out.push_back(std::move(chain));
  }
  return out;
}

SplitGraph build_split(const Multigraph& g, EdgeId e0, const std::array<DartId, 4>& ports,
                       const std::array<int, 4>& pair, const std::array<int, 2>& starts) {
  const int m = g.num_edges();
  const VertexId u = g.beg(e0), v = g.end(e0);
  auto port_of = [&](DartId d) {
    for (int i = 0; i < 4; ++i)
      if (ports[i] == d) return i;
    return -1;
  };
  auto at_u = [](int i) { return i < 2; };

  SplitGraph s;
  std::vector<VertexId> vmap(g.num_vertices(), kNoVertex);
  for (VertexId w = 0; w < g.num_vertices(); ++w)
    if (w != u && w != v) vmap[w] = s.graph.add_vertex(g.vertex_name(w));
  std::vector<bool> port_edge(m, false);
  port_edge[e0] = true;
  for (DartId d : ports) port_edge[Multigraph::edge_of(d)] = true;
  for (EdgeId e = 0; e < m; ++e) {
    if (port_edge[e]) continue;
    if (g.is_free_loop(e))
      s.graph.add_free_loop(g.label(e));
    else
      s.graph.add_edge(vmap[g.beg(e)], vmap[g.end(e)], g.label(e));
    IntVec unit(m, 0);
    unit[e] = 1;
    s.lift.push_back(std::move(unit));
  }

  std::array<bool, 4> used{};
  for (int k = 0; k < 2; ++k) {
    const int start = starts[k];
    if (used[start]) continue;
    int first = start;
    bool closed = false;
    while (true) {
      const int y = port_of(ports[first] ^ 1);
      if (y < 0) break;
      if (pair[y] == start) {
        closed = true;
        first = start;
        break;
      }
      first = pair[y];
    }
    IntVec chain(m, 0);
    const DartId entry = ports[first] ^ 1;
    if (!closed) chain[Multigraph::edge_of(entry)] += Multigraph::dart_sign(entry);
    VertexId last = kNoVertex;
    int p = first;
    while (true) {
      const int q = pair[p];
      used[p] = used[q] = true;
      if (at_u(p) != at_u(q)) chain[e0] += at_u(p) ? 1 : -1;
      const DartId out = ports[q];
      chain[Multigraph::edge_of(out)] += Multigraph::dart_sign(out);
      const int r = port_of(out ^ 1);
      if (r < 0) {
        last = g.dart_vertex(out ^ 1);
        break;
      }
      if (closed && r == first) break;
      p = r;
    }
    const EdgeId ne = closed ? s.graph.add_free_loop() : s.graph.add_edge(vmap[g.dart_vertex(entry)], vmap[last]);
    s.new_edges[k] = ne;
    s.lift.push_back(std::move(chain));
  }
  if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
    throw std::logic_error("split_at_edge: strand left a port unused");
  return s;
}

QuadForm weighted_sum(const SplitTriple& t, const std::array<std::optional<QuadForm>, 3>& q,
                      const std::array<Rational, 3>& x) {
  QuadForm total = QuadForm::zero(t.basis.genus());
  for (int i = 0; i < 3; ++i)
    if (x[i] != 0) total = total + x[i] * push_form(t, i, *q[i]);
  return total;
}

class QemmSolver {
 public:
  std::vector<QemmStep> trace;
  std::uint64_t memo_hits = 0;

  std::uint64_t memo_size() const { return memo_.size(); }

  // Form on forest_basis(g) for a cubic bridgeless g, components solved
  // independently.
  QuadForm solve(const Multigraph& g, int depth) {
    const Components comps = connected_components(g);
    if (comps.count <= 1) return solve_connected(g, depth);
    const HomologyBasis basis = forest_basis(g);
    QuadForm total = QuadForm::zero(basis.genus());
    for (int k = 0; k < comps.count; ++k) {
      Multigraph h;
      std::vector<VertexId> vmap(g.num_vertices(), kNoVertex);
      for (VertexId w = 0; w < g.num_vertices(); ++w)
        if (comps.of_vertex[w] == k) vmap[w] = h.add_vertex(g.vertex_name(w));
      std::vector<IntVec> lift;
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (comps.of_edge[e] != k) continue;
        if (g.is_free_loop(e))
          h.add_free_loop(g.label(e));
        else
          h.add_edge(vmap[g.beg(e)], vmap[g.end(e)], g.label(e));
        IntVec unit(g.num_edges(), 0);
        unit[e] = 1;
        lift.push_back(std::move(unit));
      }
      if (genus(h) == 0) continue;
      const QuadForm qh = solve_connected(h, depth);
      const HomologyBasis hb = forest_basis(h);
      total = total + pullback(qh, cycle_map_matrix(basis, lifted_cycles(hb, lift, g.num_edges())));
    }
    return total;
  }

 private:
  std::map<std::string, QuadForm> memo_;

  QuadForm solve_connected(const Multigraph& h, int depth) {
    const CanonicalGraph cg = canonical_graph(h);
    QuadForm qc;
    if (auto it = memo_.find(cg.key); it != memo_.end()) {
      ++memo_hits;
      QemmStep step;
      step.depth = depth;
      step.vertices = h.num_vertices();
      step.edges = h.num_edges();
      step.genus = genus(h);
      step.key = cg.key;
      step.case_name = "memo";
      trace.push_back(std::move(step));
      qc = it->second;
    } else {
      qc = solve_canonical(cg.graph, cg.key, depth);
      memo_.emplace(cg.key, qc);
    }
    const HomologyBasis hb = forest_basis(h);
    const HomologyBasis cb = forest_basis(cg.graph);
    std::vector<IntVec> images;
    for (const IntVec& f : cb.fundamental_cycles) {
      IntVec chain(h.num_edges(), 0);
      for (EdgeId e = 0; e < h.num_edges(); ++e) chain[e] = cg.edge_map[e].second * f[cg.edge_map[e].first];
      images.push_back(std::move(chain));
    }
    return pullback(qc, cycle_map_matrix(hb, images));
  }

  static void record_kernel_norms(const SplitTriple& t, const QuadForm& f, QemmStep& step) {
    for (int i = 0; i < 3; ++i) {
      if (is_zero(t.kernel_cocycles[i])) continue;
      step.kernel_norms[i] = evaluate(f, t.kernel_cocycles[i]);
      if (*step.kernel_norms[i] < 1 || (i == 2 && *step.kernel_norms[i] != 1))
        throw std::logic_error("strong_qemm_cubic: kernel condition violated");
    }
  }

  QuadForm finish(const Multigraph& c, const HomologyBasis& basis, const QuadForm& f, QemmStep& step,
                  std::size_t slot) {
    auto snapped = snap_form(c, basis, f);
    if (snapped) step.snapped = snapped->second;
    trace[slot] = step;
    return snapped ? snapped->first : f;
  }

  QuadForm solve_canonical(const Multigraph& c, const std::string& key, int depth) {
    QemmStep step;
    step.depth = depth;
    step.vertices = c.num_vertices();
    step.edges = c.num_edges();
    step.genus = genus(c);
    step.key = key;
    const HomologyBasis basis = forest_basis(c);
    bool all_loops = true;
    for (EdgeId e = 0; e < c.num_edges(); ++e) all_loops = all_loops && (c.is_loop(e) || c.is_free_loop(e));
    if (all_loops) {
      step.case_name = "base";
      trace.push_back(std::move(step));
      return QuadForm::identity(basis.genus());
    }
    require_bridgeless(c, "strong_qemm_cubic");
    const auto e0 = edge_outside_2cutsets(c);
    if (!e0) throw std::logic_error("strong_qemm_cubic: every edge lies in a 2-edge cut");
    step.e0 = *e0;
    const std::size_t slot = trace.size();
    trace.push_back(step);

    const SplitTriple t = split_at_edge(c, *e0);
    std::array<std::optional<QuadForm>, 3> q;
    for (int i = 0; i < 3; ++i) {
      step.bridged[i] = t.graphs[i].has_bridge;
      if (!t.graphs[i].has_bridge) q[i] = solve(t.graphs[i].graph, depth + 1);
    }
    const CValues cv = c_values(t, q);
    step.c = cv.c;

    auto verified = [&](const QuadForm& f) { return verify_emm(c, basis, f, EmmKind::Q, true).ok; };
    auto is = [&](int i, int value) { return cv.c[i] && *cv.c[i] == value; };

    struct Choice {
      std::string name;
      std::array<Rational, 3> x;
      bool uses_epsilon = false;
      int which = 0;  // generic 2 or 3
    };
    std::vector<Choice> candidates;
    const Rational third(1, 3);
    auto kernel_trivial = [&](int i) { return q[i] && t.graphs[i].kernel.empty(); };
    const bool all_q = q[0] && q[1] && q[2];
    for (int i : {0, 1})
      if (kernel_trivial(i)) {
        std::array<Rational, 3> x{0, 0, 0};
        x[i] = 1;
        candidates.push_back({"A", x});
      }
    if (q[1] && q[2]) candidates.push_back({"B", {0, third, 1 - third}});
    if (q[0] && q[2]) candidates.push_back({"B", {third, 0, 1 - third}});
    if (all_q && *cv.c[0] + *cv.c[1] != 0) {
      const Rational s = 1 / (*cv.c[0] + *cv.c[1]);
      candidates.push_back({"generic-1", {s, s, 1 - 2 * s}});
    }
    if (all_q && *cv.c[0] != 0) candidates.push_back({"generic-2", {}, true, 2});
    if (all_q && *cv.c[1] != 0) candidates.push_back({"generic-3", {}, true, 3});

    // case the proof prescribes
    std::string prescribed;
    if (is(0, 0) || is(0, 4) || is(1, 0) || is(1, 4) || is(2, 0) || is(2, 4))
      prescribed = "A";
    else if (t.graphs[0].has_bridge || is(1, 3) || is(2, 3))
      prescribed = "B2";
    else if (t.graphs[1].has_bridge || is(0, 3) || is(2, 1))
      prescribed = "B1";
    else if (t.graphs[2].has_bridge || is(0, 1) || is(1, 1))
      throw std::logic_error("strong_qemm_cubic: exceptional case C reached");
    else {
      const Rational &c1 = *cv.c[0], &c2 = *cv.c[1], &c3 = *cv.c[2];
      if ((c2 <= 2 || c3 <= 2) && (c1 <= 2 || c3 >= 2))
        prescribed = "generic-1";
      else if (c1 >= 2 && c3 < 2)
        prescribed = "generic-2";
      else
        prescribed = "generic-3";
    }
    auto matches = [&](const Choice& ch) {
      if (prescribed == "B2") return ch.name == "B" && ch.x[0] == 0;
      if (prescribed == "B1") return ch.name == "B" && ch.x[1] == 0;
      return ch.name == prescribed;
    };
    std::stable_partition(candidates.begin(), candidates.end(), matches);

    for (const Choice& ch : candidates) {
      const bool fallback = !matches(ch);
      if (!ch.uses_epsilon) {
        const QuadForm f = weighted_sum(t, q, ch.x);
        if (!verified(f)) continue;
        step.case_name = fallback ? "fallback-" + ch.name : ch.name;
        step.x = ch.x;
        record_kernel_norms(t, f, step);
        return finish(c, basis, f, step, slot);
      }
      const Rational &c1 = *cv.c[0], &c2 = *cv.c[1];
      Rational eps(1, 8);
      for (int iter = 0; iter < 48; ++iter, eps /= 2) {
        std::array<Rational, 3> x;
        if (ch.which == 2) {
          x[1] = eps * c1;
          x[0] = 1 / c1 - eps * c2;
        } else {
          x[0] = eps * c2;
          x[1] = 1 / c2 - eps * c1;
        }
        x[2] = 1 - x[0] - x[1];
        if (x[0] < 0 || x[1] < 0 || x[2] < 0) continue;
        if (x[0] * c1 + x[1] * c2 != 1) throw std::logic_error("strong_qemm_cubic: e0* norm condition violated");
        const QuadForm f = weighted_sum(t, q, x);
        if (!verified(f)) continue;
        step.case_name = fallback ? "fallback-" + ch.name : ch.name;
        step.x = x;
        step.epsilon = eps;
        record_kernel_norms(t, f, step);
        return finish(c, basis, f, step, slot);
      }
    }
    throw std::logic_error("strong_qemm_cubic: no construction verified");
  }
};

}  // namespace

SplitTriple split_at_edge(const Multigraph& g, EdgeId e0) {
  if (e0 < 0 || e0 >= g.num_edges()) throw std::out_of_range("split_at_edge: edge out of range");
  if (g.is_free_loop(e0) || g.is_loop(e0)) throw std::invalid_argument("split_at_edge: e0 is a loop");
  require_cubic(g, "split_at_edge");
  SplitTriple t;
  t.e0 = e0;
  t.u = g.beg(e0);
  t.v = g.end(e0);
  std::vector<DartId> at_u, at_v;
  for (DartId d : g.darts_at(t.u))
    if (d != Multigraph::beg_dart(e0)) at_u.push_back(d);
  for (DartId d : g.darts_at(t.v))
    if (d != Multigraph::end_dart(e0)) at_v.push_back(d);
  std::sort(at_u.begin(), at_u.end());
  std::sort(at_v.begin(), at_v.end());
  t.darts = {at_u[0], at_u[1], at_v[0], at_v[1]};
  t.basis = forest_basis(g);

  const std::array<std::array<int, 4>, 3> pairs{{{2, 3, 0, 1}, {3, 2, 1, 0}, {1, 0, 3, 2}}};
  const std::array<std::array<int, 2>, 3> starts{{{0, 1}, {0, 1}, {0, 3}}};
  for (int i = 0; i < 3; ++i) {
    SplitGraph s = build_split(g, e0, t.darts, pairs[i], starts[i]);
    s.basis = forest_basis(s.graph);
    s.phi = cycle_map_matrix(t.basis, lifted_cycles(s.basis, s.lift, g.num_edges()));
    s.kernel = integer_kernel(s.phi);
    const auto b = bridges(s.graph);
    s.has_bridge = std::any_of(b.begin(), b.end(), [](bool x) { return x; });
    t.graphs[i] = std::move(s);
  }
  const IntVec a = inward(t.basis, t.darts[0]);
  t.kernel_cocycles = {added(a, inward(t.basis, t.darts[2])), added(a, inward(t.basis, t.darts[3])),
                       added(a, inward(t.basis, t.darts[1]))};
  return t;
}

QuadForm push_form(const SplitTriple& t, int i, const QuadForm& qi) {
  if (qi.dim() != t.graphs[i].basis.genus()) throw std::invalid_argument("push_form: dimension mismatch");
  return pullback(qi, t.graphs[i].phi);
}

CValues c_values(const SplitTriple& t, const std::array<std::optional<QuadForm>, 3>& q) {
  CValues cv;
  std::array<std::optional<QuadForm>, 3> pushed;
  for (int i = 0; i < 3; ++i)
    if (q[i]) pushed[i] = push_form(t, i, *q[i]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (pushed[j]) cv.kernel_values[i][j] = evaluate(*pushed[j], t.kernel_cocycles[i]);
  cv.c[0] = cv.kernel_values[2][0];
  cv.c[1] = cv.kernel_values[2][1];
  cv.c[2] = cv.kernel_values[1][2];
  // q_i(e1* - e2*) for G1, G2, G3 is psi_i(q_i) on k2, k1, k1
  const std::array<int, 3> other{1, 0, 0};
  for (int i = 0; i < 3; ++i) {
    if (!pushed[i] || t.graphs[i].has_bridge || t.graphs[i].new_edges[1] < 0) continue;
    if (*cv.kernel_values[other[i]][i] != 4 - *cv.c[i]) cv.complement_identity = false;
  }
  return cv;
}

StrongEmmCertificate strong_qemm_cubic(const Multigraph& g) {
  require_cubic(g, "strong_qemm_cubic");
  require_bridgeless(g, "strong_qemm_cubic");
  QemmSolver solver;
  StrongEmmCertificate cert;
  cert.basis = forest_basis(g);
  cert.form = solver.solve(g, 0);
  cert.trace = std::move(solver.trace);
  cert.memo_hits = solver.memo_hits;
  cert.memo_size = solver.memo_size();
  cert.verdict = verify_emm(g, cert.basis, cert.form, EmmKind::Q, true);
  return cert;
}

namespace {

// q0 with q0(z) = 0 on `keep` and q0(w) = 1 on `raise`.
std::optional<QuadForm> separating_form(int n, const std::vector<IntVec>& keep, const std::vector<IntVec>& raise) {
  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) vars.emplace_back(i, j);
  const int rows = static_cast<int>(keep.size() + raise.size());
  RatMatrix a(rows, static_cast<int>(vars.size()), Rational(0));
  std::vector<Rational> b(rows, Rational(0));
  int r = 0;
  auto add_row = [&](const IntVec& z, int value) {
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto [i, j] = vars[k];
      a(r, static_cast<int>(k)) = (i == j ? 1 : 2) * z[i] * z[j];
    }
    b[r++] = value;
  };
  for (const auto& z : keep) add_row(z, 0);
  for (const auto& w : raise) add_row(w, 1);
  std::vector<Rational> x;
  if (!solve_linear(a, b, x)) return std::nullopt;
  RatMatrix gram(n, n, Rational(0));
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const auto [i, j] = vars[k];
    gram(i, j) = gram(j, i) = x[k];
  }
  return QuadForm(gram);
}

}  // namespace

StrongEmmCertificate strong_qemm(const Multigraph& g) {
  const Decomposition dec = decompose(g);
  StrongEmmCertificate cert;
  cert.basis = dec.parent_basis;
  QuadForm total = QuadForm::zero(cert.basis.genus());
  QemmSolver solver;
  for (const IrreducibleComponent& comp : dec.components) {
    const int n = comp.basis.genus();
    QuadForm qc;
    if (comp.is_loop) {
      qc = QuadForm::identity(1);
      QemmStep step;
      step.vertices = comp.graph.num_vertices();
      step.edges = 1;
      step.genus = 1;
      step.case_name = "base";
      solver.trace.push_back(std::move(step));
    } else {
      const CubicModel model = reduce_component(comp.graph, comp.basis);
      const QuadForm qm = solver.solve(model.graph, 0);
      const IntMatrix& to_source = model.to_source;
      qc = pullback(qm, to_source);

      std::set<IntVec> source;
      for (const IntVec& z : comp.basis.coedges)
        if (!is_zero(z)) source.insert(sign_normalized(z));
      const RatMatrix back = inverse(to_rational(to_source));
      std::set<IntVec> extra;
      for (const IntVec& r : model.basis.coedges) {
        if (is_zero(r)) continue;
        IntVec z(n, 0);
        for (int i = 0; i < n; ++i) {
          Rational s(0);
          for (int j = 0; j < n; ++j) s += back(i, j) * r[j];
          if (!is_integer(s)) throw std::logic_error("strong_qemm: model coedge is not integral on the source");
          z[i] = s.get_num().get_si();
        }
        z = sign_normalized(z);
        if (!source.count(z)) extra.insert(z);
      }
      if (!extra.empty()) {
        const auto q0 = separating_form(n, {source.begin(), source.end()}, {extra.begin(), extra.end()});
        if (!q0) throw std::logic_error("strong_qemm: coedge squares are not independent");
        QemmStep step;
        step.vertices = comp.graph.num_vertices();
        step.edges = comp.graph.num_edges();
        step.genus = n;
        step.case_name = "perturb";
        step.extra_squares = static_cast<int>(extra.size());
        Rational eps(1, 8);
        bool done = false;
        for (int iter = 0; iter < 48 && !done; ++iter, eps /= 2) {
          const QuadForm cand = qc + eps * *q0;
          if (verify_emm(comp.graph, comp.basis, cand, EmmKind::Q, true).ok) {
            qc = cand;
            step.epsilon = eps;
            done = true;
          }
        }
        if (!done) throw std::logic_error("strong_qemm: perturbation did not verify");
        if (auto snapped = snap_form(comp.graph, comp.basis, qc)) {
          qc = snapped->first;
          step.snapped = snapped->second;
        }
        solver.trace.push_back(std::move(step));
      }
    }
    total = total + pullback(qc, comp.projection);
  }
  cert.form = std::move(total);
  cert.trace = std::move(solver.trace);
  cert.memo_hits = solver.memo_hits;
  cert.memo_size = solver.memo_size();
  cert.verdict = verify_emm(g, cert.basis, cert.form, EmmKind::Q, true);
  return cert;
}

}  // namespace emm
