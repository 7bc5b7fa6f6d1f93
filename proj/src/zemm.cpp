#include "emm/zemm.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "emm/structure.hpp"
#include "emm/verify.hpp"

namespace emm {

namespace {

bool has_single_type(const QuadForm& q, RootFamily family, int rank) {
  try {
    const RootDecomposition t = root_lattice_type(q);
    return t.components.size() == 1 && t.components[0] == RootComponent{family, rank};
  } catch (const std::domain_error&) {
    return false;
  }
}

bool verifies(const Multigraph& g, const HomologyBasis& basis, const QuadForm& q) {
  return verify_emm(g, basis, q, EmmKind::Z, false).ok;
}

QuadForm face_form(const HomologyBasis& basis, const std::vector<IntVec>& faces, int k1, int k2, int sign) {
  std::vector<IntVec> cover;
  for (int k = 0; k < static_cast<int>(faces.size()); ++k)
    if (k != k1 && k != k2) cover.push_back(faces[k]);
  IntVec merged = faces[k1];
  for (std::size_t e = 0; e < merged.size(); ++e) merged[e] += sign * faces[k2][e];
  cover.push_back(std::move(merged));
  return cover_form(basis, cover);
}

bool share_edge(const IntVec& a, const IntVec& b) {
  for (std::size_t e = 0; e < a.size(); ++e)
    if (a[e] != 0 && b[e] != 0) return true;
  return false;
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

class ESearch {
 public:
  ESearch(const Multigraph& g, const HomologyBasis& basis, std::uint64_t max_nodes)
      : g_(g), basis_(basis), n_(basis.genus()), max_nodes_(max_nodes), doubled_(n_, n_, 0) {
    for (int i = 0; i < n_; ++i) doubled_(i, i) = 2;
    for (int j = 1; j < n_; ++j)
      for (int i = 0; i < j; ++i) vars_.push_back({i, j});
    build_constraints();
  }

  ETypeReport run() {
    ETypeReport report;
    if (!infeasible_ && dfs(0)) report.form = found_;
    stats_.exhausted = !report.form && !stats_.budget_exceeded;
    report.stats = stats_;
    return report;
  }

 private:
  struct Constraint {
    std::int64_t value;  // constant plus assigned terms
    std::int64_t slack;  // sum of |coef| over unassigned variables
    std::int64_t lo, hi;
    bool feasible() const { return value - slack <= hi && value + slack >= lo; }
  };

  void add_constraint(std::int64_t constant, const std::vector<std::int64_t>& coef, std::int64_t lo, std::int64_t hi) {
    const int id = static_cast<int>(constraints_.size());
    Constraint c{constant, 0, lo, hi};
    for (std::size_t p = 0; p < coef.size(); ++p) {
      if (coef[p] == 0) continue;
      c.slack += std::abs(coef[p]);
      uses_[p].push_back({id, coef[p]});
    }
    if (!c.feasible()) infeasible_ = true;
    constraints_.push_back(c);
  }

  void build_constraints() {
    uses_.resize(vars_.size());
    std::set<IntVec> seen;
    std::vector<IntVec> roots;
    for (const IntVec& z : basis_.coedges) {
      if (std::all_of(z.begin(), z.end(), [](auto x) { return x == 0; })) continue;
      IntVec s = sign_normalized(z);
      if (seen.insert(s).second) roots.push_back(std::move(s));
    }
    for (const IntVec& z : roots) {
      int support = 0;
      for (auto x : z) support += x != 0;
      if (support <= 1) continue;
      std::vector<std::int64_t> coef(vars_.size(), 0);
      for (std::size_t p = 0; p < vars_.size(); ++p) coef[p] = z[vars_[p].first] * z[vars_[p].second];
      add_constraint(0, coef, 1 - support, 1 - support);
    }
    for (std::size_t a = 0; a < roots.size(); ++a)
      for (std::size_t b = a + 1; b < roots.size(); ++b) {
        const IntVec& u = roots[a];
        const IntVec& v = roots[b];
        std::int64_t constant = 0;
        for (int i = 0; i < n_; ++i) constant += 2 * u[i] * v[i];
        std::vector<std::int64_t> coef(vars_.size(), 0);
        for (std::size_t p = 0; p < vars_.size(); ++p) {
          const auto [i, j] = vars_[p];
          coef[p] = u[i] * v[j] + u[j] * v[i];
        }
        add_constraint(constant, coef, -1, 1);
      }
  }

  bool assign(std::size_t p, int value) {
    bool ok = true;
    for (const auto& [c, coef] : uses_[p]) {
      constraints_[c].value += coef * value;
      constraints_[c].slack -= std::abs(coef);
      ok = ok && constraints_[c].feasible();
    }
    return ok;
  }

  void unassign(std::size_t p, int value) {
    for (const auto& [c, coef] : uses_[p]) {
      constraints_[c].value -= coef * value;
      constraints_[c].slack += std::abs(coef);
    }
  }

  bool leading_minor_positive(int size) const {
    IntMatrix m(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) m(i, j) = doubled_(i, j);
    return determinant(m) > 0;
  }

  bool dfs(std::size_t p) {
    if (p == vars_.size()) {
      ++stats_.candidates;
      const QuadForm q = QuadForm::from_doubled(doubled_);
      if (is_positive_definite(q) && verifies(g_, basis_, q) && has_single_type(q, RootFamily::E, n_)) {
        found_ = q;
        return true;
      }
      return false;
    }
    const auto [i, j] = vars_[p];
    for (int value : {-1, 0, 1}) {
      if (stats_.nodes >= max_nodes_) {
        stats_.budget_exceeded = true;
        return false;
      }
      ++stats_.nodes;
      doubled_(i, j) = doubled_(j, i) = value;
      const bool ok = assign(p, value);
      // column j is complete once (j-1, j) is set
      const bool minor_ok = !ok || i != j - 1 || leading_minor_positive(j + 1);
      if (ok && minor_ok && dfs(p + 1)) return true;
      unassign(p, value);
      doubled_(i, j) = doubled_(j, i) = 0;
      if (stats_.budget_exceeded) return false;
    }
    return false;
  }

  const Multigraph& g_;
  const HomologyBasis& basis_;
  int n_;
  std::uint64_t max_nodes_;
  IntMatrix doubled_;
  std::vector<std::pair<int, int>> vars_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::pair<int, std::int64_t>>> uses_;
  bool infeasible_ = false;
  ESearchStats stats_;
  QuadForm found_;
};

}  // namespace

QuadForm cover_form(const HomologyBasis& basis, const std::vector<IntVec>& cover) {
  const int n = basis.genus();
  RatMatrix gram(n, n, Rational(0));
  for (const IntVec& c : cover) {
    if (static_cast<int>(c.size()) != basis.num_edges()) throw std::invalid_argument("cover_form: chain has wrong length");
    IntVec w(n);
    for (int k = 0; k < n; ++k) w[k] = c[basis.basis_edges[k]];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram(i, j) += make_rational(w[i] * w[j], 2);
  }
  return QuadForm(std::move(gram));
}

std::optional<QuadForm> a_type_emm(const Multigraph& g, const HomologyBasis& basis) {
  const PlanarityResult planar = planar_embed(g);
  if (!planar.embedding) return std::nullopt;
  return cover_form(basis, planar.embedding->face_chains);
}

DTypeReport d_type_emm(const Multigraph& g, const HomologyBasis& basis, std::uint64_t max_nodes) {
  const int n = basis.genus();
  if (n < 4) throw std::invalid_argument("d_type_emm: genus must be at least 4");
  DTypeReport report;
  const PlanarityResult planar = planar_embed(g);
  if (planar.embedding) {
    report.planar = true;
    const auto& faces = planar.embedding->face_chains;
    const int f = static_cast<int>(faces.size());
    for (int k1 = 0; k1 < f; ++k1)
      for (int k2 = k1 + 1; k2 < f; ++k2) {
        if (share_edge(faces[k1], faces[k2])) continue;
        for (int sign : {-1, 1}) {
          QuadForm q = face_form(basis, faces, k1, k2, sign);
          if (verifies(g, basis, q) && has_single_type(q, RootFamily::D, n)) {
            report.result = DTypeResult{std::move(q), "planar-pair", *planar.embedding, k1, k2, sign};
            return report;
          }
        }
      }
    return report;
  }
  QuadForm accepted;
  const EmbeddingFilter filter = [&](const Embedding& emb) {
    if (!faces_are_cycle_double_cover(g, emb)) return false;
    QuadForm q = cover_form(basis, emb.face_chains);
    if (!verifies(g, basis, q) || !has_single_type(q, RootFamily::D, n)) return false;
    accepted = std::move(q);
    return true;
  };
  ProjectiveResult proj = projective_embed(g, max_nodes, filter);
  report.projective = proj.stats;
  if (proj.embedding) report.result = DTypeResult{std::move(accepted), "projective", std::move(*proj.embedding), -1, -1, 0};
  return report;
}

ETypeReport e_type_search(const Multigraph& g, const HomologyBasis& basis, std::uint64_t max_nodes) {
  const int n = basis.genus();
  if (n < 6 || n > 8) throw std::invalid_argument("e_type_search: genus must be 6, 7 or 8");
  return ESearch(g, basis, max_nodes).run();
}

std::string to_string(ZemmStatus s) {
  switch (s) {
    case ZemmStatus::Exists: return "exists";
    case ZemmStatus::DoesNotExist: return "none";
    case ZemmStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

ComponentZemm solve_component(const IrreducibleComponent& comp, std::uint64_t max_nodes) {
  ComponentZemm out;
  out.parent_edges = comp.parent_edges;
  out.genus = comp.basis.genus();
  const Multigraph& g = comp.graph;
  const HomologyBasis& basis = comp.basis;

  auto finish = [&](std::string method, QuadForm q) {
    out.method = std::move(method);
    out.type = root_lattice_type(q);
    out.form = std::move(q);
    out.status = ZemmStatus::Exists;
  };

  if (comp.is_loop) {
    finish("loop", QuadForm::identity(1));
    return out;
  }

  const PlanarityResult planar = planar_embed(g);
  if (planar.embedding) {
    out.planar = true;
    out.embedding = planar.embedding;
    QuadForm q = cover_form(basis, planar.embedding->face_chains);
    if (verifies(g, basis, q)) {
      finish("A", std::move(q));
      return out;
    }
  } else {
    for (EdgeId e : planar.kuratowski_edges) out.kuratowski_edges.push_back(comp.parent_edges[e]);
  }

  bool d_excluded = out.genus < 4;
  if (!d_excluded) {
    DTypeReport d = d_type_emm(g, basis, max_nodes);
    out.projective_tried = !d.planar;
    out.projective = d.projective;
    if (d.result) {
      out.embedding = d.result->embedding;
      finish("D", std::move(d.result->form));
      return out;
    }
    // an embedding without a verified D form would contradict the D criterion
    d_excluded = d.projective.edge_bound_rejected || (d.projective.exhausted && d.projective.embeddings_seen == 0);
  }

  bool e_excluded = true;
  out.e_in_range = out.genus >= 6 && out.genus <= 8;
  if (out.e_in_range) {
    out.e_tried = true;
    ETypeReport e = e_type_search(g, basis, max_nodes);
    out.e_stats = e.stats;
    if (e.form) {
      finish("E", std::move(*e.form));
      return out;
    }
    e_excluded = e.stats.exhausted;
  }

  out.method = "none";
  out.status = (!out.planar && d_excluded && e_excluded) ? ZemmStatus::DoesNotExist : ZemmStatus::Inconclusive;
  return out;
}

}  // namespace

ZemmResult decide_zemm(const Multigraph& g, std::uint64_t max_nodes) {
  ZemmResult result;
  const Decomposition dec = decompose(g);
  result.basis = dec.parent_basis;
  const int n = dec.parent_basis.genus();
  bool any_none = false, any_inconclusive = false;
  for (const IrreducibleComponent& comp : dec.components) {
    ComponentZemm c = solve_component(comp, max_nodes);
    any_none = any_none || c.status == ZemmStatus::DoesNotExist;
    any_inconclusive = any_inconclusive || c.status == ZemmStatus::Inconclusive;
    result.components.push_back(std::move(c));
  }
  result.status = any_none ? ZemmStatus::DoesNotExist
                  : any_inconclusive ? ZemmStatus::Inconclusive
                                     : ZemmStatus::Exists;

  std::ostringstream summary;
  if (result.status == ZemmStatus::Exists) {
    QuadForm total = QuadForm::zero(n);
    for (std::size_t k = 0; k < dec.components.size(); ++k) {
      total = total + pullback(*result.components[k].form, dec.components[k].projection);
      for (const RootComponent& r : result.components[k].type.components) result.type.components.push_back(r);
    }
    std::sort(result.type.components.begin(), result.type.components.end());
    result.form = std::move(total);
    summary << "Z-emm of type " << result.type.to_string();
  } else {
    for (std::size_t k = 0; k < result.components.size(); ++k) {
      const ComponentZemm& c = result.components[k];
      if (c.status == ZemmStatus::Exists) continue;
      if (summary.tellp() > 0) summary << "; ";
      summary << "component " << k << " (genus " << c.genus << "): ";
      summary << (c.status == ZemmStatus::DoesNotExist ? "no Z-emm" : "undecided");
      if (c.projective.edge_bound_rejected)
        summary << ", not projective planar (" << c.projective.simple_edges << " > 3*" << c.projective.simple_vertices
                << "-3)";
      else if (c.projective_tried)
        summary << ", projective search " << (c.projective.exhausted ? "exhausted" : "stopped") << " after "
                << c.projective.nodes << " nodes";
      if (c.e_tried)
        summary << ", E search " << (c.e_stats.exhausted ? "exhausted" : "stopped") << " after " << c.e_stats.nodes
                << " nodes";
      else if (!c.e_in_range)
        summary << ", genus outside E range";
    }
  }
  result.summary = summary.str();
  return result;
}

}  // namespace emm
