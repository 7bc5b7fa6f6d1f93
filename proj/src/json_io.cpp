#include "emm/json_io.hpp"

#include <stdexcept>

namespace emm {

Json to_json(const Rational& r) { return r.get_str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("rational must be a string or an integer");
  Rational r;
  if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0)
    throw std::invalid_argument("bad rational '" + j.get<std::string>() + "'");
  r.canonicalize();
  return r;
}

Json to_json(const IntVec& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json to_json(const QuadForm& q) {
  Json rows = Json::array();
  for (int i = 0; i < q.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < q.dim(); ++j) row.push_back(to_json(q(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", q.dim()}, {"gram", std::move(rows)}};
}

QuadForm form_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("gram") : j;
  if (!rows.is_array()) throw std::invalid_argument("gram must be an array of rows");
  const int n = static_cast<int>(rows.size());
  RatMatrix m(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("gram must be square");
    for (int k = 0; k < n; ++k) m(i, k) = rational_from_json(rows[i][k]);
  }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k)
      if (m(i, k) != m(k, i)) throw std::invalid_argument("gram must be symmetric");
  return QuadForm(std::move(m));
}

Json to_json(const HomologyBasis& b) {
  Json tree = Json::array();
  for (std::size_t e = 0; e < b.in_tree.size(); ++e)
    if (b.in_tree[e]) tree.push_back(e);
  Json cycles = Json::array(), coedges = Json::array();
  for (const auto& f : b.fundamental_cycles) cycles.push_back(to_json(f));
  for (const auto& z : b.coedges) coedges.push_back(to_json(z));
  return Json{{"genus", b.genus()},
              {"tree_edges", std::move(tree)},
              {"basis_edges", b.basis_edges},
              {"fundamental_cycles", std::move(cycles)},
              {"coedges", std::move(coedges)}};
}

Json to_json(const EmmVerdict& v) {
  Json failures = Json::array();
  for (const auto& f : v.failures) {
    Json j{{"condition", f.condition}, {"value", to_json(f.value)}};
    if (!f.witness.empty()) j["witness"] = to_json(f.witness);
    if (f.edge >= 0) j["edge"] = f.edge;
    failures.push_back(std::move(j));
  }
  Json minimal = Json::array();
  for (const auto& m : v.minimal_vectors) minimal.push_back(to_json(m));
  return Json{{"ok", v.ok},
              {"kind", v.kind == EmmKind::Z ? "Z" : "Q"},
              {"strong", v.strong},
              {"minimum", v.minimum ? to_json(*v.minimum) : Json(nullptr)},
              {"minimal_vectors", std::move(minimal)},
              {"failures", std::move(failures)},
              {"nodes", v.nodes}};
}

Json to_json(const Embedding& e) {
  Json faces = Json::array();
  for (const auto& f : e.face_darts) faces.push_back(f);
  return Json{{"rotation", e.rotation}, {"edge_signs", e.edge_signs}, {"faces", std::move(faces)}};
}

namespace {

Json stats_json(const ProjectiveSearchStats& s) {
  return Json{{"edge_bound_rejected", s.edge_bound_rejected},
              {"simple_vertices", s.simple_vertices},
              {"simple_edges", s.simple_edges},
              {"exhausted", s.exhausted},
              {"budget_exceeded", s.budget_exceeded},
              {"nodes", s.nodes},
              {"embeddings_seen", s.embeddings_seen}};
}

Json stats_json(const ESearchStats& s) {
  return Json{{"nodes", s.nodes},
              {"candidates", s.candidates},
              {"exhausted", s.exhausted},
              {"budget_exceeded", s.budget_exceeded}};
}

Json optional_rational(const std::optional<Rational>& r) { return r ? to_json(*r) : Json(nullptr); }

}  // namespace

Json to_json(const ZemmResult& r) {
  Json comps = Json::array();
  for (const ComponentZemm& c : r.components) {
    Json j{{"parent_edges", c.parent_edges},
           {"genus", c.genus},
           {"method", c.method},
           {"status", to_string(c.status)},
           {"type", c.form ? Json(c.type.to_string()) : Json(nullptr)},
           {"planar", c.planar}};
    if (c.form) j["form"] = to_json(*c.form);
    if (!c.kuratowski_edges.empty()) j["kuratowski_edges"] = c.kuratowski_edges;
    if (c.projective_tried) j["projective_search"] = stats_json(c.projective);
    j["e_in_range"] = c.e_in_range;
    if (c.e_tried) j["e_search"] = stats_json(c.e_stats);
    if (c.embedding) j["embedding"] = to_json(*c.embedding);
    comps.push_back(std::move(j));
  }
  Json j{{"schema", kJsonSchema},
         {"status", to_string(r.status)},
         {"summary", r.summary},
         {"type", r.form ? Json(r.type.to_string()) : Json(nullptr)},
         {"form", r.form ? to_json(*r.form) : Json(nullptr)},
         {"basis", to_json(r.basis)},
         {"components", std::move(comps)}};
  return j;
}

Json to_json(const StrongEmmCertificate& c) {
  Json trace = Json::array();
  for (const QemmStep& s : c.trace) {
    Json j{{"depth", s.depth},
           {"vertices", s.vertices},
           {"edges", s.edges},
           {"genus", s.genus},
           {"case", s.case_name}};
    if (!s.key.empty()) j["key"] = s.key;
    if (s.e0 >= 0) j["e0"] = s.e0;
    if (s.c[0] || s.c[1] || s.c[2]) {
      j["c"] = Json::array({optional_rational(s.c[0]), optional_rational(s.c[1]), optional_rational(s.c[2])});
      j["bridged"] = s.bridged;
    }
    if (s.x[0] != 0 || s.x[1] != 0 || s.x[2] != 0)
      j["x"] = Json::array({to_json(s.x[0]), to_json(s.x[1]), to_json(s.x[2])});
    if (s.epsilon) j["epsilon"] = to_json(*s.epsilon);
    if (s.kernel_norms[0] || s.kernel_norms[1] || s.kernel_norms[2])
      j["kernel_norms"] = Json::array({optional_rational(s.kernel_norms[0]), optional_rational(s.kernel_norms[1]),
                                       optional_rational(s.kernel_norms[2])});
    if (s.extra_squares) j["extra_squares"] = s.extra_squares;
    if (s.snapped) j["snapped_denominator"] = *s.snapped;
    trace.push_back(std::move(j));
  }
  return Json{{"schema", kJsonSchema},
              {"form", to_json(c.form)},
              {"basis", to_json(c.basis)},
              {"verdict", to_json(c.verdict)},
              {"memo_size", c.memo_size},
              {"memo_hits", c.memo_hits},
              {"trace", std::move(trace)}};
}

Json to_json(const RegularityVerdict& v) {
  Json j{{"schema", kJsonSchema},
         {"fan", to_string(v.fan)},
         {"regular", v.regular ? Json(*v.regular) : Json(nullptr)},
         {"narrative", v.narrative}};
  if (v.unimodularity) {
    const UnimodularityReport& u = *v.unimodularity;
    Json t{{"totally_unimodular", u.totally_unimodular}, {"minors_checked", u.minors_checked}};
    if (!u.totally_unimodular)
      t["witness"] = Json{{"rows", u.witness_rows}, {"cols", u.witness_cols}, {"value", u.witness_value}};
    j["certificate"] = Json{{"unimodularity", std::move(t)}, {"basis", to_json(v.basis)}};
  }
  if (v.qemm) j["certificate"] = to_json(*v.qemm);
  if (v.zemm) j["certificate"] = to_json(*v.zemm);
  return j;
}

}  // namespace emm
