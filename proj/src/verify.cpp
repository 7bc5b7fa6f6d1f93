#include "emm/verify.hpp"

#include <stdexcept>

namespace emm {

std::string to_string(EmmKind kind) { return kind == EmmKind::Z ? "Z" : "Q"; }

namespace {

std::optional<IntVec> non_integral_witness(const QuadForm& q) {
  const int n = q.dim();
  for (int i = 0; i < n; ++i)
    if (!is_integer(q(i, i))) {
      IntVec v(n, 0);
      v[i] = 1;
      return v;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!is_integer(Rational(2 * q(i, j)))) {
        IntVec v(n, 0);
        v[i] = v[j] = 1;
        return v;
      }
  return std::nullopt;
}

}  // namespace

EmmVerdict verify_emm(const Multigraph& g, const HomologyBasis& basis, const QuadForm& q, EmmKind kind, bool strong) {
  if (q.dim() != basis.genus() || basis.num_edges() != g.num_edges())
    throw std::invalid_argument("verify_emm: form dimension " + std::to_string(q.dim()) + " does not match genus " +
                                std::to_string(basis.genus()));
  EmmVerdict v;
  v.kind = kind;
  v.strong = strong;
  auto fail = [&](EmmFailure f) {
    v.ok = false;
    v.failures.push_back(std::move(f));
  };

  if (kind == EmmKind::Z)
    if (auto w = non_integral_witness(q)) fail({"integral", *w, -1, evaluate(q, *w)});

  if (!is_positive_definite(q)) {
    fail({"positive-definite", {}, -1, Rational(0)});
    return v;
  }

  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (basis.is_zero_coedge(e)) continue;
    const Rational val = evaluate(q, basis.coedges[e]);
    if (val != 1) fail({"coedge-norm", basis.coedges[e], e, val});
  }

  if (q.dim() == 0) return v;
  const ShortVectorReport report = min_vectors(q, Rational(1));
  v.nodes = report.nodes;
  v.minimum = report.minimum;
  for (std::size_t i = 0; i < report.vectors.size(); ++i) {
    if (report.values[i] < 1)
      fail({"minimum", report.vectors[i], -1, report.values[i]});
    else
      v.minimal_vectors.push_back(report.vectors[i]);
  }
  if (!report.minimum || *report.minimum > 1)
    fail({"minimum", {}, -1, report.minimum ? *report.minimum : Rational(0)});

  if (strong)
    for (const auto& m : v.minimal_vectors)
      if (!is_coedge_by_columns(basis, m)) fail({"strong", m, -1, Rational(1)});
  return v;
}

}  // namespace emm
