#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "emm/corpus.hpp"
#include "emm/lattice.hpp"
#include "support/generators.hpp"

using namespace emm;

namespace {

QuadForm gram(std::initializer_list<std::initializer_list<Rational>> rows) {
  const int n = static_cast<int>(rows.size());
  RatMatrix m(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (const auto& x : r) m(i, j++) = x;
    ++i;
  }
  return QuadForm(m);
}

QuadForm a2() { return gram({{1, make_rational(-1, 2)}, {make_rational(-1, 2), 1}}); }

IntMatrix cartan_d(int n) {
  IntMatrix c(n, n, 0);
  for (int i = 0; i < n; ++i) c(i, i) = 2;
  for (int i = 0; i + 1 < n - 1; ++i) c(i, i + 1) = c(i + 1, i) = -1;
  c(n - 3, n - 1) = c(n - 1, n - 3) = -1;
  return c;
}

IntMatrix cartan_a(int n) {
  IntMatrix c(n, n, 0);
  for (int i = 0; i < n; ++i) c(i, i) = 2;
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = c(i + 1, i) = -1;
  return c;
}

// Bourbaki numbering: chain 1-3-4-5-...-n with 2 attached to 4.
IntMatrix cartan_e(int n) {
  IntMatrix c(n, n, 0);
  for (int i = 0; i < n; ++i) c(i, i) = 2;
  auto link = [&](int a, int b) { c(a - 1, b - 1) = c(b - 1, a - 1) = -1; };
  link(1, 3);
  link(2, 4);
  for (int k = 3; k < n; ++k) link(k, k + 1);
  return c;
}

// Box enumeration with the exact coordinate bound v_i^2 <= b * (G^-1)_ii.
std::vector<std::pair<Rational, IntVec>> box_oracle(const QuadForm& q, const Rational& bound) {
  const int n = q.dim();
  const RatMatrix inv = inverse(q.gram());
  std::vector<std::int64_t> lim(n);
  for (int i = 0; i < n; ++i) lim[i] = static_cast<std::int64_t>(std::floor(std::sqrt(Rational(bound * inv(i, i)).get_d()))) + 1;
  std::vector<std::pair<Rational, IntVec>> out;
  IntVec v(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      const auto first = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
      if (first == v.end() || *first < 0) return;
      const Rational val = evaluate(q, v);
      if (val <= bound) out.emplace_back(val, v);
      return;
    }
    for (std::int64_t x = -lim[i]; x <= lim[i]; ++x) {
      v[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix random_unimodular(int n, std::mt19937& rng) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-1, 1);
  for (int step = 0; step < 3 * n; ++step) {
    const int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int c = coef(rng);
    for (int k = 0; k < n; ++k) u(k, i) += c * u(k, j);
  }
  return u;
}

// Brute-force total unimodularity without reductions.
bool tu_oracle(const IntMatrix& m) {
  const int r = m.rows(), c = m.cols();
  for (int mask_r = 1; mask_r < (1 << r); ++mask_r)
    for (int mask_c = 1; mask_c < (1 << c); ++mask_c) {
      if (__builtin_popcount(mask_r) != __builtin_popcount(mask_c)) continue;
      std::vector<int> rs, cs;
      for (int i = 0; i < r; ++i)
        if (mask_r >> i & 1) rs.push_back(i);
      for (int j = 0; j < c; ++j)
        if (mask_c >> j & 1) cs.push_back(j);
      IntMatrix s(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
      for (std::size_t a = 0; a < rs.size(); ++a)
        for (std::size_t b = 0; b < cs.size(); ++b) s(a, b) = m(rs[a], cs[b]);
      const auto d = determinant(s);
      if (d < -1 || d > 1) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("evaluate and bilinear") {
  CHECK(evaluate(QuadForm::identity(2), {1, 0}) == 1);
  CHECK(evaluate(a2(), {1, 1}) == 1);
  CHECK(evaluate(a2(), {1, -1}) == 3);
  CHECK(bilinear(a2(), {1, 0}, {0, 1}) == make_rational(-1, 2));
  CHECK_THROWS_AS(evaluate(a2(), {1}), std::invalid_argument);
  RatMatrix bad(2, 2, Rational(0));
  bad(0, 1) = 1;
  CHECK_THROWS_AS(QuadForm{bad}, std::invalid_argument);
}

TEST_CASE("integrality predicate") {
  CHECK(is_integral(a2()));
  CHECK(is_integral(QuadForm::from_doubled(cartan_e(8))));
  CHECK_FALSE(is_integral(gram({{make_rational(1, 2), 0}, {0, 1}})));
  CHECK_FALSE(is_integral(gram({{1, make_rational(1, 3)}, {make_rational(1, 3), 1}})));
}

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(QuadForm::identity(3)));
  CHECK_FALSE(is_positive_definite(gram({{1, 1}, {1, 1}})));
  CHECK(is_positive_definite(a2()));
  CHECK_FALSE(is_positive_definite(gram({{1, 2}, {2, 1}})));
  CHECK_FALSE(is_positive_definite(gram({{-1, 0}, {0, 1}})));
  // 2x2 criterion: a > 0 and det > 0.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int t = 0; t < 300; ++t) {
    const Rational a = make_rational(d(rng), 2), b = make_rational(d(rng), 2), c = make_rational(d(rng), 2);
    const QuadForm q = gram({{a, b}, {b, c}});
    CHECK(is_positive_definite(q) == (a > 0 && a * c - b * b > 0));
  }
}

TEST_CASE("min_vectors examples") {
  auto r = min_vectors(a2(), 1);
  REQUIRE(r.vectors.size() == 3);
  CHECK(r.vectors[0] == IntVec{0, 1});
  CHECK(r.vectors[1] == IntVec{1, 0});
  CHECK(r.vectors[2] == IntVec{1, 1});
  CHECK(*r.minimum == 1);

  r = min_vectors(QuadForm::identity(3), 1);
  CHECK(r.vectors.size() == 3);

  r = min_vectors(gram({{1, 0}, {0, 4}}), 1);
  REQUIRE(r.vectors.size() == 1);
  CHECK(r.vectors[0] == IntVec{1, 0});
  CHECK(*r.minimum == 1);

  CHECK_THROWS_AS(min_vectors(gram({{1, 1}, {1, 1}}), 1), std::domain_error);
  CHECK(min_vectors(QuadForm::zero(0), 1).vectors.empty());
}

TEST_CASE("min_vectors agrees with the box oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> entry(-4, 4), dim(1, 4), den(1, 2);
  int tested = 0;
  while (tested < 150) {
    const int n = dim(rng);
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = make_rational(entry(rng), den(rng));
    const QuadForm q(m);
    if (!is_positive_definite(q)) continue;
    ++tested;
    const Rational bound = make_rational(entry(rng) + 5, 2);
    const auto expect = box_oracle(q, bound);
    const auto got = min_vectors(q, bound);
    REQUIRE(got.vectors.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) {
      CHECK(got.values[k] == expect[k].first);
      CHECK(got.vectors[k] == expect[k].second);
    }
  }
}

TEST_CASE("root lattice types") {
  CHECK(root_lattice_type(a2()).to_string() == "A2");
  CHECK(root_lattice_type(direct_sum({a2(), a2()})).to_string() == "A2+A2");
  CHECK(root_lattice_type(QuadForm::from_doubled(cartan_d(4))).to_string() == "D4");
  CHECK(root_lattice_type(QuadForm::identity(3)).to_string() == "A1+A1+A1");
  for (int n = 1; n <= 8; ++n) CHECK(root_lattice_type(QuadForm::from_doubled(cartan_a(n))).to_string() == "A" + std::to_string(n));
  for (int n = 4; n <= 8; ++n) CHECK(root_lattice_type(QuadForm::from_doubled(cartan_d(n))).to_string() == "D" + std::to_string(n));
  for (int n = 6; n <= 8; ++n) CHECK(root_lattice_type(QuadForm::from_doubled(cartan_e(n))).to_string() == "E" + std::to_string(n));
  CHECK(root_lattice_type(direct_sum({QuadForm::from_doubled(cartan_e(6)), QuadForm::identity(1)})).to_string() == "A1+E6");

  IntMatrix not_spanned(2, 2, 0);
  not_spanned(0, 0) = 2;
  not_spanned(1, 1) = 4;
  CHECK_THROWS_AS(root_lattice_type(QuadForm::from_doubled(not_spanned)), std::domain_error);
  CHECK_THROWS_AS(root_lattice_type(gram({{make_rational(1, 2), 0}, {0, 1}})), std::domain_error);
}

TEST_CASE("root lattice type is basis invariant") {
  std::mt19937 rng(11);
  const std::vector<IntMatrix> cartans = {cartan_a(4), cartan_d(5), cartan_e(6), cartan_d(4), cartan_a(6)};
  for (const auto& c : cartans) {
    const QuadForm q = QuadForm::from_doubled(c);
    const auto base = root_lattice_type(q);
    for (int t = 0; t < 5; ++t) {
      const IntMatrix u = random_unimodular(q.dim(), rng);
      REQUIRE(std::abs(determinant(u)) == 1);
      CHECK(root_lattice_type(pullback(q, u)) == base);
    }
  }
}

TEST_CASE("total unimodularity") {
  CHECK(totally_unimodular(IntMatrix::identity(4)).totally_unimodular);
  CHECK(totally_unimodular(homology_basis(complete_graph(4)).coedge_matrix()).totally_unimodular);
  IntMatrix m(2, 2, 1);
  m(1, 0) = -1;
  const auto r = totally_unimodular(m);
  CHECK_FALSE(r.totally_unimodular);
  CHECK(std::abs(r.witness_value) == 2);
  IntMatrix big(1, 2, 0);
  big(0, 1) = 2;
  const auto rb = totally_unimodular(big);
  CHECK_FALSE(rb.totally_unimodular);
  CHECK(rb.witness_cols == std::vector<int>{1});

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-1, 1), size(1, 5);
  for (int t = 0; t < 300; ++t) {
    IntMatrix x(size(rng), size(rng));
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) x(i, j) = entry(rng);
    const auto rep = totally_unimodular(x);
    CHECK(rep.totally_unimodular == tu_oracle(x));
    if (!rep.totally_unimodular) {
      IntMatrix s(static_cast<int>(rep.witness_rows.size()), static_cast<int>(rep.witness_cols.size()));
      for (int a = 0; a < s.rows(); ++a)
        for (int b = 0; b < s.cols(); ++b) s(a, b) = x(rep.witness_rows[a], rep.witness_cols[b]);
      CHECK(determinant(s) == rep.witness_value);
    }
  }
}

TEST_CASE("resistance forms") {
  Multigraph loop(1);
  loop.add_edge(0, 0);
  CHECK(resistance_form(loop, homology_basis(loop), {1}) == QuadForm::identity(1));

  const Multigraph th = find_corpus_entry("theta")->graph;
  const HomologyBasis b = homology_basis(th);
  const QuadForm q = resistance_form(th, b, {1, 1, 1});
  CHECK(q == gram({{make_rational(2, 3), make_rational(-1, 3)}, {make_rational(-1, 3), make_rational(2, 3)}}));
  CHECK(evaluate(q, b.coedges[0]) == make_rational(2, 3));
  const Rational w = make_rational(2, 3);
  const QuadForm s = resistance_form(th, b, {w, w, w});
  for (EdgeId e = 0; e < 3; ++e) CHECK(evaluate(s, b.coedges[e]) == 1);
  CHECK_THROWS_AS(resistance_form(th, b, {1, 0, 1}), std::invalid_argument);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(1, 9);
  for (const auto& g : testgen::connected_multigraphs(6)) {
    std::vector<Rational> l;
    for (EdgeId e = 0; e < g.num_edges(); ++e) l.push_back(make_rational(num(rng), num(rng)));
    CHECK(is_positive_definite(resistance_form(g, homology_basis(g), l)));
  }
}
