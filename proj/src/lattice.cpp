#include "emm/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace emm {

QuadForm::QuadForm(RatMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("QuadForm: gram matrix not square");
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) gram_(i, j).canonicalize();
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("QuadForm: gram matrix not symmetric");
}

QuadForm QuadForm::zero(int dim) { return QuadForm(RatMatrix(dim, dim, Rational(0))); }

QuadForm QuadForm::identity(int dim) { return QuadForm(RatMatrix::identity(dim)); }

QuadForm QuadForm::from_doubled(const IntMatrix& doubled) {
  RatMatrix g = to_rational(doubled);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) /= 2;
  return QuadForm(std::move(g));
}

Rational bilinear(const QuadForm& q, const IntVec& u, const IntVec& v) {
  if (static_cast<int>(u.size()) != q.dim() || static_cast<int>(v.size()) != q.dim())
    throw std::invalid_argument("bilinear: dimension mismatch");
  Rational s = 0;
  for (int i = 0; i < q.dim(); ++i) {
    if (u[i] == 0) continue;
    Rational row = 0;
    for (int j = 0; j < q.dim(); ++j)
      if (v[j] != 0) row += q(i, j) * static_cast<long>(v[j]);
    s += row * static_cast<long>(u[i]);
  }
  return s;
}

Rational evaluate(const QuadForm& q, const IntVec& v) { return bilinear(q, v, v); }

bool is_integral(const QuadForm& q) {
  for (int i = 0; i < q.dim(); ++i)
    for (int j = 0; j < q.dim(); ++j) {
      const Rational twice = q(i, j) * 2;
      if (!is_integer(twice)) return false;
      if (i == j && !is_integer(q(i, j))) return false;
    }
  return true;
}

namespace {

// q(v) = sum_i d_i (v_i + sum_{j>i} u_ij v_j)^2. Returns false when a pivot
// is not positive.
bool ldl(const QuadForm& q, std::vector<Rational>& d, RatMatrix& u) {
  const int n = q.dim();
  d.assign(n, Rational(0));
  u = RatMatrix(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    Rational di = q(i, i);
    for (int k = 0; k < i; ++k) di -= d[k] * u(k, i) * u(k, i);
    if (di <= 0) return false;
    d[i] = di;
    u(i, i) = 1;
    for (int j = i + 1; j < n; ++j) {
      Rational s = q(i, j);
      for (int k = 0; k < i; ++k) s -= d[k] * u(k, i) * u(k, j);
      u(i, j) = s / di;
    }
  }
  return true;
}

mpz_class floor_of(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

}  // namespace

bool is_positive_definite(const QuadForm& q) {
  std::vector<Rational> d;
  RatMatrix u;
  return ldl(q, d, u);
}

QuadForm direct_sum(const std::vector<QuadForm>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.dim();
  RatMatrix g(n, n, Rational(0));
  int off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < p.dim(); ++i)
      for (int j = 0; j < p.dim(); ++j) g(off + i, off + j) = p(i, j);
    off += p.dim();
  }
  return QuadForm(std::move(g));
}

QuadForm operator+(const QuadForm& a, const QuadForm& b) { return QuadForm(a.gram() + b.gram()); }

QuadForm operator*(const Rational& s, const QuadForm& q) { return QuadForm(s * q.gram()); }

QuadForm pullback(const QuadForm& q, const IntMatrix& map) { return QuadForm(congruence(q.gram(), map)); }

ShortVectorReport min_vectors(const QuadForm& q, const Rational& bound) {
  std::vector<Rational> d;
  RatMatrix u;
  if (!ldl(q, d, u)) throw std::domain_error("min_vectors: form is not positive definite");
  const int n = q.dim();
  ShortVectorReport report;
  report.bound = bound;
  if (n == 0) return report;

  std::vector<std::int64_t> v(n, 0);
  std::vector<std::pair<Rational, IntVec>> found;

  // Level i chooses v_i given v_{i+1..n-1}; `budget` is what remains of the
  // bound; `all_zero` is true while every higher coordinate vanishes.
  std::function<void(int, const Rational&, bool)> descend = [&](int i, const Rational& budget, bool all_zero) {
    ++report.nodes;
    Rational center = 0;
    for (int j = i + 1; j < n; ++j)
      if (v[j] != 0) center -= u(i, j) * static_cast<long>(v[j]);
    auto fits = [&](const mpz_class& x, Rational& used) {
      Rational t = Rational(x) - center;
      used = d[i] * t * t;
      return used <= budget;
    };
    auto visit = [&](const mpz_class& x, const Rational& used) {
      v[i] = x.get_si();
      const Rational rest = budget - used;
      if (i == 0) {
        if (!(all_zero && v[0] == 0)) found.emplace_back(bound - rest, v);
      } else {
        descend(i - 1, rest, all_zero && v[i] == 0);
      }
      v[i] = 0;
    };
    const mpz_class base = floor_of(center);
    Rational used;
    for (mpz_class x = base; fits(x, used); --x) {
      if (all_zero && x < 0) break;
      visit(x, used);
    }
    for (mpz_class x = base + 1; fits(x, used); ++x) {
      if (all_zero && x < 0) continue;
      visit(x, used);
    }
  };
  descend(n - 1, bound, true);

  for (auto& [value, vec] : found) {
    auto first = std::find_if(vec.begin(), vec.end(), [](std::int64_t x) { return x != 0; });
    if (*first < 0)
      for (auto& x : vec) x = -x;
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  for (auto& [value, vec] : found) {
    report.values.push_back(value);
    report.vectors.push_back(std::move(vec));
  }
  if (!report.values.empty()) report.minimum = report.values.front();
  return report;
}

int RootDecomposition::total_rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

std::string to_string(const RootComponent& c) {
  const char* f = c.family == RootFamily::A ? "A" : c.family == RootFamily::D ? "D" : "E";
  return f + std::to_string(c.rank);
}

std::string RootDecomposition::to_string() const {
  if (components.empty()) return "0";
  std::string s;
  for (const auto& c : components) {
    if (!s.empty()) s += "+";
    s += emm::to_string(c);
  }
  return s;
}

namespace {

std::int64_t positive_root_count(const RootComponent& c) {
  const std::int64_t n = c.rank;
  switch (c.family) {
    case RootFamily::A:
      return n * (n + 1) / 2;
    case RootFamily::D:
      return n * (n - 1);
    case RootFamily::E:
      return n == 6 ? 36 : n == 7 ? 63 : 120;
  }
  return 0;
}

RootComponent classify_dynkin(const std::vector<std::vector<int>>& adj, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  int edges = 0;
  int branch = -1;
  for (int v : nodes) {
    edges += static_cast<int>(adj[v].size());
    if (adj[v].size() > 3) throw std::domain_error("root_lattice_type: Dynkin node of degree > 3");
    if (adj[v].size() == 3) {
      if (branch >= 0) throw std::domain_error("root_lattice_type: two branch nodes");
      branch = v;
    }
  }
  if (edges / 2 != k - 1) throw std::domain_error("root_lattice_type: Dynkin diagram has a cycle");
  if (branch < 0) return {RootFamily::A, k};
  std::vector<int> arms;
  for (int start : adj[branch]) {
    int len = 1, prev = branch, cur = start;
    while (adj[cur].size() == 2) {
      const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {RootFamily::D, k};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {RootFamily::E, k};
  throw std::domain_error("root_lattice_type: diagram is not simply-laced Dynkin");
}

}  // namespace

RootDecomposition root_lattice_type(const QuadForm& q) {
  if (!is_integral(q)) throw std::domain_error("root_lattice_type: 2q is not even integral");
  if (!is_positive_definite(q)) throw std::domain_error("root_lattice_type: form is not positive definite");
  const int n = q.dim();
  RootDecomposition out;
  if (n == 0) return out;
  const ShortVectorReport report = min_vectors(q, Rational(1));
  // Positive roots: first nonzero coordinate positive (a lexicographic order
  // compatible with addition).
  std::vector<IntVec> positive;
  for (std::size_t i = 0; i < report.vectors.size(); ++i)
    if (report.values[i] == 1) positive.push_back(report.vectors[i]);
  const std::set<IntVec> pos_set(positive.begin(), positive.end());
  std::vector<IntVec> simple;
  for (const auto& r : positive) {
    bool decomposable = false;
    for (const auto& a : positive) {
      if (a == r) continue;
      IntVec b(n);
      for (int i = 0; i < n; ++i) b[i] = r[i] - a[i];
      if (pos_set.count(b)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(r);
  }
  if (static_cast<int>(simple.size()) != n) throw std::domain_error("not a root lattice generated in degree 2");
  IntMatrix basis(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis(i, j) = simple[i][j];
  const auto det = determinant(basis);
  if (det != 1 && det != -1) throw std::domain_error("not a root lattice generated in degree 2");

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rational b = 2 * bilinear(q, simple[i], simple[j]);
      if (b == 0) continue;
      if (b != -1) throw std::domain_error("root_lattice_type: simple roots with pairing outside {0,-1}");
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  std::vector<bool> seen(n, false);
  std::int64_t expected = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> nodes{s};
    seen[s] = true;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (int w : adj[nodes[k]])
        if (!seen[w]) {
          seen[w] = true;
          nodes.push_back(w);
        }
    out.components.push_back(classify_dynkin(adj, nodes));
    expected += positive_root_count(out.components.back());
  }
  if (expected != static_cast<std::int64_t>(positive.size()))
    throw std::domain_error("root_lattice_type: root count does not match the Dynkin type");
  std::sort(out.components.begin(), out.components.end());
  return out;
}

UnimodularityReport totally_unimodular(const IntMatrix& m) {
  UnimodularityReport report;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) < -1 || m(i, j) > 1) {
        report.totally_unimodular = false;
        report.witness_rows = {i};
        report.witness_cols = {j};
        report.witness_value = m(i, j);
        return report;
      }

  std::vector<int> rows(m.rows()), cols(m.cols());
  for (int i = 0; i < m.rows(); ++i) rows[i] = i;
  for (int j = 0; j < m.cols(); ++j) cols[j] = j;

  // Removing a zero line, a line equal to ± another one, or a line with a
  // single ±1 entry does not change total unimodularity.
  auto strip = [&](std::vector<int>& keep, const std::vector<int>& other, bool by_row) {
    auto at = [&](int line, int k) { return by_row ? m(line, k) : m(k, line); };
    bool changed = false;
    std::vector<int> out;
    std::set<std::vector<std::int64_t>> seen;
    for (int line : keep) {
      std::vector<std::int64_t> v, neg;
      int nonzero = 0;
      for (int k : other) {
        v.push_back(at(line, k));
        neg.push_back(-at(line, k));
        nonzero += at(line, k) != 0;
      }
      if (nonzero <= 1 || seen.count(v) || seen.count(neg)) {
        changed = true;
        continue;
      }
      seen.insert(v);
      out.push_back(line);
    }
    keep = std::move(out);
    return changed;
  };
  while (strip(rows, cols, true) | strip(cols, rows, false)) {
  }

  const int k_max = static_cast<int>(std::min(rows.size(), cols.size()));
  std::vector<int> rsel, csel;
  bool failed = false;
  std::function<void(int, std::size_t)> pick_cols;
  std::function<void(int, std::size_t)> pick_rows = [&](int k, std::size_t from) {
    if (failed) return;
    if (static_cast<int>(rsel.size()) == k) {
      pick_cols(k, 0);
      return;
    }
    for (std::size_t i = from; i < rows.size() && !failed; ++i) {
      rsel.push_back(rows[i]);
      pick_rows(k, i + 1);
      rsel.pop_back();
    }
  };
  pick_cols = [&](int k, std::size_t from) {
    if (failed) return;
    if (static_cast<int>(csel.size()) == k) {
      IntMatrix sub(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub(a, b) = m(rsel[a], csel[b]);
      ++report.minors_checked;
      const auto det = determinant(sub);
      if (det < -1 || det > 1) {
        failed = true;
        report.totally_unimodular = false;
        report.witness_rows = rsel;
        report.witness_cols = csel;
        report.witness_value = det;
      }
      return;
    }
    for (std::size_t j = from; j < cols.size() && !failed; ++j) {
      csel.push_back(cols[j]);
      pick_cols(k, j + 1);
      csel.pop_back();
    }
  };
  for (int k = 2; k <= k_max && !failed; ++k) pick_rows(k, 0);
  return report;
}

QuadForm resistance_form(const Multigraph& g, const HomologyBasis& basis, const std::vector<Rational>& lambdas) {
  if (static_cast<int>(lambdas.size()) != g.num_edges())
    throw std::invalid_argument("resistance_form: one weight per edge required");
  for (const auto& l : lambdas)
    if (l <= 0) throw std::invalid_argument("resistance_form: weights must be positive");
  std::vector<Rational> lambda = lambdas;
  for (auto& l : lambda) l.canonicalize();
  const int n = basis.genus();
  RatMatrix energy(n, n, Rational(0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto a = basis.fundamental_cycles[j][e];
        const auto b = basis.fundamental_cycles[k][e];
        if (a != 0 && b != 0) energy(j, k) += lambda[e] * static_cast<long>(a * b);
      }
  return QuadForm(inverse(energy));
}

}  // namespace emm
