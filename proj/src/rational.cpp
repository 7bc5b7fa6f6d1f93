#include "emm/rational.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace emm {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw std::invalid_argument("malformed rational '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long>(m(i, j)));
  return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  RatMatrix c(a.rows(), b.cols(), Rational(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: dimension mismatch");
  RatMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

RatMatrix congruence(const RatMatrix& a, const IntMatrix& t) {
  if (a.rows() != t.rows() || a.cols() != t.rows()) throw std::invalid_argument("congruence: dimension mismatch");
  const RatMatrix tr = to_rational(t);
  return tr.transposed() * a * tr;
}

RatMatrix inverse(const RatMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: matrix not square");
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("inverse: singular matrix");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Rational p = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    const Rational p = m(row, col);
    for (int j = 0; j < m.cols(); ++j) m(row, j) /= p;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int j = 0; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(RatMatrix a) { return static_cast<int>(rref(a).size()); }

std::vector<IntVec> integer_kernel(const IntMatrix& a) {
  RatMatrix m = to_rational(a);
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<IntVec> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
    mpz_class lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> iv(v.size());
    mpz_class g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Rational s = v[i] * lcm;
      iv[i] = s.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[i].get_mpz_t());
    }
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mpz_class(iv[i] / g).get_si();
    basis.push_back(std::move(out));
  }
  return basis;
}

bool solve_linear(const RatMatrix& a, const std::vector<Rational>& b, std::vector<Rational>& x) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return false;
  x.assign(a.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), a.cols());
  return true;
}

std::int64_t determinant(const IntMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return 1;
  std::vector<__int128> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = a(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k * n + k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r * n + k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[swap_row * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
    prev = m[k * n + k];
  }
  return static_cast<std::int64_t>(sign * m[(n - 1) * n + (n - 1)]);
}

}  // namespace emm
