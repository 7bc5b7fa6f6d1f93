#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace emm {

using Rational = mpq_class;
using IntVec = std::vector<std::int64_t>;

/// "n/d" with d omitted when it is 1; always canonical.
std::string to_string(const Rational& r);

/// Accepts "n", "n/d", "-n/d"; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(static_cast<long>(num), static_cast<unsigned long>(den < 0 ? -den : den));
  if (den < 0) r = -r;
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r);

/// Dense row-major square-or-rectangular matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  Matrix(int rows, int cols, const T& fill)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n, T(0));
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<std::int64_t>;

RatMatrix to_rational(const IntMatrix& m);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, const RatMatrix& a);

/// Tᵀ·A·T for a rational A and integer T (change of coordinates / pullback).
RatMatrix congruence(const RatMatrix& a, const IntMatrix& t);

/// Exact Gauss-Jordan inverse; throws std::domain_error when singular.
RatMatrix inverse(const RatMatrix& a);

int rank(RatMatrix a);

/// Integer basis of the right kernel {x : A x = 0}, each vector primitive.
std::vector<IntVec> integer_kernel(const IntMatrix& a);

/// Any solution of A x = b (free variables set to zero); empty optional-like
/// flag via return bool.
bool solve_linear(const RatMatrix& a, const std::vector<Rational>& b, std::vector<Rational>& x);

/// Determinant of a small integer matrix (fraction-free Bareiss).
std::int64_t determinant(const IntMatrix& a);

}  // namespace emm
