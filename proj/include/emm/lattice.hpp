#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emm/homology.hpp"
#include "emm/multigraph.hpp"
#include "emm/rational.hpp"

namespace emm {

/// Quadratic form q(v) = vᵀ·gram·v on cocycle coordinates. Exact only.
class QuadForm {
 public:
  QuadForm() = default;
  explicit QuadForm(RatMatrix gram);
  static QuadForm zero(int dim);
  static QuadForm identity(int dim);
  /// q whose doubled form 2q has the given even integer matrix.
  static QuadForm from_doubled(const IntMatrix& doubled);

  int dim() const { return gram_.rows(); }
  const RatMatrix& gram() const { return gram_; }
  const Rational& operator()(int i, int j) const { return gram_(i, j); }

  bool operator==(const QuadForm&) const = default;

 private:
  RatMatrix gram_;
};

Rational evaluate(const QuadForm& q, const IntVec& v);
Rational bilinear(const QuadForm& q, const IntVec& u, const IntVec& v);

/// 2q is an even integral matrix (q half-integral with integral diagonal).
bool is_integral(const QuadForm& q);

/// Exact LDLᵀ pivot test.
bool is_positive_definite(const QuadForm& q);

QuadForm direct_sum(const std::vector<QuadForm>& parts);
QuadForm operator+(const QuadForm& a, const QuadForm& b);
QuadForm operator*(const Rational& s, const QuadForm& q);
/// Pullback along a coordinate map: the form z -> q(map · z).
QuadForm pullback(const QuadForm& q, const IntMatrix& map);

struct ShortVectorReport {
  Rational bound;
  /// Nonzero v with q(v) <= bound, one of each ±pair (first nonzero entry
  /// positive), sorted by value then lexicographically.
  std::vector<IntVec> vectors;
  std::vector<Rational> values;
  std::optional<Rational> minimum;
  std::uint64_t nodes = 0;
};

/// Exhaustive enumeration of {v != 0 : q(v) <= bound} by depth-first search
/// over the LDLᵀ coordinates with exact interval bounds. Throws
/// std::domain_error when q is not positive definite.
ShortVectorReport min_vectors(const QuadForm& q, const Rational& bound);

enum class RootFamily { A, D, E };

struct RootComponent {
  RootFamily family;
  int rank;
  bool operator==(const RootComponent&) const = default;
  auto operator<=>(const RootComponent&) const = default;
};

struct RootDecomposition {
  std::vector<RootComponent> components;  // sorted
  int total_rank() const;
  std::string to_string() const;  // e.g. "A2+A2", "D4", "0" for rank zero
  bool operator==(const RootDecomposition&) const = default;
};

/// Type of the even lattice (Z^g, 2q). Throws std::domain_error when 2q is
/// not even integral positive definite or its norm-2 vectors do not span.
RootDecomposition root_lattice_type(const QuadForm& q);

std::string to_string(const RootComponent& c);

struct UnimodularityReport {
  bool totally_unimodular = true;
  /// Rows and columns of a square submatrix with determinant outside
  /// {-1, 0, 1}, or a single entry outside that set.
  std::vector<int> witness_rows;
  std::vector<int> witness_cols;
  std::int64_t witness_value = 0;
  std::uint64_t minors_checked = 0;
};

/// Brute force over all square minors after stripping zero, duplicate and
/// unit rows/columns (which preserves total unimodularity).
UnimodularityReport totally_unimodular(const IntMatrix& m);

/// q on H^1 dual to Q = sum over edges of lambda_e (e*)^2 on H_1.
QuadForm resistance_form(const Multigraph& g, const HomologyBasis& basis, const std::vector<Rational>& lambdas);

}  // namespace emm
