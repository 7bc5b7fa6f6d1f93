#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emm/homology.hpp"
#include "emm/lattice.hpp"
#include "emm/multigraph.hpp"

namespace emm {

enum class EmmKind { Z, Q };

struct EmmFailure {
  /// "integral", "positive-definite", "coedge-norm", "minimum" or "strong".
  std::string condition;
  IntVec witness;  // empty when the failure has no vector witness
  EdgeId edge = -1;
  Rational value;
};

struct EmmVerdict {
  bool ok = true;
  EmmKind kind = EmmKind::Q;
  bool strong = false;
  std::optional<Rational> minimum;
  /// Vectors of norm exactly 1, one per sign pair.
  std::vector<IntVec> minimal_vectors;
  std::vector<EmmFailure> failures;
  std::uint64_t nodes = 0;
};

/// Checks the emm conditions in order: integrality (Z only), positive
/// definiteness, q(e*) = 1 on non-bridge edges, no nonzero vector below 1
/// and minimum exactly 1, and for strong emms that every norm-1 vector is a
/// coedge up to sign.
EmmVerdict verify_emm(const Multigraph& g, const HomologyBasis& basis, const QuadForm& q, EmmKind kind, bool strong);

std::string to_string(EmmKind kind);

}  // namespace emm
