#pragma once

#include <json.hpp>

#include "emm/homology.hpp"
#include "emm/lattice.hpp"
#include "emm/qemm.hpp"
#include "emm/torelli.hpp"
#include "emm/verify.hpp"
#include "emm/zemm.hpp"

namespace emm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kJsonSchema = "emm/1";

/// Rationals as "n/d" strings ("n" when integral).
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const IntVec& v);
Json to_json(const QuadForm& q);
/// Accepts {"gram": [[...]]} or a bare matrix; entries are strings or integers.
QuadForm form_from_json(const Json& j);

Json to_json(const HomologyBasis& b);
Json to_json(const EmmVerdict& v);
Json to_json(const Embedding& e);
Json to_json(const ZemmResult& r);
Json to_json(const StrongEmmCertificate& c);
Json to_json(const RegularityVerdict& v);

}  // namespace emm
