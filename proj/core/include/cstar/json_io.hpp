#pragma once

#include <nlohmann/json.hpp>

#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/kernels.hpp"
#include "cstar/positivity.hpp"
#include "cstar/spectrum.hpp"

namespace cstar::io {

using nlohmann::json;

// Every rational is serialized as a "p/q" string. Parsers throw SchemaError.

json to_json(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const Gaussian& g);
Gaussian gaussian_from_json(const json& j);

/// {"instance": "diag_real"|"diag_complex"|"circulant", "dim": n, "entries": [...]}
json to_json(const Element& a);
Element element_from_json(const json& j);

/// {"root": <element>, "certified_error": "p/q", "iterations": n}
json to_json(const SqrtResult& r);
/// {"inverse": <element>, "residual_bound": "p/q", "n_scale": n, "terms": K}
json to_json(const InverseResult& r);

json to_json(const ConeCertificate& c);
json to_json(const StrictPosWitness& w);
/// {"N": .., "L": .., "n_power": .., "bound": "p/q"}
json to_json(const KeyBoundWitness& w);

json to_json(const EntailmentCertificate& c);
json to_json(const LatticeTerm& t);

/// {"values": [...], "sup_upper": "p/q", "precision": k}
json to_json(const GelfandTable& t, Precision k);

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
json integer_to_json(const Integer& n);

struct EntailQuery {
  std::size_t dim = 1;
  Clause left;
  std::vector<Clause> right;
  unsigned degree = 4;
  bool has_degree = false;
};

/// {"left": [elements], "right": [[elements]], "degree": d}; "degree" optional.
/// All elements must be self-adjoint diagonal elements of one dimension.
EntailQuery entail_query_from_json(const json& j);

}  // namespace cstar::io
