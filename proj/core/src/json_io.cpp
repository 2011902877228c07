#include "cstar/json_io.hpp"

#include <limits>
#include <string>

#include "cstar/errors.hpp"

namespace cstar::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object with field \"") + name + "\"");
  const auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field \"") + name + "\"");
  return *it;
}

InstanceKind kind_from_name(const std::string& name) {
  if (name == "diag_real") return InstanceKind::diag_real;
  if (name == "diag_complex") return InstanceKind::diag_complex;
  if (name == "circulant") return InstanceKind::circulant;
  throw SchemaError("unknown instance \"" + name + "\"");
}

}  // namespace

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw SchemaError("rational must be a \"p/q\" string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

json to_json(const Gaussian& g) { return json{{"re", to_json(g.re)}, {"im", to_json(g.im)}}; }

Gaussian gaussian_from_json(const json& j) {
  return Gaussian(rational_from_json(field(j, "re")), rational_from_json(field(j, "im")));
}

json to_json(const Element& a) {
  json entries = json::array();
  for (const auto& e : a.entries()) {
    if (a.kind() == InstanceKind::diag_real) {
      entries.push_back(to_json(e.re));
    } else {
      entries.push_back(to_json(e));
    }
  }
  return json{{"instance", std::string(instance_name(a.kind()))}, {"dim", a.dim()}, {"entries", std::move(entries)}};
}

Element element_from_json(const json& j) {
  const json& instance = field(j, "instance");
  if (!instance.is_string()) throw SchemaError("\"instance\" must be a string");
  const InstanceKind kind = kind_from_name(instance.get<std::string>());
  const json& dim = field(j, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() < 1) throw SchemaError("\"dim\" must be an integer >= 1");
  const json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != dim.get<std::size_t>()) {
    throw SchemaError("\"entries\" must be an array of length dim");
  }
  std::vector<Gaussian> values;
  values.reserve(entries.size());
  for (const auto& e : entries) {
    values.push_back(kind == InstanceKind::diag_real ? Gaussian(rational_from_json(e)) : gaussian_from_json(e));
  }
  return Element::make(kind, std::move(values));
}

json to_json(const SqrtResult& r) {
  return json{{"root", to_json(r.root)}, {"certified_error", to_json(r.certified_error)},
              {"iterations", r.iterations}};
}

json to_json(const InverseResult& r) {
  return json{{"inverse", to_json(r.inverse)},
              {"residual_bound", to_json(r.residual_bound)},
              {"n_scale", integer_to_json(r.n_scale)},
              {"terms", r.terms}};
}

json to_json(const ConeCertificate& c) {
  json terms = json::array();
  for (const auto& t : c.terms) {
    json squares = json::array();
    for (const auto& f : t.square_factors) squares.push_back(to_json(f));
    terms.push_back(json{{"coefficient", to_json(t.coefficient)},
                         {"square_factors", std::move(squares)},
                         {"generator_factors", t.generator_factors}});
  }
  return json{{"dim", c.dim}, {"terms", std::move(terms)}};
}

json to_json(const StrictPosWitness& w) { return json{{"s", to_json(w.s)}, {"certificate", to_json(w.cert)}}; }

json integer_to_json(const Integer& n) {
  if (mpz_fits_slong_p(n.get_mpz_t())) return json(n.get_si());
  return json(n.get_str());
}

json to_json(const KeyBoundWitness& w) {
  return json{{"N", integer_to_json(w.N)},
              {"L", integer_to_json(w.L)},
              {"n_power", w.n_power},
              {"bound", to_json(w.bound)}};
}

json to_json(const EntailmentCertificate& c) {
  json monomial = json::array();
  for (const auto& f : c.monomial) monomial.push_back(to_json(f));
  json generators = json::array();
  for (const auto& g : c.generators) generators.push_back(to_json(g));
  return json{{"m", std::move(monomial)},
              {"exponents", c.exponents},
              {"generators", std::move(generators)},
              {"p", to_json(c.p)},
              {"replays", c.replay()}};
}

json to_json(const LatticeTerm& t) {
  json clauses = json::array();
  for (const auto& c : t.clauses()) {
    json clause = json::array();
    for (const auto& g : c) clause.push_back(to_json(g));
    clauses.push_back(std::move(clause));
  }
  return json{{"dim", t.dim()}, {"clauses", std::move(clauses)}};
}

json to_json(const GelfandTable& t, Precision k) {
  json values = json::array();
  for (const auto& v : t.values) values.push_back(to_json(v));
  return json{{"values", std::move(values)}, {"sup_upper", to_json(t.sup.bound(k))}, {"precision", k}};
}

namespace {

Element query_element(const json& j) {
  const Element e = element_from_json(j);
  if (e.kind() == InstanceKind::circulant) throw SchemaError("entailment queries take diagonal elements");
  if (!e.is_self_adjoint()) throw SchemaError("entailment generators must be self-adjoint");
  return e.as_kind(InstanceKind::diag_real);
}

}  // namespace

EntailQuery entail_query_from_json(const json& j) {
  EntailQuery q;
  const json& left = field(j, "left");
  const json& right = field(j, "right");
  if (!left.is_array()) throw SchemaError("\"left\" must be an array of elements");
  if (!right.is_array()) throw SchemaError("\"right\" must be an array of arrays of elements");
  bool dim_known = false;
  auto check_dim = [&](const Element& e) {
    if (!dim_known) {
      q.dim = e.dim();
      dim_known = true;
    } else if (e.dim() != q.dim) {
      throw SchemaError("entailment query mixes dimensions");
    }
  };
  for (const auto& e : left) {
    q.left.push_back(query_element(e));
    check_dim(q.left.back());
  }
  for (const auto& clause : right) {
    if (!clause.is_array()) throw SchemaError("each right clause must be an array of elements");
    Clause c;
    for (const auto& e : clause) {
      c.push_back(query_element(e));
      check_dim(c.back());
    }
    q.right.push_back(std::move(c));
  }
  if (const auto it = j.find("dim"); it != j.end()) {
    if (!it->is_number_unsigned()) throw SchemaError("\"dim\" must be an integer >= 1");
    const std::size_t d = it->get<std::size_t>();
    if (dim_known && d != q.dim) throw SchemaError("\"dim\" disagrees with the elements");
    q.dim = d;
    dim_known = true;
  }
  if (!dim_known) throw SchemaError("entailment query without elements needs a \"dim\" field");
  if (const auto it = j.find("degree"); it != j.end()) {
    if (!it->is_number_unsigned() || it->get<unsigned>() < 1) throw SchemaError("\"degree\" must be an integer >= 1");
    q.degree = it->get<unsigned>();
    q.has_degree = true;
  }
  return q;
}

}  // namespace cstar::io
