#include "cstar/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "cstar/errors.hpp"
#include "cstar/exact_simplex.hpp"

namespace cstar {

namespace {

void require_generator(const Element& a, std::size_t dim) {
  if (a.kind() != InstanceKind::diag_real) {
    throw InvalidArgument("lattice generators must be diag_real, got " + std::string(instance_name(a.kind())));
  }
  if (a.dim() != dim) {
    throw InstanceMismatch("generator of dimension " + std::to_string(a.dim()) + " in a lattice of dimension " +
                           std::to_string(dim));
  }
}

void canonical_clause(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
}

bool includes(const Clause& big, const Clause& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Element constant(std::size_t dim, const Rational& q) {
  return Element::constant(InstanceKind::diag_real, dim, Gaussian(q));
}

}  // namespace

LatticeTerm::LatticeTerm(std::size_t dim, std::vector<Clause> clauses) : dim_(dim), clauses_(std::move(clauses)) {
  for (auto& c : clauses_) {
    for (const auto& g : c) require_generator(g, dim_);
    canonical_clause(c);
  }
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
  // Absorption: drop any clause that strictly contains another.
  std::vector<bool> absorbed(clauses_.size(), false);
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    for (std::size_t j = 0; j < clauses_.size() && !absorbed[i]; ++j) {
      absorbed[i] = i != j && clauses_[i].size() > clauses_[j].size() && includes(clauses_[i], clauses_[j]);
    }
  }
  std::vector<Clause> kept;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (!absorbed[i]) kept.push_back(std::move(clauses_[i]));
  }
  clauses_ = std::move(kept);
}

LatticeTerm LatticeTerm::top(std::size_t dim) { return LatticeTerm(dim, {Clause{}}); }
LatticeTerm LatticeTerm::bottom(std::size_t dim) { return LatticeTerm(dim, {}); }
LatticeTerm LatticeTerm::generator(const Element& a) { return LatticeTerm(a.dim(), {Clause{a}}); }
LatticeTerm LatticeTerm::from_clauses(std::size_t dim, std::vector<Clause> clauses) {
  return LatticeTerm(dim, std::move(clauses));
}

LatticeTerm meet(const LatticeTerm& t1, const LatticeTerm& t2) {
  if (t1.dim() != t2.dim()) throw InstanceMismatch("meet of lattice terms of different dimension");
  std::vector<Clause> out;
  for (const auto& c1 : t1.clauses()) {
    for (const auto& c2 : t2.clauses()) {
      Clause c = c1;
      c.insert(c.end(), c2.begin(), c2.end());
      out.push_back(std::move(c));
    }
  }
  return LatticeTerm::from_clauses(t1.dim(), std::move(out));
}

LatticeTerm join(const LatticeTerm& t1, const LatticeTerm& t2) {
  if (t1.dim() != t2.dim()) throw InstanceMismatch("join of lattice terms of different dimension");
  std::vector<Clause> out = t1.clauses();
  out.insert(out.end(), t2.clauses().begin(), t2.clauses().end());
  return LatticeTerm::from_clauses(t1.dim(), std::move(out));
}

std::vector<bool> positivity_set(const Element& a) {
  std::vector<bool> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i].re > 0;
  return out;
}

std::vector<bool> positivity_set(const Clause& clause, std::size_t dim) {
  std::vector<bool> out(dim, true);
  for (const auto& g : clause) {
    require_generator(g, dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = out[i] && g[i].re > 0;
  }
  return out;
}

std::vector<bool> positivity_set(const LatticeTerm& t) {
  std::vector<bool> out(t.dim(), false);
  for (const auto& c : t.clauses()) {
    const auto inner = positivity_set(c, t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i) out[i] = out[i] || inner[i];
  }
  return out;
}

bool spatial_entails(std::span<const Element> left, std::span<const Clause> right, std::size_t dim) {
  const auto lhs = positivity_set(Clause(left.begin(), left.end()), dim);
  std::vector<bool> rhs(dim, false);
  for (const auto& c : right) {
    const auto inner = positivity_set(c, dim);
    for (std::size_t i = 0; i < dim; ++i) rhs[i] = rhs[i] || inner[i];
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (lhs[i] && !rhs[i]) return false;
  }
  return true;
}

bool spatial_entails(const LatticeTerm& t1, const LatticeTerm& t2) {
  if (t1.dim() != t2.dim()) throw InstanceMismatch("entailment between terms of different dimension");
  const auto lhs = positivity_set(t1);
  const auto rhs = positivity_set(t2);
  for (std::size_t i = 0; i < t1.dim(); ++i) {
    if (lhs[i] && !rhs[i]) return false;
  }
  return true;
}

namespace {

// Calls visit(picks) for every choice function over the clauses; stops early
// when visit returns false. Returns false iff stopped early.
template <typename Visit>
bool for_each_choice(const std::vector<Clause>& clauses, Visit&& visit) {
  for (const auto& c : clauses) {
    if (c.empty()) return true;  // no choice functions at all
  }
  std::vector<std::size_t> picks(clauses.size(), 0);
  while (true) {
    if (!visit(picks)) return false;
    std::size_t k = 0;
    while (k < picks.size() && ++picks[k] == clauses[k].size()) picks[k++] = 0;
    if (k == picks.size()) return true;
  }
}

}  // namespace

bool spatial_entails_by_choice(const LatticeTerm& t1, const LatticeTerm& t2) {
  if (t1.dim() != t2.dim()) throw InstanceMismatch("entailment between terms of different dimension");
  for (const auto& clause : t1.clauses()) {
    const bool ok = for_each_choice(t2.clauses(), [&](const std::vector<std::size_t>& picks) {
      std::vector<Clause> flat;
      flat.reserve(picks.size());
      for (std::size_t k = 0; k < picks.size(); ++k) flat.push_back(Clause{t2.clauses()[k][picks[k]]});
      return spatial_entails(clause, flat, t1.dim());
    });
    if (!ok) return false;
  }
  return true;
}

bool spatial_equal(const LatticeTerm& t1, const LatticeTerm& t2) {
  return spatial_entails(t1, t2) && spatial_entails(t2, t1);
}

Element EntailmentCertificate::monomial_value() const {
  Element m = constant(dim, Rational(1));
  for (const auto& f : monomial) m = m * f;
  return m;
}

bool EntailmentCertificate::replay() const {
  return (monomial_value() + p.evaluate(generators)).is_zero();
}

namespace {

// Exponent vectors of total degree `degree` over n variables, lexicographically
// descending: (d,0,..), (d-1,1,..), ...
void exponents_of_degree(std::size_t n, unsigned degree, std::vector<unsigned>& prefix,
                         std::vector<std::vector<unsigned>>& out) {
  if (prefix.size() + 1 == n) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned e = degree + 1; e-- > 0;) {
    prefix.push_back(e);
    exponents_of_degree(n, degree - e, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<unsigned>> graded_lex_monomials(std::size_t n, unsigned max_degree) {
  std::vector<std::vector<unsigned>> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<unsigned> prefix;
  for (unsigned d = 0; d <= max_degree; ++d) exponents_of_degree(n, d, prefix, out);
  return out;
}

}  // namespace

std::optional<EntailmentCertificate> cert_entails(std::span<const Element> left, std::span<const Element> right,
                                                  std::size_t dim, const CertSearchOptions& options) {
  if (options.degree < 1) throw InvalidArgument("cert_entails requires degree >= 1");
  for (const auto& a : left) require_generator(a, dim);
  for (const auto& b : right) require_generator(b, dim);

  std::vector<Element> generators;
  for (const auto& b : right) generators.push_back(-b);
  if (options.cone == ConeGenerators::left_and_negated_right) {
    generators.insert(generators.end(), left.begin(), left.end());
  }
  if (generators.size() >= 8 * sizeof(unsigned long) - 1) throw InvalidArgument("cert_entails: too many generators");

  // Subsets of at most `degree` distinct generators, by size then bitmask.
  std::vector<unsigned long> subsets;
  const unsigned long all = 1UL << generators.size();
  for (unsigned size = 0; size <= options.degree && size <= generators.size(); ++size) {
    for (unsigned long mask = 0; mask < all; ++mask) {
      if (static_cast<unsigned>(std::popcount(mask)) == size) subsets.push_back(mask);
    }
  }
  std::vector<Element> products;
  std::vector<std::vector<std::size_t>> members;
  for (unsigned long mask : subsets) {
    Element prod = constant(dim, Rational(1));
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < generators.size(); ++j) {
      if (mask & (1UL << j)) {
        prod = prod * generators[j];
        idx.push_back(j);
      }
    }
    products.push_back(std::move(prod));
    members.push_back(std::move(idx));
  }

  const std::size_t vars = products.size() * dim;
  lp::Matrix a_matrix(dim, std::vector<Rational>(vars));
  for (std::size_t s = 0; s < products.size(); ++s) {
    for (std::size_t i = 0; i < dim; ++i) a_matrix[i][s * dim + i] = products[s][i].re;
  }

  for (const auto& exps : graded_lex_monomials(left.size(), options.degree)) {
    EntailmentCertificate cert;
    cert.dim = dim;
    cert.exponents = exps;
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (unsigned e = 0; e < exps[i]; ++e) cert.monomial.push_back(left[i]);
    }
    const Element m = cert.monomial_value();
    std::vector<Rational> rhs(dim);
    for (std::size_t i = 0; i < dim; ++i) rhs[i] = -m[i].re;

    const auto solution = lp::find_feasible(a_matrix, rhs);
    if (!solution) continue;

    cert.generators = generators;
    cert.p.dim = dim;
    for (std::size_t s = 0; s < products.size(); ++s) {
      std::vector<Rational> sigma(dim);
      for (std::size_t i = 0; i < dim; ++i) sigma[i] = (*solution)[s * dim + i];
      const Element coeff = Element::diag_real(std::move(sigma));
      if (coeff.is_zero()) continue;
      for (auto term : sum_of_squares(coeff).terms) {
        term.generator_factors = members[s];
        cert.p.terms.push_back(std::move(term));
      }
    }
    if (!cert.replay()) throw InternalVerificationFailure("cert_entails: certificate does not replay");
    return cert;
  }
  return std::nullopt;
}

std::optional<std::vector<ChoiceCertificate>> cert_entails(const Clause& left, const LatticeTerm& right,
                                                           const CertSearchOptions& options) {
  std::vector<ChoiceCertificate> out;
  const bool ok = for_each_choice(right.clauses(), [&](const std::vector<std::size_t>& picks) {
    std::vector<Element> flat;
    for (std::size_t k = 0; k < picks.size(); ++k) flat.push_back(right.clauses()[k][picks[k]]);
    auto cert = cert_entails(left, flat, right.dim(), options);
    if (!cert) return false;
    out.push_back(ChoiceCertificate{picks, std::move(*cert)});
    return true;
  });
  if (!ok) return std::nullopt;
  return out;
}

Element to_real_diagonal(const Element& a) {
  if (a.kind() == InstanceKind::diag_real) return a;
  if (a.kind() == InstanceKind::diag_complex && a.is_self_adjoint()) return a.as_kind(InstanceKind::diag_real);
  throw InvalidArgument("expected a self-adjoint diagonal element");
}

DPositiveReport d_positive_iff(const Element& a, unsigned max_degree) {
  const Element x = to_real_diagonal(a);
  DPositiveReport report;
  report.strict = strictly_positive(x);
  const std::vector<Clause> right{Clause{x}};
  report.spatial = spatial_entails({}, right, x.dim());
  for (unsigned d = 1; d <= max_degree && !report.cert; ++d) {
    const Element rhs[] = {x};
    report.cert = cert_entails({}, rhs, x.dim(), CertSearchOptions{d});
    if (report.cert) report.cert_degree = d;
  }
  const bool witness_ok = !report.strict || verify_witness(x, *report.strict);
  const bool cert_ok = !report.cert || report.cert->replay();
  report.consistent = witness_ok && cert_ok && report.strict.has_value() == report.spatial &&
                      report.spatial == report.cert.has_value();
  return report;
}

Relation6Report interpret_relation6(const Element& a, unsigned grid) {
  const Element x = to_real_diagonal(a);
  const std::size_t dim = x.dim();
  Relation6Report report{LatticeTerm::bottom(dim), std::nullopt, {}, true};
  const auto target = positivity_set(x);
  for (unsigned j = 0; j <= grid; ++j) {
    const Element shifted = x - constant(dim, pow2(-static_cast<long>(j)));
    report.grid_join = join(report.grid_join, LatticeTerm::generator(shifted));
    if (!report.covering_level && positivity_set(shifted) == target) report.covering_level = j;
  }
  std::vector<LatticeTerm> suite{LatticeTerm::bottom(dim), LatticeTerm::top(dim), LatticeTerm::generator(x),
                                 LatticeTerm::generator(-x)};
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Rational> e(dim);
    e[i] = 1;
    suite.push_back(LatticeTerm::generator(Element::diag_real(std::move(e))));
  }
  const LatticeTerm direct = LatticeTerm::generator(x);
  for (auto& rhs : suite) {
    Relation6Check check{rhs, spatial_entails(direct, rhs), spatial_entails(report.grid_join, rhs), false};
    check.agree = check.direct == check.via_grid;
    report.all_agree = report.all_agree && check.agree;
    report.checks.push_back(std::move(check));
  }
  return report;
}

LatticeTerm mfn_basic_open(const Element& a, const Rational& r, const Rational& s) {
  if (!(r < s)) throw InvalidArgument("mfn_basic_open requires r < s, got " + to_string(r) + ", " + to_string(s));
  const Element x = to_real_diagonal(a);
  return LatticeTerm::from_clauses(x.dim(), {Clause{x - constant(x.dim(), r), constant(x.dim(), s) - x}});
}

LatticeTerm complex_open_interpret(const Element& a, const Rectangle& rect) {
  if (!(rect.r1 < rect.s1) || !(rect.r2 < rect.s2)) throw InvalidArgument("complex_open_interpret: empty rectangle");
  if (a.kind() == InstanceKind::circulant) throw InvalidArgument("complex_open_interpret requires a diagonal element");
  const Element lifted = a.kind() == InstanceKind::diag_real ? a.as_kind(InstanceKind::diag_complex) : a;
  const auto parts = sa_decompose(lifted);
  const Element a1 = parts.real.as_kind(InstanceKind::diag_real);
  const Element a2 = parts.imag.as_kind(InstanceKind::diag_real);
  const std::size_t dim = a.dim();
  return LatticeTerm::from_clauses(dim, {Clause{a1 - constant(dim, rect.r1), constant(dim, rect.s1) - a1,
                                                a2 - constant(dim, rect.r2), constant(dim, rect.s2) - a2}});
}

bool is_homomorphism_on(const Character& phi, const Element& a, const Element& b) {
  require_compatible(a, b);
  if (!a.is_diagonal() || phi.index >= a.dim()) return false;
  const Element one = Element::one(a.kind(), a.dim());
  return phi(a + b) == phi(a) + phi(b) && phi(a * b) == phi(a) * phi(b) && phi(one) == Gaussian(Rational(1)) &&
         phi(a.star()) == phi(a).conj();
}

GelfandTable gelfand_transform(const Element& a) {
  if (!a.is_diagonal()) throw InvalidArgument("gelfand_transform requires a diagonal element");
  std::vector<Gaussian> values;
  for (std::size_t i = 0; i < a.dim(); ++i) values.push_back(Character{i}(a));
  Rational sup2 = 0;
  bool real = true;
  for (const auto& v : values) {
    sup2 = std::max(sup2, v.norm2());
    real = real && v.is_real();
  }
  if (real) {
    Rational sup = 0;
    for (const auto& v : values) sup = std::max(sup, abs(v.re));
    return GelfandTable{std::move(values), from_rational(sup)};
  }
  return GelfandTable{std::move(values), UpperReal([sup2](Precision k) { return sqrt_upper(sup2, k); })};
}

RelationsReport check_relations(const Element& a, const Element& b) {
  require_generator(a, a.dim());
  require_generator(b, a.dim());
  const std::size_t dim = a.dim();
  const auto top = LatticeTerm::top(dim);
  const auto bot = LatticeTerm::bottom(dim);
  const auto d = [](const Element& x) { return LatticeTerm::generator(x); };
  RelationsReport r;
  r.unit = spatial_equal(d(constant(dim, Rational(1))), top);
  r.negative_square = spatial_equal(d(-(a * a)), bot);
  r.sum = spatial_entails(d(a + b), join(d(a), d(b)));
  r.opposite = spatial_equal(meet(d(a), d(-a)), bot);
  r.product = spatial_equal(d(a * b), join(meet(d(a), d(b)), meet(d(-a), d(-b))));
  return r;
}

}  // namespace cstar
