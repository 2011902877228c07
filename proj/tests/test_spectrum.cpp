#include <doctest.h>

#include <algorithm>
#include <random>

#include "cstar/errors.hpp"
#include "cstar/spectrum.hpp"

using namespace cstar;

namespace {

Element r(std::vector<Rational> v) { return Element::diag_real(std::move(v)); }
LatticeTerm D(const Element& a) { return LatticeTerm::generator(a); }

ConeCertificate tagged(const Element& sigma, std::size_t generator) {
  ConeCertificate c = sum_of_squares(sigma);
  for (auto& t : c.terms) t.generator_factors = {generator};
  return c;
}

Element random_small(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<long> v(-2, 2);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < dim; ++i) out.emplace_back(v(rng));
  return r(out);
}

}  // namespace

TEST_CASE("meet and join") {
  const Element a = r({1, -1}), b = r({2, 1});
  const auto t = D(a);
  CHECK(meet(LatticeTerm::top(2), t) == t);
  CHECK(join(LatticeTerm::bottom(2), t) == t);
  CHECK(meet(D(a), D(b)) == LatticeTerm::from_clauses(2, {{a, b}}));
  CHECK(join(t, t) == t);
  CHECK(join(meet(D(a), D(b)), D(a)) == D(a));
  CHECK(join(D(a), D(b)).clauses().size() == 2);
  CHECK(meet(LatticeTerm::bottom(2), t).is_bottom());
  CHECK(join(LatticeTerm::top(2), t).is_top());
  CHECK_THROWS_AS(meet(D(a), D(r({1}))), InstanceMismatch);
  CHECK_THROWS_AS(LatticeTerm::generator(Element::diag_complex({Gaussian(1)})), InvalidArgument);
}

TEST_CASE("spatial entailment examples") {
  const Element a = r({1, -1});
  const Element both[] = {a, -a};
  CHECK(spatial_entails(both, {}, 2));
  const std::vector<Clause> one{{r({1, 1})}};
  CHECK(spatial_entails({}, one, 2));
  const Element l[] = {r({1, 0})};
  const std::vector<Clause> rr{{r({2, 1})}};
  CHECK(spatial_entails(l, rr, 2));
  const std::vector<Clause> back{{r({1, 0})}};
  const Element l2[] = {r({2, 1})};
  CHECK_FALSE(spatial_entails(l2, back, 2));
}

TEST_CASE("certificate examples from the m + p = 0 characterization") {
  SUBCASE("left empty, right (1,2)") {
    const Element a = r({1, 2});
    const Element right[] = {a};
    const auto cert = cert_entails({}, right, 2);
    REQUIRE(cert);
    CHECK(cert->replay());
    CHECK(cert->monomial.empty());
    EntailmentCertificate manual{2, {}, {}, {-a}, tagged(r({1, Rational(1, 2)}), 0)};
    CHECK(manual.replay());
  }
  SUBCASE("left (1,0), right (2,1)") {
    const Element a = r({1, 0}), b = r({2, 1});
    const Element left[] = {a}, right[] = {b};
    const auto cert = cert_entails(left, right, 2);
    REQUIRE(cert);
    CHECK(cert->replay());
    for (const auto& f : cert->monomial) CHECK(f == a);
    EntailmentCertificate manual{2, {a, a}, {2}, {-b}, tagged(r({Rational(1, 2), 0}), 0)};
    CHECK(manual.replay());
  }
  SUBCASE("left {a, -a}, right empty") {
    const Element a = r({3, -1, 0});
    const Element left[] = {a, -a};
    const auto cert = cert_entails(left, {}, 3);
    REQUIRE(cert);
    CHECK(cert->replay());
    ConeCertificate p = sum_of_squares(a * a);
    EntailmentCertificate manual{3, {a, -a}, {1, 1}, {}, p};
    CHECK(manual.replay());
  }
  SUBCASE("false entailments have no certificate") {
    const Element left[] = {r({2, 1})}, right[] = {r({1, 0})};
    CHECK_FALSE(cert_entails(left, right, 2));
    const Element pos[] = {r({1, -1})};
    CHECK_FALSE(cert_entails({}, pos, 2));
  }
  CHECK_THROWS_AS(cert_entails({}, {}, 1, CertSearchOptions{0}), InvalidArgument);
}

TEST_CASE("cone generated by negated right generators alone is not enough") {
  // D(a1) ∧ D(a2) = 0 spatially, but no m + p = 0 with p over {-b_j} = {} exists:
  // m is a product of a1, a2 with a positive coordinate, p is a sum of squares.
  const Element a1 = r({-1, 1, -1}), a2 = r({1, -1, -1});
  const Element left[] = {a1, a2};
  CHECK(spatial_entails(left, {}, 3));
  CHECK_FALSE(cert_entails(left, {}, 3, CertSearchOptions{4, ConeGenerators::negated_right_only}));
  const auto cert = cert_entails(left, {}, 3, CertSearchOptions{4, ConeGenerators::left_and_negated_right});
  REQUIRE(cert);
  CHECK(cert->replay());
}

TEST_CASE("certificates are sound on random queries") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::size_t dim = 1 + t % 4;
    std::vector<Element> left, right;
    for (int i = 0; i < t % 3; ++i) left.push_back(random_small(rng, dim));
    for (int i = 0; i < (t / 3) % 3; ++i) right.push_back(random_small(rng, dim));
    std::vector<Clause> clauses;
    for (const auto& b : right) clauses.push_back({b});
    const auto cert = cert_entails(left, right, dim);
    const bool spatial = spatial_entails(left, clauses, dim);
    if (cert) {
      CHECK(cert->replay());
      CHECK(spatial);
    }
    CHECK(spatial == cert.has_value());
  }
}

TEST_CASE("certificates are deterministic") {
  const Element left[] = {r({1, -1, 2})}, right[] = {r({2, -1, 1}), r({-1, 0, 3})};
  const auto c1 = cert_entails(left, right, 3);
  const auto c2 = cert_entails(left, right, 3);
  REQUIRE(c1);
  REQUIRE(c2);
  CHECK(c1->monomial == c2->monomial);
  CHECK(c1->p.terms.size() == c2->p.terms.size());
}

TEST_CASE("DNF entailment through choice functions") {
  std::mt19937_64 rng(33);
  auto random_term = [&](std::size_t dim) {
    std::vector<Clause> clauses;
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int c = 0; c < n; ++c) {
      Clause clause;
      const int m = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int g = 0; g < m; ++g) clause.push_back(random_small(rng, dim));
      clauses.push_back(clause);
    }
    return LatticeTerm::from_clauses(dim, clauses);
  };
  for (int t = 0; t < 300; ++t) {
    const std::size_t dim = 1 + t % 4;
    const LatticeTerm t1 = random_term(dim), t2 = random_term(dim);
    const bool direct = spatial_entails(t1, t2);
    CHECK(direct == spatial_entails_by_choice(t1, t2));
    if (t1.clauses().size() == 1 && t % 5 == 0) {
      const auto certs = cert_entails(t1.clauses().front(), t2);
      CHECK(certs.has_value() == direct);
      if (certs) {
        for (const auto& c : *certs) CHECK(c.cert.replay());
      }
    }
  }
}

TEST_CASE("monotonicity: a <= b implies D(a) <= D(b)") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const Element a = random_small(rng, 3);
    Element b = a;
    for (int k = 0; k < 2; ++k) b = b + Element::diag_real({Rational(t % 2), Rational(t % 3), 0});
    CHECK(spatial_entails(D(a), D(b)));
  }
}

TEST_CASE("d_positive_iff") {
  const auto yes = d_positive_iff(r({1, 2}));
  CHECK(yes.consistent);
  CHECK(yes.spatial);
  CHECK(yes.strict);
  CHECK(yes.cert);
  const auto no = d_positive_iff(r({1, -1}));
  CHECK(no.consistent);
  CHECK_FALSE(no.spatial);
  CHECK_FALSE(no.strict);
  CHECK_FALSE(no.cert);
  const auto unit = d_positive_iff(Element::one(InstanceKind::diag_real, 2));
  CHECK(unit.consistent);
  REQUIRE(unit.cert);
  CHECK(unit.cert->monomial.empty());
  CHECK(unit.cert_degree == 1);
}

TEST_CASE("relation (6) on the dyadic grid") {
  const auto half = interpret_relation6(r({Rational(1, 2), 3}), 3);
  CHECK(half.all_agree);
  REQUIRE(half.covering_level);
  CHECK(*half.covering_level <= 3);
  const auto zero = interpret_relation6(r({0, 1}), 4);
  CHECK(zero.all_agree);
  CHECK_FALSE(positivity_set(zero.grid_join)[0]);
  const auto unit = interpret_relation6(Element::one(InstanceKind::diag_real, 2), 1);
  CHECK(unit.all_agree);
  CHECK(spatial_equal(D(r({Rational(1, 2), Rational(1, 2)})), LatticeTerm::top(2)));
}

TEST_CASE("basic opens") {
  const auto t = mfn_basic_open(r({3, -4}), 0, 5);
  CHECK(t == LatticeTerm::from_clauses(2, {{r({3, -4}), r({2, 9})}}));
  CHECK_THROWS_AS(mfn_basic_open(r({1}), 1, 1), InvalidArgument);
  CHECK_THROWS_AS(mfn_basic_open(r({1}), 2, 1), InvalidArgument);
  CHECK(spatial_equal(mfn_basic_open(Element::zero(InstanceKind::diag_real, 2), -1, 1), LatticeTerm::top(2)));

  const Element z = Element::diag_complex({Gaussian(3, 4)});
  CHECK(complex_open_interpret(z, Rectangle{0, 0, 5, 5}) == LatticeTerm::from_clauses(1, {{r({3}), r({2}), r({4}), r({1})}}));
  const auto real = complex_open_interpret(Element::diag_complex({Gaussian(1)}), Rectangle{0, -1, 2, 3});
  CHECK(real == LatticeTerm::from_clauses(1, {{r({1}), r({1}), r({1}), r({3})}}));
  CHECK(spatial_equal(complex_open_interpret(z, Rectangle{4, 0, 6, 1}), LatticeTerm::bottom(1)));
  CHECK_THROWS_AS(complex_open_interpret(z, Rectangle{1, 0, 1, 2}), InvalidArgument);
}

TEST_CASE("characters and the Gelfand transform") {
  const Element a = Element::diag_complex({Gaussian(1, 2), Gaussian(-3)});
  const Element b = Element::diag_complex({Gaussian(0, 1), Gaussian(2, 2)});
  for (std::size_t i = 0; i < 2; ++i) CHECK(is_homomorphism_on(Character{i}, a, b));

  const auto t = gelfand_transform(r({3, -4}));
  CHECK(t.values == std::vector<Gaussian>{Gaussian(3), Gaussian(-4)});
  CHECK(t.sup.bound(4) == 4);
  const auto u = gelfand_transform(Element::one(InstanceKind::diag_real, 3));
  CHECK(u.sup.bound(0) == 1);
  const auto c = gelfand_transform(Element::diag_complex({Gaussian(3, 4)}));
  for (Precision k = 0; k < 6; ++k) CHECK(c.sup.bound(k) == seminorm(Element::diag_complex({Gaussian(3, 4)})).bound(k));
  CHECK(c.sup.bound(0) == 5);
}

TEST_CASE("lattice term relations") {
  std::mt19937_64 rng(57);
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 1 + t % 5;
    CHECK(check_relations(random_small(rng, dim), random_small(rng, dim)).all());
  }
  CHECK(check_relations(r({1, -2}), r({2, 0})).all());
}
