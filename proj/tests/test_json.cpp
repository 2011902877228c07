#include <doctest.h>

#include "cstar/errors.hpp"
#include "cstar/json_io.hpp"

using namespace cstar;
using io::json;

TEST_CASE("element round trip") {
  const Element a = Element::diag_real({3, Rational(-4, 7)});
  const json j = io::to_json(a);
  CHECK(j.dump() == R"({"dim":2,"entries":["3/1","-4/7"],"instance":"diag_real"})");
  CHECK(io::element_from_json(j) == a);
  const Element c = Element::circulant({Gaussian(1, 2), Gaussian(0, Rational(-1, 3))});
  CHECK(io::element_from_json(io::to_json(c)) == c);
  const Element z = Element::diag_complex({Gaussian(3, 4)});
  CHECK(io::element_from_json(json::parse(io::to_json(z).dump())) == z);
}

TEST_CASE("schema errors") {
  auto bad = [](const char* text) { CHECK_THROWS_AS(io::element_from_json(json::parse(text)), SchemaError); };
  bad(R"({"instance":"diag_real","dim":2,"entries":["1/1"]})");
  bad(R"({"instance":"matrix","dim":1,"entries":["1/1"]})");
  bad(R"({"instance":"diag_real","dim":0,"entries":[]})");
  bad(R"({"instance":"diag_real","dim":1,"entries":[1]})");
  bad(R"({"instance":"diag_real","dim":1,"entries":["1/0"]})");
  bad(R"({"instance":"diag_complex","dim":1,"entries":[{"re":"1/1"}]})");
  bad(R"({"dim":1,"entries":["1/1"]})");
  bad(R"([1,2])");
  CHECK_THROWS_AS(io::element_from_json(json::parse(R"({"instance":"diag_real","dim":1,"entries":[{"re":"1/1","im":"1/1"}]})")),
                  SchemaError);
}

TEST_CASE("entailment queries") {
  const json q = json::parse(R"({"left":[],"right":[[{"instance":"diag_real","dim":2,"entries":["1/1","2/1"]}]],"degree":3})");
  const auto query = io::entail_query_from_json(q);
  CHECK(query.dim == 2);
  CHECK(query.left.empty());
  CHECK(query.right.size() == 1);
  CHECK(query.degree == 3);
  CHECK(query.has_degree);

  const json complex_sa = json::parse(
      R"({"left":[{"instance":"diag_complex","dim":1,"entries":[{"re":"1/1","im":"0/1"}]}],"right":[]})");
  CHECK(io::entail_query_from_json(complex_sa).left.front().kind() == InstanceKind::diag_real);

  CHECK_THROWS_AS(io::entail_query_from_json(json::parse(R"({"left":[],"right":[]})")), SchemaError);
  CHECK(io::entail_query_from_json(json::parse(R"({"left":[],"right":[],"dim":3})")).dim == 3);
  CHECK_THROWS_AS(io::entail_query_from_json(json::parse(
                      R"({"left":[{"instance":"diag_complex","dim":1,"entries":[{"re":"1/1","im":"1/1"}]}],"right":[]})")),
                  SchemaError);
  CHECK_THROWS_AS(io::entail_query_from_json(json::parse(
                      R"({"left":[{"instance":"diag_real","dim":1,"entries":["1/1"]},{"instance":"diag_real","dim":2,"entries":["1/1","1/1"]}],"right":[]})")),
                  SchemaError);
  CHECK_THROWS_AS(io::entail_query_from_json(json::parse(R"({"left":[],"right":[],"dim":1,"degree":0})")), SchemaError);
}

TEST_CASE("result serialization") {
  const SqrtResult r{Element::one(InstanceKind::diag_real, 1), Rational(1, 4), 3};
  CHECK(io::to_json(r).dump() ==
        R"({"certified_error":"1/4","iterations":3,"root":{"dim":1,"entries":["1/1"],"instance":"diag_real"}})");
  CHECK(io::integer_to_json(Integer(5)) == json(5));
  CHECK(io::integer_to_json(Integer(1) << 70) == json("1180591620717411303424"));
  const KeyBoundWitness k{3, 1, 5, Rational(1, 2)};
  CHECK(io::to_json(k).dump() == R"({"L":1,"N":3,"bound":"1/2","n_power":5})");
}
