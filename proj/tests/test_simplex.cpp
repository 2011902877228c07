#include <doctest.h>

#include <random>

#include "cstar/errors.hpp"
#include "cstar/exact_simplex.hpp"

using namespace cstar;

namespace {

bool satisfies(const lp::Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& x) {
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
    if (s != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("feasible systems") {
  const lp::Matrix a{{1, 1, 0}, {0, 1, 1}};
  const std::vector<Rational> b{2, 3};
  const auto x = lp::find_feasible(a, b);
  REQUIRE(x);
  CHECK(satisfies(a, b, *x));
  // Negative right-hand sides are handled by row negation.
  const lp::Matrix n{{-1, 2}};
  const auto y = lp::find_feasible(n, {Rational(-3)});
  REQUIRE(y);
  CHECK(satisfies(n, {Rational(-3)}, *y));
}

TEST_CASE("infeasible systems") {
  CHECK_FALSE(lp::find_feasible({{1, 1}}, {Rational(-1)}));
  CHECK_FALSE(lp::find_feasible({{1, 0}, {1, 0}}, {Rational(1), Rational(2)}));
  CHECK_FALSE(lp::find_feasible({{0, 0}}, {Rational(1)}));
  CHECK(lp::find_feasible({{0, 0}}, {Rational(0)}));
}

TEST_CASE("ragged input is rejected") {
  CHECK_THROWS_AS(lp::find_feasible({{1, 2}, {1}}, {Rational(1), Rational(1)}), InvalidArgument);
  CHECK_THROWS_AS(lp::find_feasible({{1, 2}}, {Rational(1), Rational(1)}), InvalidArgument);
}

TEST_CASE("random systems against a planted solution") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> coef(-3, 3), val(0, 4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + t % 4, cols = 1 + t % 6;
    lp::Matrix a(rows, std::vector<Rational>(cols));
    std::vector<Rational> planted(cols), b(rows);
    for (auto& v : planted) v = val(rng);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        a[i][j] = coef(rng);
        b[i] += a[i][j] * planted[j];
      }
    }
    const auto x = lp::find_feasible(a, b);
    REQUIRE(x);
    CHECK(satisfies(a, b, *x));
  }
}
