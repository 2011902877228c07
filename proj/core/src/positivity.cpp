#include "cstar/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "cstar/errors.hpp"

namespace cstar {

namespace {

void require_diag_real(const Element& a, const char* where) {
  if (a.kind() != InstanceKind::diag_real) {
    throw InvalidArgument(std::string(where) + " requires a diag_real element, got " +
                          std::string(instance_name(a.kind())));
  }
}

Element idempotent(std::size_t dim, std::size_t i) {
  std::vector<Rational> e(dim);
  e[i] = 1;
  return Element::diag_real(std::move(e));
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

Element ConeCertificate::evaluate(std::span<const Element> generators) const {
  Element total = Element::zero(InstanceKind::diag_real, dim);
  for (const auto& term : terms) {
    if (term.coefficient < 0) throw InvalidArgument("cone certificate with negative coefficient");
    Element product = Element::constant(InstanceKind::diag_real, dim, Gaussian(term.coefficient));
    for (const auto& f : term.square_factors) {
      if (f.kind() != InstanceKind::diag_real || f.dim() != dim) {
        throw InvalidArgument("cone certificate factor has the wrong shape");
      }
      product = product * f.squared();
    }
    for (std::size_t g : term.generator_factors) {
      if (g >= generators.size()) throw InvalidArgument("cone certificate generator index out of range");
      product = product * generators[g];
    }
    total = total + product;
  }
  return total;
}

namespace {

// n = 4^k (8m + 7) is exactly the set of integers that are not sums of three squares.
template <typename T>
bool three_square_obstructed(T n) {
  if (n == 0) return false;
  while (n % 4 == 0) n /= 4;
  return n % 8 == 7;
}

template <typename T>
T root_floor(const T& n);

template <>
unsigned long long root_floor(const unsigned long long& n) {
  auto r = static_cast<unsigned long long>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Search a >= b >= c >= d; each loop stops once the remaining components can
// no longer reach the rest, and values of a leaving a non-three-square
// remainder are skipped.
template <typename T>
std::optional<std::array<T, 4>> search_four_square(const T& n) {
  for (T a = root_floor(n);; --a) {
    if (T(4) * a * a < n) break;
    const T rest_a = n - a * a;
    if (!three_square_obstructed(rest_a)) {
      for (T b = std::min(a, root_floor(rest_a));; --b) {
        if (T(3) * b * b < rest_a) break;
        const T rest_b = rest_a - b * b;
        for (T c = std::min(b, root_floor(rest_b));; --c) {
          if (T(2) * c * c < rest_b) break;
          const T rest_c = rest_b - c * c;
          const T d = root_floor(rest_c);
          if (d * d == rest_c) return std::array<T, 4>{a, b, c, d};
          if (c == 0) break;
        }
        if (b == 0) break;
      }
    }
    if (a == 0) break;
  }
  return std::nullopt;
}

}  // namespace

namespace {

// x^2 + y^2 = p for a prime p = 1 mod 4: a square root r of -1 from the first
// c = 2, 3, ... with c^((p-1)/4)^2 = -1, then Euclid on (p, r) down to sqrt(p).
std::optional<std::array<Integer, 2>> two_square_prime(const Integer& p) {
  const Integer e = (p - 1) / 4;
  Integer r;
  bool found = false;
  for (Integer c = 2; c < p && c < 1000; ++c) {
    mpz_powm(r.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if ((r * r + 1) % p == 0) {
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;
  Integer a = p, b = r;
  while (b * b > p) {
    const Integer t = a % b;
    a = b;
    b = t;
  }
  const Integer rest = p - b * b;
  if (!mpz_perfect_square_p(rest.get_mpz_t())) return std::nullopt;
  const Integer y = isqrt(rest);
  return std::array<Integer, 2>{std::max(b, y), std::min(b, y)};
}

// n = a^2 + b^2 + t with a, b descending from the top and t = 0, a square, or a
// prime = 1 mod 4. Deterministic; the result is checked by the caller.
std::optional<std::array<Integer, 4>> search_with_primes(const Integer& n) {
  for (Integer a = isqrt(n); a >= 0; --a) {
    const Integer rest_a = n - a * a;
    if (three_square_obstructed(rest_a)) continue;
    int tries = 0;
    for (Integer b = isqrt(rest_a); b >= 0 && tries < 4096; --b, ++tries) {
      const Integer t = rest_a - b * b;
      if (mpz_perfect_square_p(t.get_mpz_t())) return std::array<Integer, 4>{a, b, isqrt(t), 0};
      if (t % 4 != 1 || mpz_probab_prime_p(t.get_mpz_t(), 30) == 0) continue;
      if (const auto cd = two_square_prime(t)) return std::array<Integer, 4>{a, b, (*cd)[0], (*cd)[1]};
    }
  }
  return std::nullopt;
}

constexpr unsigned kExhaustiveBits = 32;

}  // namespace

std::array<Integer, 4> four_square_integer(const Integer& n) {
  if (n < 0) throw InvalidArgument("four_square of a negative integer");
  if (n == 0) return {0, 0, 0, 0};
  // Factors of 4 come out as a factor of 2 on every component.
  Integer m = n;
  unsigned long halvings = 0;
  while (m % 4 == 0) {
    m /= 4;
    ++halvings;
  }
  std::optional<std::array<Integer, 4>> found;
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= kExhaustiveBits) {
    if (const auto small = search_four_square<unsigned long long>(mpz_get_ui(m.get_mpz_t()))) {
      std::array<Integer, 4> out;
      for (std::size_t i = 0; i < 4; ++i) out[i] = Integer(static_cast<unsigned long>((*small)[i]));
      found = out;
    }
  } else {
    found = search_with_primes(m);
  }
  if (found) {
    for (auto& x : *found) mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), halvings);
    std::sort(found->begin(), found->end(), std::greater<>());
  }
  if (!found) throw InternalVerificationFailure("no four-square decomposition found for " + n.get_str());
  const auto& r = *found;
  if (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3] != n) {
    throw InternalVerificationFailure("four-square decomposition does not sum to " + n.get_str());
  }
  return r;
}

std::array<Rational, 4> four_square(const Rational& q) {
  if (q < 0) throw InvalidArgument("four_square of negative rational " + to_string(q));
  // q = p/d = (p d) / d^2
  const Integer& d = q.get_den();
  const auto ints = four_square_integer(q.get_num() * d);
  std::array<Rational, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = Rational(ints[i], d);
  for (auto& r : out) r.canonicalize();
  return out;
}

bool is_strictly_positive(const Element& a) {
  require_diag_real(a, "is_strictly_positive");
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Gaussian& g) { return g.re > 0; });
}

bool is_nonnegative(const Element& a) {
  require_diag_real(a, "is_nonnegative");
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Gaussian& g) { return g.re >= 0; });
}

ConeCertificate sum_of_squares(const Element& a) {
  require_diag_real(a, "sum_of_squares");
  ConeCertificate cert;
  cert.dim = a.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i].re < 0) throw InvalidArgument("sum_of_squares of an element with a negative entry");
    if (a[i].re == 0) continue;
    const Element e = idempotent(a.dim(), i);
    for (const auto& r : four_square(a[i].re)) {
      if (r == 0) continue;
      cert.terms.push_back(ConeTerm{Rational(1), {e.scaled(r)}, {}});
    }
  }
  return cert;
}

std::optional<StrictPosWitness> strictly_positive(const Element& a) {
  require_diag_real(a, "strictly_positive");
  if (!is_strictly_positive(a)) return std::nullopt;
  Rational m = a[0].re;
  for (const auto& e : a.entries()) m = std::min(m, e.re);
  const Rational s = m / 2;
  const Element shifted = a - Element::constant(InstanceKind::diag_real, a.dim(), Gaussian(s));
  return StrictPosWitness{s, sum_of_squares(shifted)};
}

bool verify_witness(const Element& a, const StrictPosWitness& w) {
  if (a.kind() != InstanceKind::diag_real || w.s <= 0 || w.cert.dim != a.dim()) return false;
  const Element expected = a - Element::constant(InstanceKind::diag_real, a.dim(), Gaussian(w.s));
  return w.cert.evaluate() == expected;
}

namespace {

// (1 - 1/M)^n <= 1/(2M)  <=>  2M (M-1)^n <= M^n
bool power_small_enough(const Integer& m, unsigned long n) {
  Integer lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), Integer(m - 1).get_mpz_t(), n);
  lhs *= 2 * m;
  mpz_pow_ui(rhs.get_mpz_t(), m.get_mpz_t(), n);
  return lhs <= rhs;
}

unsigned long minimal_power(const Integer& m) {
  const double md = m.get_d();
  double estimate = md <= 1 ? 1.0 : std::log(2.0 * md) / -std::log1p(-1.0 / md);
  unsigned long n = estimate > 1 ? static_cast<unsigned long>(estimate) : 1;
  while (!power_small_enough(m, n)) ++n;
  while (n > 1 && power_small_enough(m, n - 1)) --n;
  return n;
}

}  // namespace

KeyBoundWitness lemma_key_bound(const Element& a, const Element& c, const StrictPosWitness& w) {
  require_diag_real(a, "lemma_key_bound");
  require_diag_real(c, "lemma_key_bound");
  require_compatible(a, c);
  if (!is_nonnegative(c)) throw InvalidArgument("lemma_key_bound: c must be elementwise >= 0");
  if (!verify_witness(a * c, w)) throw InvalidArgument("lemma_key_bound: witness does not certify 0 << ac");

  // Work at level 1: a' = a/s gives 1 <= a'c.
  const Element scaled = a.scaled(Rational(1 / w.s));
  Rational a_max = 0;
  Rational c_max = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    a_max = std::max(a_max, abs(scaled[i].re));
    c_max = std::max(c_max, c[i].re);
  }
  KeyBoundWitness out;
  out.N = std::max(Integer(1), ceil(a_max));  // -N <= a' <= N
  out.L = std::max(Integer(1), ceil(c_max));  // c <= L
  const Integer m = out.N * out.L;

  // 1/N <= c, and b = 1 - c/L lies in [0, 1 - 1/(NL)].
  const Rational inv_n(Integer(1), out.N);
  const Rational b_max = 1 - Rational(Integer(1), m);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Rational b = 1 - c[i].re / Rational(out.L);
    if (c[i].re < inv_n || b < 0 || b > b_max) {
      throw InternalVerificationFailure("lemma_key_bound: intermediate bound failed at coordinate " +
                                        std::to_string(i));
    }
  }
  out.n_power = minimal_power(m);
  // 1/(2L) <= a' at level 1, i.e. s/(2L) <= a.
  out.bound = w.s / (2 * Rational(out.L));
  const Element rest = a - Element::constant(InstanceKind::diag_real, a.dim(), Gaussian(out.bound));
  if (!is_nonnegative(rest)) throw InternalVerificationFailure("lemma_key_bound: a - bound is not >= 0");
  return out;
}

std::optional<Norm0Evidence> norm0_lt(const Element& a, const Rational& r) {
  require_diag_real(a, "norm0_lt");
  if (r <= 0) throw InvalidArgument("norm0_lt requires r > 0, got " + to_string(r));
  const Element rc = Element::constant(InstanceKind::diag_real, a.dim(), Gaussian(r));
  auto upper = strictly_positive(rc - a);
  if (!upper) return std::nullopt;
  auto lower = strictly_positive(rc + a);
  if (!lower) return std::nullopt;
  return Norm0Evidence{std::move(*upper), std::move(*lower)};
}

UpperReal norm0(const Element& a) {
  require_diag_real(a, "norm0");
  Rational m = 0;
  for (const auto& e : a.entries()) m = std::max(m, abs(e.re));
  return UpperReal([a, m](Precision k) -> Rational {
    const Rational step = pow2(-static_cast<long>(k));
    auto below = [&](const Integer& j) {
      const Element rc = Element::constant(InstanceKind::diag_real, a.dim(), Gaussian(Rational(j) * step));
      return is_strictly_positive(rc - a) && is_strictly_positive(rc + a);
    };
    // Smallest grid point above every |a_i| is floor(m/step) + 1.
    Integer lo = 1;
    Integer hi;
    const Rational top = m / step;
    mpz_fdiv_q(hi.get_mpz_t(), top.get_num_mpz_t(), top.get_den_mpz_t());
    hi += 1;
    while (lo < hi) {
      const Integer mid = (lo + hi) / 2;
      if (below(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const Rational r = Rational(hi) * step;
    if (!norm0_lt(a, r)) throw InternalVerificationFailure("norm0: grid point failed certification");
    return r;
  });
}

}  // namespace cstar
