#include "cstar/upper_real.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cstar/errors.hpp"

namespace cstar {

UpperReal::UpperReal(BoundFn bound) : bound_(std::make_shared<const BoundFn>(std::move(bound))) {}

UpperReal from_rational(const Rational& q) {
  if (q < 0) throw InvalidArgument("upper real from negative rational " + to_string(q));
  return UpperReal([q](Precision) { return q; });
}

UpperReal add(const UpperReal& u1, const UpperReal& u2) {
  return UpperReal([u1, u2](Precision k) -> Rational { return u1.bound(k) + u2.bound(k); });
}

UpperReal mul(const UpperReal& u1, const UpperReal& u2) {
  return UpperReal([u1, u2](Precision k) -> Rational { return u1.bound(k) * u2.bound(k); });
}

UpperReal min(const UpperReal& u1, const UpperReal& u2) {
  return UpperReal([u1, u2](Precision k) -> Rational { return std::min(u1.bound(k), u2.bound(k)); });
}

Semi lt_rational(const UpperReal& u, const Rational& r, Precision k) {
  return u.bound(k) < r ? Semi::yes : Semi::unknown;
}

namespace {

// j with q * 4^j in [1/4, 4). q > 0.
long normalizing_shift(const Rational& q) {
  const long bits_num = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  const long bits_den = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  // q in [2^(bits_num - bits_den - 1), 2^(bits_num - bits_den + 1)).
  long j = -(bits_num - bits_den) / 2;
  Rational scaled = q * pow2(2 * j);
  while (scaled >= 4) {
    scaled /= 4;
    --j;
  }
  while (scaled * 4 < 1) {
    scaled *= 4;
    ++j;
  }
  return j;
}

}  // namespace

Rational sqrt_upper(const Rational& q, Precision k) {
  if (q < 0) throw InvalidArgument("sqrt_upper of negative rational " + to_string(q));
  Rational root;
  if (exact_sqrt(q, root)) return root;

  // sqrt(q) = 2^-j sqrt(q'), q' = q 4^j in [1/4, 4). The Newton sequence on q'
  // does not depend on k, so the stopping iterate only moves later as k grows.
  const long j = normalizing_shift(q);
  const Rational scaled = q * pow2(2 * j);
  const Rational tolerance = pow2(j - static_cast<long>(k));
  Rational b = (scaled + 1) / 2;
  // b - sqrt(q') = (b^2 - q') / (b + sqrt(q')) <= (b^2 - q') / b
  while ((b * b - scaled) / b > tolerance) {
    b = (b + scaled / b) / 2;
  }
  return b * pow2(-j);
}

namespace {

// m * 2^exp, used only for downward-rounded powering.
struct Dyadic {
  Integer mant;
  long exp = 0;
};

void square_round_down(Dyadic& v, std::size_t width) {
  v.mant *= v.mant;
  v.exp *= 2;
  const std::size_t bits = mpz_sizeinbase(v.mant.get_mpz_t(), 2);
  if (bits > width) {
    const std::size_t drop = bits - width;
    mpz_fdiv_q_2exp(v.mant.get_mpz_t(), v.mant.get_mpz_t(), drop);
    v.exp += static_cast<long>(drop);
  }
}

bool at_least(const Dyadic& v, const Integer& s) {
  Integer lhs = v.mant;
  Integer rhs = s;
  if (v.exp >= 0) {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(v.exp));
  } else {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-v.exp));
  }
  return lhs >= rhs;
}

}  // namespace

Rational root_pow2_upper(const Integer& s, unsigned e, Precision k) {
  if (s < 0) throw InvalidArgument("root of negative integer");
  if (s <= 1) return Rational(s);
  if (e == 0) return Rational(s);

  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, s.get_mpz_t());
  // log2(s) / 2^e split into integer and fractional parts.
  const double log2_root = (static_cast<double>(exp2) + std::log2(mantissa)) / std::ldexp(1.0, static_cast<int>(e));
  const double int_part = std::floor(log2_root);
  const double frac_part = log2_root - int_part;

  const long frac_bits = static_cast<long>(k) + 12;
  const double slack = std::max(std::ldexp(1.0, -static_cast<int>(k) - 8), std::ldexp(1.0, -45));
  const double scaled = std::exp2(frac_part) * (1.0 + slack) * std::ldexp(1.0, static_cast<int>(std::min<long>(frac_bits, 60)));
  Integer mant;
  mpz_set_d(mant.get_mpz_t(), std::ceil(scaled));
  if (frac_bits > 60) mpz_mul_2exp(mant.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(frac_bits - 60));
  const long exponent = static_cast<long>(int_part) - frac_bits;

  while (true) {
    Dyadic v{mant, exponent};
    const std::size_t width = mpz_sizeinbase(mant.get_mpz_t(), 2) + 64;
    for (unsigned i = 0; i < e; ++i) square_round_down(v, width);
    if (at_least(v, s)) break;
    Integer bump = mant;
    mpz_fdiv_q_2exp(bump.get_mpz_t(), bump.get_mpz_t(), 40);
    mant += bump + 1;
  }
  return Rational(mant) * pow2(exponent);
}

}  // namespace cstar
