#include "cstar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cstar/errors.hpp"

namespace cstar {

Rational r_sequence(unsigned n) {
  Rational r = 0;
  for (unsigned m = 0; m < n; ++m) r = (1 + r * r) / 2;
  return r;
}

Rational sqrt_certificate(unsigned n) {
  const Rational r = r_sequence(n);
  const Rational next = (1 + r * r) / 2;
  return 2 * (next - r);
}

unsigned iterations_for_error(const Rational& eps) {
  if (eps <= 0) throw InvalidArgument("iterations_for_error requires eps > 0");
  constexpr unsigned kFracBits = 96;
  constexpr unsigned kLimit = 1u << 26;
  Integer one = 1;
  mpz_mul_2exp(one.get_mpz_t(), one.get_mpz_t(), kFracBits);
  const Rational scale = pow2(-static_cast<long>(kFracBits));
  Integer r = 0;  // lower bound on r_n, in units of 2^-kFracBits
  for (unsigned n = 0; n <= kLimit; ++n) {
    const Rational gap = Rational(one - r) * scale;
    if (gap * gap <= eps) return n;
    // r <- floor((1 + r^2) / 2), which stays below the exact r_{n+1}.
    Integer sq = r * r;
    mpz_fdiv_q_2exp(sq.get_mpz_t(), sq.get_mpz_t(), kFracBits);
    r = one + sq;
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), 1);
  }
  throw InvalidArgument("eps too small for iterations_for_error: " + to_string(eps));
}

unsigned iterations_heuristic(const Rational& eps) {
  if (eps <= 0) throw InvalidArgument("iterations_heuristic requires eps > 0");
  return static_cast<unsigned>(std::ceil(4.0 / std::sqrt(eps.get_d())));
}

namespace {

void require_iterations(unsigned n) {
  if (n > kMaxSqrtIterations) {
    throw InvalidArgument("iteration count " + std::to_string(n) + " exceeds the exact-arithmetic cap " +
                          std::to_string(kMaxSqrtIterations));
  }
}

// The square-root iteration without precondition checks.
SqrtResult iterate_root(const Element& x, unsigned n) {
  const Element one = Element::one(x.kind(), x.dim());
  const Element one_minus_x = one - x;
  const Rational half(1, 2);
  Element y = Element::zero(x.kind(), x.dim());
  for (unsigned m = 0; m < n; ++m) y = (one_minus_x + y.squared()).scaled(half);
  return SqrtResult{one - y, sqrt_certificate(n), n};
}

void verify_unit_precondition(const Element& x, Precision k_check) {
  if (!x.is_self_adjoint()) throw InvalidArgument("square root requires a self-adjoint element");
  if (x.is_diagonal()) {
    for (const auto& e : x.entries()) {
      if (e.re < 0 || e.re > 2) {
        throw PreconditionUnverifiable("||1 - x|| <= 1 fails: entry " + to_string(e.re) + " outside [0, 2]");
      }
    }
    return;
  }
  const Element one = Element::one(x.kind(), x.dim());
  if (lt_rational(seminorm(one - x), Rational(1), k_check) != Semi::yes) {
    throw PreconditionUnverifiable("||1 - x|| < 1 not confirmed at precision " + std::to_string(k_check));
  }
}

// Smallest t >= 0 with 4^t >= bound.
unsigned four_power_exponent(const Rational& bound) {
  unsigned t = 0;
  Rational p = 1;
  while (p < bound) {
    p *= 4;
    ++t;
  }
  return t;
}

SqrtResult rescale(SqrtResult r, unsigned t) {
  r.root = r.root.scaled(pow2(static_cast<long>(t)));
  r.certified_error *= pow2(2 * static_cast<long>(t));
  return r;
}

}  // namespace

SqrtResult sqrt_unit(const Element& x, unsigned n, Precision k_check) {
  require_iterations(n);
  verify_unit_precondition(x, k_check);
  return iterate_root(x, n);
}

SqrtResult sos_to_square(const Element& x, const Element& y, unsigned n, Precision k_check) {
  require_compatible(x, y);
  require_iterations(n);
  if (!x.is_self_adjoint() || !y.is_self_adjoint()) {
    throw InvalidArgument("sos_to_square requires self-adjoint elements");
  }
  if (x.is_diagonal()) {
    for (const Element* e : {&x, &y}) {
      for (const auto& v : e->entries()) {
        if (v.re < 0) throw InvalidArgument("sos_to_square: negative entry " + to_string(v.re) + " is not a square");
      }
    }
  }
  const Rational bound = std::max({seminorm(x).bound(k_check), seminorm(y).bound(k_check), Rational(1)});
  const unsigned t = four_power_exponent(bound);
  // ||1 - (x'+y')/2|| <= 1 for the 4^-t scaled squares, and halving once more
  // keeps it there: 1 - z/2 = (1 + (1 - z)) / 2.
  const Element w = (x + y).scaled(pow2(-2 * static_cast<long>(t + 1)));
  return rescale(sqrt_unit(w, n, k_check), t + 1);
}

SqrtResult absolute_value(const Element& a, unsigned n, Precision k_check) {
  require_iterations(n);
  const Element h = a.star() * a;
  const unsigned t = four_power_exponent(seminorm(h).bound(k_check));
  const Element w = h.scaled(pow2(-2 * static_cast<long>(t)));
  // w = b* b with ||b|| <= 1, so ||1 - w|| <= 1.
  return rescale(iterate_root(w, n), t);
}

OneMinusReport check_oneminus(const Element& a, Precision k) {
  const Element one = Element::one(a.kind(), a.dim());
  const Element d = one - a.star() * a;
  OneMinusReport report;
  if (a.is_diagonal()) {
    if (max_modulus2(a) > 1) throw PreconditionUnverifiable("||a|| <= 1 fails");
    report.exact = true;
    report.norm = 0;
    for (const auto& e : d.entries()) {
      // Entries of a*a are |a_i|^2 in [0, 1], so 1 - |a_i|^2 is real in [0, 1].
      if (!e.is_real() || e.re < 0 || e.re > 1) report.holds = false;
      report.norm = std::max(report.norm, abs(e.re));
    }
    report.holds = report.holds && report.norm <= 1;
    return report;
  }
  if (lt_rational(seminorm(a), Rational(1), k) != Semi::yes) {
    throw PreconditionUnverifiable("||a|| < 1 not confirmed at precision " + std::to_string(k));
  }
  report.norm = seminorm(d).bound(k);
  return report;
}

namespace {

// n (1 - 1/n)^(K+1) <= eps  <=>  n (n-1)^(K+1) <= eps n^(K+1)
bool tail_small_enough(const Integer& n, unsigned terms_minus_one, const Rational& eps) {
  const unsigned e = terms_minus_one + 1;
  Integer lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), Integer(n - 1).get_mpz_t(), e);
  lhs *= n;
  mpz_pow_ui(rhs.get_mpz_t(), n.get_mpz_t(), e);
  return Rational(lhs) <= eps * Rational(rhs);
}

}  // namespace

InverseResult invert_one_plus(const Element& a, const Rational& eps, Precision k_check) {
  if (eps <= 0) throw InvalidArgument("invert_one_plus requires eps > 0, got " + to_string(eps));
  const Element one = Element::one(a.kind(), a.dim());
  const Element h = a.star() * a;
  if (h.is_zero()) return InverseResult{one, Rational(0), Integer(2), 0};

  const Integer n = std::max(Integer(2), ceil(1 + seminorm(h).bound(k_check)));
  const Rational inv_n(Integer(1), n);
  const Element c = one.scaled(Rational(1 - inv_n)) - h.scaled(inv_n);
  if (c.is_zero()) return InverseResult{one.scaled(inv_n), Rational(0), n, 1};

  // Estimate K from logs, then settle it exactly.
  const double nd = n.get_d();
  const double estimate = std::log(nd / eps.get_d()) / -std::log1p(-1.0 / nd) - 1.0;
  unsigned k_terms = std::isfinite(estimate) && estimate > 0 ? static_cast<unsigned>(estimate) : 0;
  while (!tail_small_enough(n, k_terms, eps)) ++k_terms;
  while (k_terms > 0 && tail_small_enough(n, k_terms - 1, eps)) --k_terms;

  Element sum = one;
  for (unsigned j = 0; j < k_terms; ++j) sum = one + c * sum;
  Rational residual = Rational(n) * pow(Rational(1 - inv_n), k_terms + 1);
  return InverseResult{sum.scaled(inv_n), residual, n, k_terms + 1};
}

}  // namespace cstar
