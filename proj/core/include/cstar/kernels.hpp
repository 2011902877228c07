#pragma once

#include "cstar/algebra.hpp"
#include "cstar/rational.hpp"
#include "cstar/upper_real.hpp"

namespace cstar {

/// Default precision at which kernel preconditions are checked.
inline constexpr Precision kDefaultCheckPrecision = 16;

/// The iterates of the square-root kernel double their bit length at every
/// step (r_n has denominator 2^(2^n - 1)), so exact iteration counts are capped.
inline constexpr unsigned kMaxSqrtIterations = 24;

struct SqrtResult {
  Element root;
  /// ||root^2 - target|| <= certified_error.
  Rational certified_error;
  unsigned iterations = 0;
};

struct InverseResult {
  Element inverse;
  /// ||(1 + a*a) inverse - 1|| <= residual_bound.
  Rational residual_bound;
  Integer n_scale;
  unsigned terms = 0;
};

/// r_0 = 0, r_{m+1} = (1 + r_m^2) / 2.
Rational r_sequence(unsigned n);

/// 2 (r_{n+1} - r_n), which equals (1 - r_n)^2.
Rational sqrt_certificate(unsigned n);

/// Smallest n with 2 (r_{n+1} - r_n) <= eps, found with a downward-rounded
/// dyadic recurrence for r_n (so the answer never understates n). The result
/// may exceed kMaxSqrtIterations; it is informational.
unsigned iterations_for_error(const Rational& eps);

/// ceil(4 / sqrt(eps)), the rule of thumb from r_n ~ 1 - 2/n. Not used for correctness.
unsigned iterations_heuristic(const Rational& eps);

/// Square root of a self-adjoint x with ||1 - x|| <= 1: root = 1 - y_n where
/// y_0 = 0, y_{m+1} = (1 - x + y_m^2) / 2, and ||root^2 - x|| <= 2 (r_{n+1} - r_n).
///
/// The precondition is verified: exactly on diagonal instances (0 <= x_i <= 2),
/// and as ||1 - x||.bound(k_check) < 1 on circulant instances. Throws
/// PreconditionUnverifiable otherwise, InvalidArgument if x is not
/// self-adjoint or n > kMaxSqrtIterations.
SqrtResult sqrt_unit(const Element& x, unsigned n, Precision k_check = kDefaultCheckPrecision);

/// Square root of x + y for squares x, y. Both are scaled by 4^-(t+1), with
/// 4^t >= max(||x||, ||y||, 1), which puts w = (x + y) / 4^(t+1) in the unit
/// region of sqrt_unit; the root is rescaled by the exact factor 2^(t+1).
/// On diagonal instances a negative entry means a non-square and is rejected.
SqrtResult sos_to_square(const Element& x, const Element& y, unsigned n,
                         Precision k_check = kDefaultCheckPrecision);

/// sqrt(a* a). Scales by 2^-t with 4^t >= ||a* a||.bound(k_check); the scaled
/// a*a has norm <= 1, so ||1 - a*a|| <= 1 holds without a numeric check.
SqrtResult absolute_value(const Element& a, unsigned n, Precision k_check = kDefaultCheckPrecision);

struct OneMinusReport {
  bool exact = false;
  bool holds = true;
  /// ||1 - a*a|| exactly (diagonal) or its upper bound at k.
  Rational norm;
};

/// ||a|| <= 1 implies ||1 - a*a|| <= 1. The hypothesis is checked exactly on
/// diagonal instances and as ||a||.bound(k) < 1 otherwise.
OneMinusReport check_oneminus(const Element& a, Precision k);

/// Inverse of 1 + a*a as (1/n) sum_{j<=K} c^j with c = (1 - 1/n) - a*a/n,
/// n = max(2, ceil(1 + ||a*a||.bound(k_check))), K minimal with
/// n (1 - 1/n)^(K+1) <= eps.
InverseResult invert_one_plus(const Element& a, const Rational& eps, Precision k_check = kDefaultCheckPrecision);

}  // namespace cstar
