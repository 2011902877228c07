#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "cstar/rational.hpp"

namespace cstar {

/// Precision index for upper-real queries.
using Precision = unsigned;

enum class Semi { yes, unknown };

/// A non-negative upper real, given by a non-increasing family of rational
/// upper bounds bound(0) >= bound(1) >= ... . It denotes the open, upward
/// closed set { r : r > bound(k) for some k }.
///
/// The bound function is evaluated on demand; nothing is cached. Callers
/// building their own upper reals must supply a pure, non-increasing function.
class UpperReal {
 public:
  using BoundFn = std::function<Rational(Precision)>;

  explicit UpperReal(BoundFn bound);

  Rational bound(Precision k) const { return (*bound_)(k); }

 private:
  std::shared_ptr<const BoundFn> bound_;
};

/// The upper real { r : r > q }. Throws InvalidArgument if q < 0.
UpperReal from_rational(const Rational& q);

UpperReal add(const UpperReal& u1, const UpperReal& u2);
UpperReal mul(const UpperReal& u1, const UpperReal& u2);

/// Pointwise minimum of the two bound functions. Both describe the same real
/// whenever both are sound, so this only sharpens.
UpperReal min(const UpperReal& u1, const UpperReal& u2);

/// Semi-decides u < r: `yes` iff u.bound(k) < r. `yes` is always sound; a true
/// strict inequality is eventually reported as `yes` for large enough k.
Semi lt_rational(const UpperReal& u, const Rational& r, Precision k);

/// Upper bound b on sqrt(q) with b - sqrt(q) <= 2^-k. Exact when q is a
/// rational square. Otherwise Newton's iteration from (q+1)/2, whose iterates
/// all stay above sqrt(q) and decrease, stopped at the first iterate meeting
/// the tolerance. Throws InvalidArgument if q < 0.
Rational sqrt_upper(const Rational& q, Precision k);

/// Dyadic upper bound on s^(1/2^e) for a non-negative integer s, with relative
/// slack about 2^-(k+8). Verified by repeated squaring rounded downward, so the
/// returned value t always satisfies t^(2^e) >= s.
Rational root_pow2_upper(const Integer& s, unsigned e, Precision k);

}  // namespace cstar
