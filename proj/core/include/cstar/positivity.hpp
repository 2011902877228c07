#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/rational.hpp"
#include "cstar/upper_real.hpp"

namespace cstar {

// Order structure of real diagonal algebras. Everything in this header
// accepts diag_real elements only and throws InvalidArgument otherwise.

/// coefficient * prod(square_factors[i]^2) * prod(generators[generator_factors[j]])
struct ConeTerm {
  Rational coefficient;
  std::vector<Element> square_factors;
  std::vector<std::size_t> generator_factors;
};

/// A formal sum witnessing membership in the cone generated by squares and a
/// list of generators. Coefficients are non-negative.
struct ConeCertificate {
  std::size_t dim = 1;
  std::vector<ConeTerm> terms;

  /// Exact value of the sum. Throws InvalidArgument on an out-of-range
  /// generator index, a negative coefficient, or a mis-sized factor.
  Element evaluate(std::span<const Element> generators = {}) const;
};

/// s > 0 with cert evaluating (over no generators) to a - s.
struct StrictPosWitness {
  Rational s;
  ConeCertificate cert;
};

struct KeyBoundWitness {
  Integer N;
  Integer L;
  unsigned long n_power = 0;
  Rational bound;
};

/// r1^2 + r2^2 + r3^2 + r4^2 = q, exactly. Throws InvalidArgument if q < 0.
std::array<Rational, 4> four_square(const Rational& q);

/// Four-square decomposition of a non-negative integer, found by exhaustive
/// search with the largest first component tried first.
std::array<Integer, 4> four_square_integer(const Integer& n);

/// Min entry > 0. Same decision as strictly_positive, without the certificate.
bool is_strictly_positive(const Element& a);

/// Elementwise >= 0.
bool is_nonnegative(const Element& a);

/// Sum-of-squares certificate for a diagonal element with non-negative
/// entries: a = sum_{i,j} (r_ij e_i)^2 with e_i the coordinate idempotents.
ConeCertificate sum_of_squares(const Element& a);

/// If min a_i > 0: s = min/2 and a - s written as an explicit sum of squares.
std::optional<StrictPosWitness> strictly_positive(const Element& a);

/// Replays a witness: s > 0 and cert evaluates to a - s.
bool verify_witness(const Element& a, const StrictPosWitness& w);

/// From 0 << ac (witness w) and 0 <= c, a rational lower bound s/(2L) for a.
/// Throws InvalidArgument on a failed precondition and
/// InternalVerificationFailure if the final check a - bound >= 0 fails.
KeyBoundWitness lemma_key_bound(const Element& a, const Element& c, const StrictPosWitness& w);

struct Norm0Evidence {
  StrictPosWitness upper;  ///< for r - a
  StrictPosWitness lower;  ///< for r + a
};

/// ||a||_0 < r iff 0 << r - a and 0 << r + a. Throws InvalidArgument if r <= 0.
std::optional<Norm0Evidence> norm0_lt(const Element& a, const Rational& r);

/// bound(k): the smallest r on the grid 2^-k Z, r > 0, with norm0_lt(a, r),
/// found by binary search from the entry bound and confirmed with witnesses.
UpperReal norm0(const Element& a);

}  // namespace cstar
