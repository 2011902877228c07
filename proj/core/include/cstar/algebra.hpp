#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cstar/rational.hpp"
#include "cstar/upper_real.hpp"

namespace cstar {

struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian conj() const { return {re, -im}; }
  /// re^2 + im^2
  Rational norm2() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b);
};

Gaussian square(const Gaussian& a);

enum class InstanceKind { diag_real, diag_complex, circulant };

std::string_view instance_name(InstanceKind kind);

/// An element of one of the concrete commutative *-algebras:
///  - diag_real:    R^n with pointwise operations, trivial involution
///  - diag_complex: C^n with pointwise operations, conjugation
///  - circulant:    n x n complex circulant matrices, stored by first row
///                  (row 0 of the matrix), product = cyclic convolution,
///                  involution = conjugate transpose.
/// Entries are Gaussian rationals throughout; diag_real entries have im == 0.
class Element {
 public:
  static Element diag_real(std::vector<Rational> entries);
  static Element diag_complex(std::vector<Gaussian> entries);
  static Element circulant(std::vector<Gaussian> first_row);
  /// Generic constructor; validates dimension >= 1 and real entries for diag_real.
  static Element make(InstanceKind kind, std::vector<Gaussian> entries);

  static Element zero(InstanceKind kind, std::size_t dim);
  static Element one(InstanceKind kind, std::size_t dim);
  /// Constant q * 1.
  static Element constant(InstanceKind kind, std::size_t dim, const Gaussian& q);

  InstanceKind kind() const { return kind_; }
  std::size_t dim() const { return entries_.size(); }
  bool is_diagonal() const { return kind_ != InstanceKind::circulant; }
  std::span<const Gaussian> entries() const { return entries_; }
  const Gaussian& operator[](std::size_t i) const { return entries_[i]; }

  /// Real parts of the entries. Only meaningful when every entry is real.
  std::vector<Rational> real_entries() const;

  Element star() const;
  bool is_self_adjoint() const { return star() == *this; }
  bool is_zero() const;

  Element scaled(const Gaussian& q) const;
  Element scaled(const Rational& q) const;
  Element squared() const;
  /// Same entries, reinterpreted in another kind of the same dimension.
  /// Fails when entries are not real and the target is diag_real.
  Element as_kind(InstanceKind kind) const;

  friend bool operator==(const Element& a, const Element& b) {
    return a.kind_ == b.kind_ && a.entries_ == b.entries_;
  }
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  friend Element operator*(const Element& a, const Element& b);

  /// Total order (kind, dimension, lexicographic entries) used for canonical sets.
  friend bool operator<(const Element& a, const Element& b);

 private:
  Element(InstanceKind kind, std::vector<Gaussian> entries) : kind_(kind), entries_(std::move(entries)) {}

  InstanceKind kind_;
  std::vector<Gaussian> entries_;
};

/// Throws InstanceMismatch unless a and b have the same kind and dimension.
void require_compatible(const Element& a, const Element& b);

/// The C*-norm as an upper real.
///  - diag_real:    constant max |a_i|
///  - diag_complex: sqrt_upper(max |a_i|^2, k)
///  - circulant:    running minimum over j <= k of an upper bound on
///                  ||(a a*)^(2^j)||_F^(1/2^(j+1)), F the matrix Frobenius norm.
UpperReal seminorm(const Element& a);

/// Maximum entry modulus squared. Exact sup-norm squared on diagonal instances.
Rational max_modulus2(const Element& a);

struct SelfAdjointParts {
  Element real;
  Element imag;
};

/// a = real + i * imag with both parts self-adjoint. Requires a complex instance.
SelfAdjointParts sa_decompose(const Element& a);

/// Outcome of comparing ||a^2|| with ||a^2 + b^2|| for self-adjoint a, b.
struct SquareBoundReport {
  bool exact = false;  ///< both sides compared exactly (diagonal instances)
  bool holds = true;   ///< no counterexample found
  Rational lhs;        ///< ||a^2|| (exact) or its bound at k
  Rational rhs;        ///< ||a^2 + b^2|| (exact) or its bound at k
};

/// On diagonal instances: max a_i^2 <= max (a_i^2 + b_i^2), exactly. On
/// circulant instances both norms are only known from above, so no finite
/// evidence can contradict the inequality; bounds at k are reported.
SquareBoundReport check_selfadjoint_square_bound(const Element& a, const Element& b, Precision k);

}  // namespace cstar
