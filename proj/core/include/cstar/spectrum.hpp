#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/positivity.hpp"
#include "cstar/upper_real.hpp"

namespace cstar {

// The spectrum lattice of a real diagonal algebra R^n, presented by symbols
// D(a). Spatially D(a) is the set of characters i with a_i > 0.

/// A finite meet of generators D(a); sorted, without duplicates.
using Clause = std::vector<Element>;

/// Join of meets (disjunctive normal form) over diag_real generators of one
/// dimension. No clause contains another. TOP is the single empty clause,
/// BOT has no clauses.
class LatticeTerm {
 public:
  static LatticeTerm top(std::size_t dim);
  static LatticeTerm bottom(std::size_t dim);
  static LatticeTerm generator(const Element& a);
  static LatticeTerm from_clauses(std::size_t dim, std::vector<Clause> clauses);

  std::size_t dim() const { return dim_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  bool is_top() const { return clauses_.size() == 1 && clauses_.front().empty(); }
  bool is_bottom() const { return clauses_.empty(); }

  friend bool operator==(const LatticeTerm& a, const LatticeTerm& b) {
    return a.dim_ == b.dim_ && a.clauses_ == b.clauses_;
  }

 private:
  LatticeTerm(std::size_t dim, std::vector<Clause> clauses);

  std::size_t dim_;
  std::vector<Clause> clauses_;
};

/// Pairwise clause unions. Throws InstanceMismatch on differing dimension.
LatticeTerm meet(const LatticeTerm& t1, const LatticeTerm& t2);
/// Clause-set union.
LatticeTerm join(const LatticeTerm& t1, const LatticeTerm& t2);

/// { i : a_i > 0 } as a mask.
std::vector<bool> positivity_set(const Element& a);
std::vector<bool> positivity_set(const Clause& clause, std::size_t dim);
std::vector<bool> positivity_set(const LatticeTerm& t);

/// D(left_1) ∧ ... ≤ ⋁_k ⋀ right_k, decided on characters.
bool spatial_entails(std::span<const Element> left, std::span<const Clause> right, std::size_t dim);
/// t1 ≤ t2 decided on characters, directly from the positivity sets.
bool spatial_entails(const LatticeTerm& t1, const LatticeTerm& t2);
/// t1 ≤ t2 by splitting t1 into clauses and t2 into a meet of joins over all
/// choice functions, each checked as a flat entailment.
bool spatial_entails_by_choice(const LatticeTerm& t1, const LatticeTerm& t2);
bool spatial_equal(const LatticeTerm& t1, const LatticeTerm& t2);

/// Which elements generate the cone in an m + p = 0 search.
enum class ConeGenerators {
  /// -b_j for every right generator and a_i for every left generator.
  left_and_negated_right,
  /// -b_j only.
  negated_right_only,
};

/// Witness that D(a_1) ∧ ... ∧ D(a_n) ≤ D(b_1) ∨ ... ∨ D(b_m):
/// (prod monomial) + p(generators) = 0.
struct EntailmentCertificate {
  std::size_t dim = 1;
  /// Left generators with multiplicity; empty means the unit.
  std::vector<Element> monomial;
  /// Exponent of each left generator in the monomial.
  std::vector<unsigned> exponents;
  /// The cone generators p is expressed over.
  std::vector<Element> generators;
  ConeCertificate p;

  Element monomial_value() const;
  /// Exact check of monomial + p == 0.
  bool replay() const;
};

struct CertSearchOptions {
  unsigned degree = 4;
  ConeGenerators cone = ConeGenerators::left_and_negated_right;
};

/// Searches monomials over `left` in graded-lexicographic order (total degree
/// <= degree) and, for each, whether -m lies in the cone spanned by products
/// of at most `degree` distinct generators with non-negative diagonal
/// coefficients. Each check is an exact LP solved by find_feasible; the
/// coefficients of the first feasible monomial become explicit sums of
/// squares. nullopt means no certificate within the bound, not refutation.
std::optional<EntailmentCertificate> cert_entails(std::span<const Element> left, std::span<const Element> right,
                                                  std::size_t dim, const CertSearchOptions& options = {});

/// One flat certificate per choice function of the right-hand DNF.
struct ChoiceCertificate {
  std::vector<std::size_t> picks;  ///< picks[k] indexes into right clause k
  EntailmentCertificate cert;
};

/// Clause ≤ DNF through choice functions. nullopt if any choice has no
/// certificate within the bound. Vacuously an empty list when some right
/// clause is empty (the right side is TOP).
std::optional<std::vector<ChoiceCertificate>> cert_entails(const Clause& left, const LatticeTerm& right,
                                                           const CertSearchOptions& options = {});

struct DPositiveReport {
  std::optional<StrictPosWitness> strict;
  bool spatial = false;
  std::optional<EntailmentCertificate> cert;
  unsigned cert_degree = 0;  ///< smallest degree with a certificate, when found
  bool consistent = false;
};

/// D(a) = 1 iff 0 << a, checked three ways (cone witness, characters,
/// certificate search up to max_degree).
DPositiveReport d_positive_iff(const Element& a, unsigned max_degree = 4);

struct Relation6Check {
  LatticeTerm rhs;
  bool direct = false;    ///< D(a) ≤ rhs
  bool via_grid = false;  ///< ⋁_{j<=grid} D(a - 2^-j) ≤ rhs
  bool agree = false;
};

struct Relation6Report {
  LatticeTerm grid_join;
  /// Smallest j <= grid with D(a - 2^-j) spatially equal to D(a).
  std::optional<unsigned> covering_level;
  std::vector<Relation6Check> checks;
  bool all_agree = false;
};

/// Compares D(a) with its finite dyadic reinterpretation ⋁_{j<=grid} D(a - 2^-j)
/// against BOT, TOP, D(a), D(-a) and every coordinate open D(e_i).
Relation6Report interpret_relation6(const Element& a, unsigned grid);

/// D(a - r) ∧ D(s - a). Requires r < s and a self-adjoint diagonal.
LatticeTerm mfn_basic_open(const Element& a, const Rational& r, const Rational& s);

struct Rectangle {
  Rational r1, r2, s1, s2;
};

/// a = a1 + i a2 in the open rectangle (r1 + i r2, s1 + i s2), as
/// D(a1 - r1) ∧ D(s1 - a1) ∧ D(a2 - r2) ∧ D(s2 - a2) over the self-adjoint part.
LatticeTerm complex_open_interpret(const Element& a, const Rectangle& rect);

/// A point of the spectrum: evaluation at coordinate index.
struct Character {
  std::size_t index = 0;
  Gaussian operator()(const Element& a) const { return a[index]; }
};

/// phi(a + b) = phi(a) + phi(b), phi(ab) = phi(a) phi(b), phi(1) = 1, phi(a*) = conj phi(a).
bool is_homomorphism_on(const Character& phi, const Element& a, const Element& b);

struct GelfandTable {
  std::vector<Gaussian> values;  ///< values[i] = â(φ_i)
  UpperReal sup;                 ///< sup_i |â(φ_i)|
};

GelfandTable gelfand_transform(const Element& a);

struct RelationsReport {
  bool unit = false;             ///< D(1) = 1
  bool negative_square = false;  ///< D(-a^2) = 0
  bool sum = false;              ///< D(a+b) ≤ D(a) ∨ D(b)
  bool opposite = false;         ///< D(a) ∧ D(-a) = 0
  bool product = false;          ///< D(ab) = (D(a) ∧ D(b)) ∨ (D(-a) ∧ D(-b))
  bool all() const { return unit && negative_square && sum && opposite && product; }
};

/// Defining relations of the lattice, each checked spatially in both directions
/// where it is an equation.
RelationsReport check_relations(const Element& a, const Element& b);

/// Converts a self-adjoint diagonal element (diag_real, or diag_complex with
/// real entries) to diag_real. Throws InvalidArgument otherwise.
Element to_real_diagonal(const Element& a);

}  // namespace cstar
