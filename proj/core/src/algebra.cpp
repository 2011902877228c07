#include "cstar/algebra.hpp"

#include <algorithm>

#include "cstar/errors.hpp"

namespace cstar {

Gaussian operator*(const Gaussian& a, const Gaussian& b) {
  if (&a == &b) return square(a);
  if (a.im == 0 && b.im == 0) return Gaussian(a.re * b.re);
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Gaussian square(const Gaussian& a) {
  if (a.im == 0) return Gaussian(a.re * a.re);
  return {a.re * a.re - a.im * a.im, 2 * a.re * a.im};
}

std::string_view instance_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::diag_real:
      return "diag_real";
    case InstanceKind::diag_complex:
      return "diag_complex";
    case InstanceKind::circulant:
      return "circulant";
  }
  return "?";
}

Element Element::make(InstanceKind kind, std::vector<Gaussian> entries) {
  if (entries.empty()) throw InvalidArgument("element dimension must be >= 1");
  for (auto& e : entries) {
    e.re.canonicalize();
    e.im.canonicalize();
  }
  if (kind == InstanceKind::diag_real) {
    for (const auto& e : entries) {
      if (!e.is_real()) throw InvalidArgument("diag_real element with non-real entry");
    }
  }
  return Element(kind, std::move(entries));
}

Element Element::diag_real(std::vector<Rational> entries) {
  std::vector<Gaussian> g;
  g.reserve(entries.size());
  for (auto& e : entries) g.emplace_back(std::move(e));
  return make(InstanceKind::diag_real, std::move(g));
}

Element Element::diag_complex(std::vector<Gaussian> entries) {
  return make(InstanceKind::diag_complex, std::move(entries));
}

Element Element::circulant(std::vector<Gaussian> first_row) {
  return make(InstanceKind::circulant, std::move(first_row));
}

Element Element::zero(InstanceKind kind, std::size_t dim) {
  return make(kind, std::vector<Gaussian>(dim));
}

Element Element::one(InstanceKind kind, std::size_t dim) { return constant(kind, dim, Gaussian(Rational(1))); }

Element Element::constant(InstanceKind kind, std::size_t dim, const Gaussian& q) {
  if (kind == InstanceKind::circulant) {
    std::vector<Gaussian> row(dim);
    if (dim > 0) row[0] = q;
    return make(kind, std::move(row));
  }
  return make(kind, std::vector<Gaussian>(dim, q));
}

std::vector<Rational> Element::real_entries() const {
  std::vector<Rational> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.re);
  return out;
}

Element Element::star() const {
  std::vector<Gaussian> out(entries_.size());
  const std::size_t n = entries_.size();
  if (kind_ == InstanceKind::circulant) {
    for (std::size_t k = 0; k < n; ++k) out[k] = entries_[(n - k) % n].conj();
  } else {
    for (std::size_t k = 0; k < n; ++k) out[k] = entries_[k].conj();
  }
  return Element(kind_, std::move(out));
}

bool Element::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Gaussian& g) { return g.is_zero(); });
}

Element Element::scaled(const Gaussian& q) const {
  if (kind_ == InstanceKind::diag_real && !q.is_real()) {
    throw InvalidArgument("non-real scalar applied to diag_real element");
  }
  std::vector<Gaussian> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e * q);
  return Element(kind_, std::move(out));
}

Element Element::scaled(const Rational& q) const {
  std::vector<Gaussian> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.re * q, e.im * q});
  return Element(kind_, std::move(out));
}

Element Element::squared() const {
  if (kind_ != InstanceKind::circulant) {
    std::vector<Gaussian> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(square(e));
    return Element(kind_, std::move(out));
  }
  return *this * *this;
}

Element Element::as_kind(InstanceKind kind) const { return make(kind, entries_); }

void require_compatible(const Element& a, const Element& b) {
  if (a.kind() != b.kind()) {
    throw InstanceMismatch("instance mismatch: " + std::string(instance_name(a.kind())) + " vs " +
                           std::string(instance_name(b.kind())));
  }
  if (a.dim() != b.dim()) {
    throw InstanceMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

Element operator+(const Element& a, const Element& b) {
  require_compatible(a, b);
  std::vector<Gaussian> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.entries_[i] + b.entries_[i]);
  return Element(a.kind_, std::move(out));
}

Element operator-(const Element& a, const Element& b) {
  require_compatible(a, b);
  std::vector<Gaussian> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.entries_[i] - b.entries_[i]);
  return Element(a.kind_, std::move(out));
}

Element operator-(const Element& a) {
  std::vector<Gaussian> out;
  out.reserve(a.dim());
  for (const auto& e : a.entries_) out.push_back(-e);
  return Element(a.kind_, std::move(out));
}

Element operator*(const Element& a, const Element& b) {
  require_compatible(a, b);
  const std::size_t n = a.dim();
  std::vector<Gaussian> out(n);
  if (a.kind_ == InstanceKind::circulant) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a.entries_[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.entries_[j].is_zero()) continue;
        auto& slot = out[(i + j) % n];
        slot = slot + a.entries_[i] * b.entries_[j];
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = a.entries_[i] * b.entries_[i];
  }
  return Element(a.kind_, std::move(out));
}

bool operator<(const Element& a, const Element& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.re != y.re) return x.re < y.re;
    if (x.im != y.im) return x.im < y.im;
  }
  return false;
}

Rational max_modulus2(const Element& a) {
  Rational best = 0;
  for (const auto& e : a.entries()) best = std::max(best, e.norm2());
  return best;
}

namespace {

struct GaussInt {
  Integer re;
  Integer im;
};

std::vector<GaussInt> convolve(const std::vector<GaussInt>& a, const std::vector<GaussInt>& b) {
  const std::size_t n = a.size();
  std::vector<GaussInt> out(n, GaussInt{0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].re == 0 && a[i].im == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].re == 0 && b[j].im == 0) continue;
      auto& slot = out[(i + j) % n];
      slot.re += a[i].re * b[j].re - a[i].im * b[j].im;
      slot.im += a[i].re * b[j].im + a[i].im * b[j].re;
    }
  }
  return out;
}

UpperReal circulant_norm(const Element& a) {
  // a = A / d with A Gaussian-integer valued; then a a* = (A A*) / d^2 and
  // ||a|| <= ||(A A*)^(2^j)||_F^(1/2^(j+1)) / d.
  Integer d = 1;
  for (const auto& e : a.entries()) {
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.re.get_den_mpz_t());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.im.get_den_mpz_t());
  }
  const std::size_t n = a.dim();
  std::vector<GaussInt> scaled(n), scaled_star(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational re = a[i].re * d;
    const Rational im = a[i].im * d;
    scaled[i] = GaussInt{re.get_num(), im.get_num()};
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& src = scaled[(n - k) % n];
    scaled_star[k] = GaussInt{src.re, -src.im};
  }
  auto gram = std::make_shared<const std::vector<GaussInt>>(convolve(scaled, scaled_star));
  const Rational inv_d = Rational(1) / Rational(d);

  return UpperReal([gram, inv_d, n](Precision k) -> Rational {
    std::vector<GaussInt> power = *gram;
    Rational best;
    for (Precision j = 0; j <= k; ++j) {
      if (j > 0) power = convolve(power, power);
      Integer frob2 = 0;
      for (const auto& e : power) frob2 += e.re * e.re + e.im * e.im;
      frob2 *= static_cast<unsigned long>(n);
      // ||.||_F^(1/2^(j+1)) = (||.||_F^2)^(1/2^(j+2))
      const Rational candidate = root_pow2_upper(frob2, j + 2, k) * inv_d;
      if (j == 0 || candidate < best) best = candidate;
      if (best == 0) break;
    }
    return best;
  });
}

}  // namespace

UpperReal seminorm(const Element& a) {
  switch (a.kind()) {
    case InstanceKind::diag_real: {
      Rational m = 0;
      for (const auto& e : a.entries()) m = std::max(m, abs(e.re));
      return from_rational(m);
    }
    case InstanceKind::diag_complex: {
      const Rational m2 = max_modulus2(a);
      return UpperReal([m2](Precision k) { return sqrt_upper(m2, k); });
    }
    case InstanceKind::circulant:
      return circulant_norm(a);
  }
  throw InvalidArgument("unknown instance kind");
}

SelfAdjointParts sa_decompose(const Element& a) {
  if (a.kind() == InstanceKind::diag_real) {
    throw InvalidArgument("sa_decompose requires a complex instance");
  }
  const Element a_star = a.star();
  Element re = (a + a_star).scaled(Rational(1, 2));
  // (a - a*) / (2i) = -i (a - a*) / 2
  Element im = (a - a_star).scaled(Gaussian(Rational(0), Rational(-1, 2)));
  return {std::move(re), std::move(im)};
}

SquareBoundReport check_selfadjoint_square_bound(const Element& a, const Element& b, Precision k) {
  require_compatible(a, b);
  if (!a.is_self_adjoint() || !b.is_self_adjoint()) {
    throw InvalidArgument("check_selfadjoint_square_bound requires self-adjoint elements");
  }
  SquareBoundReport report;
  if (a.is_diagonal()) {
    // Self-adjoint diagonal entries are real; a_i^2 is already |a_i|^2.
    report.exact = true;
    report.lhs = 0;
    report.rhs = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const Rational ai2 = a[i].re * a[i].re;
      report.lhs = std::max(report.lhs, ai2);
      report.rhs = std::max(report.rhs, Rational(ai2 + b[i].re * b[i].re));
    }
    report.holds = report.lhs <= report.rhs;
    return report;
  }
  report.lhs = seminorm(a.squared()).bound(k);
  report.rhs = seminorm(a.squared() + b.squared()).bound(k);
  return report;
}

}  // namespace cstar
