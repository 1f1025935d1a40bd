#pragma once

// Quadratic p-ary functions Tr(sum a_i x^{p^i+1}) + Tr(b x) + c: their
// linearized polynomials and kernels, the binomial and monomial criteria,
// associated quadratic forms and the discriminant character eta(Delta).

#include <optional>
#include <vector>

#include "bent/cyclotomic.hpp"
#include "bent/gfpn.hpp"
#include "bent/spectrum.hpp"

namespace bent {

/// The term Tr(a x^{p^i + 1}); i is kept reduced mod n.
struct QuadTerm {
  Elem a;
  unsigned i = 0;
  friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

class QuadraticSpec {
 public:
  QuadraticSpec(FieldCtx field, std::vector<QuadTerm> quad_terms, Elem linear = Elem{0}, Fp constant = 0);

  const FieldCtx& field() const { return field_; }
  const std::vector<QuadTerm>& quad_terms() const { return quad_terms_; }
  Elem linear() const { return linear_; }
  Fp constant() const { return constant_; }

  Fp eval(Elem x) const;
  PFunction to_table() const;

  /// c * f, including the linear and constant parts.
  QuadraticSpec scaled(Fp c) const;
  /// f + Tr(b x).
  QuadraticSpec plus_linear(Elem b) const;

  friend bool operator==(const QuadraticSpec&, const QuadraticSpec&) = default;

 private:
  FieldCtx field_;
  std::vector<QuadTerm> quad_terms_;
  Elem linear_;
  Fp constant_;
};

enum class BinomialVariant { Minus, Plus };

/// Tr(a x^{p^r + 1}).
QuadraticSpec monomial(const FieldCtx& ctx, Elem a, unsigned r);
/// Tr(c x^{p^r+1} - c x^{p^t+1}) or Tr(c x^{p^r+1} + c x^{p^t+1}).
QuadraticSpec binomial(const FieldCtx& ctx, Fp c, unsigned r, unsigned t, BinomialVariant variant);

/// Coefficients of L(z) = sum_i (a_i^{p^l} z^{p^{l+i}} + a_i^{p^{l-i}} z^{p^{l-i}}),
/// l the largest term index; entry e multiplies z^{p^e}. L satisfies
/// f(y+z) - f(y) - f(z) = Tr(y^{p^l} L(z)).
std::vector<Elem> linearized(const QuadraticSpec& spec);
unsigned largest_term_index(const QuadraticSpec& spec);

struct NearBentCertificate {
  unsigned s = 0;                  // dim ker L over F_p
  std::vector<Elem> kernel_basis;  // s elements
  std::optional<Elem> beta;        // smallest-index nonzero kernel element when s == 1
};

/// |W(b)|^2 takes exactly the values {0, p^{n+s}} (only p^n when s == 0).
NearBentCertificate certificate(const QuadraticSpec& spec);

/// Closed-form gcd conditions for the binomials to be near-bent.
bool binomial_near_bent(std::uint32_t p, unsigned n, unsigned r, unsigned t, BinomialVariant variant);

/// Bentness of Tr(gamma^c x^{p^r+1}) for the canonical primitive gamma:
/// p^{gcd(2r, n)} - 1 must not divide (p^n - 1)/2 - c (p^r - 1).
bool monomial_bent_criterion(std::uint32_t p, unsigned n, unsigned r, std::uint64_t c_exponent);

/// Symmetric A with x^T A x = f(x) - Tr(b x) - c in the power basis.
MatrixFp quadratic_form_matrix(const QuadraticSpec& spec);

struct Diagonalization {
  MatrixFp congruence;  // C, invertible
  MatrixFp diagonal;    // D = C^T A C
};

Diagonalization diagonalize(const MatrixFp& symmetric);

/// eta of the product of the nonzero diagonal entries of any diagonalization.
/// Defined when the form has rank >= n - 1.
int delta_eta(const QuadraticSpec& spec);

/// Normalized coefficient sign/phase of a quadratic near-bent function on
/// F_{p^n}: nonzero W(b) = zeta p^{(n+1)/2} eps^{J(b)}.
Zeta near_bent_zeta(std::uint32_t p, unsigned n, int eta_delta);

/// prod_{j=1}^{n-1} (u^{(n-r)j} - u^{(n-t)j}) for u a primitive n-th root of
/// unity over F_p (the product of the nonzero eigenvalues of the circulant
/// form matrix of x^{p^r+1} - x^{p^t+1}). Requires gcd(n, p) = 1 and the
/// binomial to be near-bent.
Fp circulant_delta(std::uint32_t p, unsigned n, unsigned r, unsigned t);

}  // namespace bent
