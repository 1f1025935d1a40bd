#pragma once

// Arithmetic in F_{p^n} over a polynomial basis, plus the F_p linear algebra
// (ranks, kernels, matrices of linearized maps) the rest of the library uses.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace bent {

/// An element of the prime field, always reduced to [0, p).
using Fp = std::uint32_t;

/// Polynomial over F_p, constant term first.
using PolyFp = std::vector<Fp>;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t ipow(std::uint64_t base, unsigned exp);       // throws Overflow

Fp fp_inv(Fp a, std::uint32_t p);
Fp fp_pow(Fp a, std::uint64_t e, std::uint32_t p);

/// Element of F_{p^n}: the coefficient vector (c_0, ..., c_{n-1}) of
/// sum c_i x^i read as a base-p integer. 0 and 1 map to indices 0 and 1.
struct Elem {
  std::uint64_t index = 0;
  friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

/// Immutable description of F_p[x]/(modulus). Copies share the lookup
/// tables, so passing by value is cheap and concurrent reads are safe.
class FieldCtx {
 public:
  /// Without a modulus, picks the monic irreducible of degree n whose
  /// coefficient vector has the smallest base-p encoding.
  static FieldCtx make(std::uint32_t p, unsigned n,
                       const std::optional<PolyFp>& modulus = std::nullopt);

  std::uint32_t p() const { return p_; }
  unsigned n() const { return n_; }
  std::uint64_t size() const { return size_; }
  /// Monic, n + 1 entries, constant term first.
  const PolyFp& modulus() const { return modulus_; }

  bool contains(Elem a) const { return a.index < size_; }
  PolyFp coeffs(Elem a) const;
  Elem from_coeffs(std::span<const Fp> c) const;
  Elem from_fp(Fp c) const { return Elem{c % p_}; }
  /// The residue class of x (x^k for basis_element(k)).
  Elem basis_element(unsigned k) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem scale(Fp c, Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws DivisionByZero
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^{p^i}.
  Elem frobenius(Elem a, std::uint64_t i) const;
  Fp trace(Elem a) const;

  /// Smallest-index element of multiplicative order p^n - 1.
  Elem primitive_element() const;
  std::uint64_t order(Elem a) const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.modulus_ == b.modulus_;
  }

 private:
  struct Tables;

  FieldCtx() = default;
  Elem mul_schoolbook(Elem a, Elem b) const;
  Elem pow_schoolbook(Elem a, std::uint64_t e) const;
  Elem primitive_search() const;

  std::uint32_t p_ = 3;
  unsigned n_ = 1;
  std::uint64_t size_ = 3;
  PolyFp modulus_;
  std::vector<std::uint64_t> pow_p_;  // p^0 .. p^{n-1}
  std::vector<Fp> basis_trace_;       // Tr(x^i)
  std::shared_ptr<const Tables> tables_;
};

/// Irreducibility of a monic polynomial over F_p (Rabin's test).
bool is_irreducible(const PolyFp& monic, std::uint32_t p);

/// Dense matrix over F_p, row-major.
class MatrixFp {
 public:
  MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols);
  static MatrixFp identity(std::uint32_t p, std::size_t n);

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fp at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Fp v) { data_[r * cols_ + c] = v % p_; }

  MatrixFp transpose() const;
  std::vector<Fp> apply(std::span<const Fp> v) const;
  bool is_symmetric() const;
  bool is_diagonal() const;

  friend MatrixFp operator*(const MatrixFp& a, const MatrixFp& b);
  friend bool operator==(const MatrixFp&, const MatrixFp&) = default;

 private:
  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Fp> data_;
};

std::size_t rank(const MatrixFp& m);
/// Basis of the right null space {v : m v = 0}; cols - rank vectors.
std::vector<std::vector<Fp>> kernel(const MatrixFp& m);

/// Matrix (power basis) of z -> sum_e coeffs[e] z^{p^e}. Exponent indices
/// are reduced mod n.
MatrixFp linmap_matrix(const FieldCtx& ctx, std::span<const Elem> coeffs);
Elem eval_linearized(const FieldCtx& ctx, std::span<const Elem> coeffs, Elem z);

/// Smallest-index b with Tr(b * beta) = target.
Elem solve_trace_equation(const FieldCtx& ctx, Elem beta, Fp target);

}  // namespace bent
