#include "bent/quadratic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bent/error.hpp"

namespace bent {

QuadraticSpec::QuadraticSpec(FieldCtx field, std::vector<QuadTerm> quad_terms, Elem linear, Fp constant)
    : field_(std::move(field)), quad_terms_(std::move(quad_terms)), linear_(linear), constant_(constant % field_.p()) {
  for (std::size_t k = 0; k < quad_terms_.size(); ++k) {
    auto& term = quad_terms_[k];
    if (!field_.contains(term.a))
      throw Error(ErrorKind::ValidationError, "quad_terms[" + std::to_string(k) + "].a_index " +
                                                  std::to_string(term.a.index) + " is outside the field");
    term.i %= field_.n();
  }
  if (!field_.contains(linear_))
    throw Error(ErrorKind::ValidationError, "linear_index " + std::to_string(linear_.index) + " is outside the field");
}

Fp QuadraticSpec::eval(Elem x) const {
  // Tr(x * (sum a_i x^{p^i} + b)) + c
  Elem inner = linear_;
  for (const auto& term : quad_terms_) inner = field_.add(inner, field_.mul(term.a, field_.frobenius(x, term.i)));
  return (field_.trace(field_.mul(x, inner)) + constant_) % field_.p();
}

PFunction QuadraticSpec::to_table() const {
  return PFunction::from_fn(Domain::field(field_), [this](std::uint64_t x) { return eval(Elem{x}); });
}

QuadraticSpec QuadraticSpec::scaled(Fp c) const {
  std::vector<QuadTerm> terms = quad_terms_;
  for (auto& t : terms) t.a = field_.scale(c, t.a);
  return QuadraticSpec(field_, std::move(terms), field_.scale(c, linear_),
                       static_cast<Fp>(std::uint64_t{constant_} * (c % field_.p()) % field_.p()));
}

QuadraticSpec QuadraticSpec::plus_linear(Elem b) const {
  return QuadraticSpec(field_, quad_terms_, field_.add(linear_, b), constant_);
}

QuadraticSpec monomial(const FieldCtx& ctx, Elem a, unsigned r) { return QuadraticSpec(ctx, {QuadTerm{a, r}}); }

QuadraticSpec binomial(const FieldCtx& ctx, Fp c, unsigned r, unsigned t, BinomialVariant variant) {
  const Elem a = ctx.from_fp(c);
  const Elem b = variant == BinomialVariant::Plus ? a : ctx.neg(a);
  return QuadraticSpec(ctx, {QuadTerm{a, r}, QuadTerm{b, t}});
}

unsigned largest_term_index(const QuadraticSpec& spec) {
  if (spec.quad_terms().empty()) throw Error(ErrorKind::EmptyQuadraticPart, "quad_terms is empty");
  unsigned l = 0;
  for (const auto& t : spec.quad_terms()) l = std::max(l, t.i);
  return l;
}

std::vector<Elem> linearized(const QuadraticSpec& spec) {
  const FieldCtx& ctx = spec.field();
  const unsigned n = ctx.n();
  const unsigned l = largest_term_index(spec);
  std::vector<Elem> coeffs(n, Elem{0});
  for (const auto& [a, i] : spec.quad_terms()) {
    auto& hi = coeffs[(l + i) % n];
    hi = ctx.add(hi, ctx.frobenius(a, l));
    auto& lo = coeffs[(l - i) % n];
    lo = ctx.add(lo, ctx.frobenius(a, l - i));
  }
  return coeffs;
}

NearBentCertificate certificate(const QuadraticSpec& spec) {
  const FieldCtx& ctx = spec.field();
  const auto coeffs = linearized(spec);
  NearBentCertificate cert;
  for (const auto& v : kernel(linmap_matrix(ctx, coeffs))) cert.kernel_basis.push_back(ctx.from_coeffs(v));
  cert.s = static_cast<unsigned>(cert.kernel_basis.size());
  if (cert.s == 1) {
    Elem best = cert.kernel_basis[0];
    for (Fp c = 2; c < ctx.p(); ++c) best = std::min(best, ctx.scale(c, cert.kernel_basis[0]));
    cert.beta = best;
  }
  return cert;
}

bool binomial_near_bent(std::uint32_t p, unsigned n, unsigned r, unsigned t, BinomialVariant variant) {
  if (n == 0 || r % n == t % n)
    throw Error(ErrorKind::DegenerateExponents,
                "r = " + std::to_string(r) + " and t = " + std::to_string(t) + " coincide mod n = " + std::to_string(n));
  const unsigned sum = r + t;
  const unsigned diff = r > t ? r - t : t - r;
  if (std::gcd(n, p) != 1) return false;
  if (variant == BinomialVariant::Minus) return std::gcd(n, sum) == 1 && std::gcd(n, diff) == 1;
  return std::gcd(n, 2 * sum) == 2 && std::gcd(n, 2 * diff) == 2 && diff % 2 == 1;
}

bool monomial_bent_criterion(std::uint32_t p, unsigned n, unsigned r, std::uint64_t c_exponent) {
  const unsigned d = std::gcd(2 * r, n);
  const auto modulus = static_cast<__int128>(ipow(p, d)) - 1;
  const auto value = (static_cast<__int128>(ipow(p, n)) - 1) / 2 -
                     static_cast<__int128>(c_exponent) * (static_cast<__int128>(ipow(p, r % n)) - 1);
  // p^r = p^{r mod n} modulo p^n - 1, and p^d - 1 divides p^n - 1.
  return value % modulus != 0;
}

MatrixFp quadratic_form_matrix(const QuadraticSpec& spec) {
  const FieldCtx& ctx = spec.field();
  const unsigned n = ctx.n();
  const std::uint32_t p = ctx.p();
  // B_jk = Tr(x^j * sum_i a_i (x^k)^{p^i}), so f(x) = x^T B x.
  std::vector<Elem> lin(n, Elem{0});
  for (const auto& [a, i] : spec.quad_terms()) lin[i] = ctx.add(lin[i], a);
  std::vector<Elem> image(n);
  for (unsigned k = 0; k < n; ++k) image[k] = eval_linearized(ctx, lin, ctx.basis_element(k));

  const Fp half = fp_inv(2, p);
  MatrixFp a(p, n, n);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = 0; k < n; ++k) {
      const Fp bjk = ctx.trace(ctx.mul(ctx.basis_element(j), image[k]));
      const Fp bkj = ctx.trace(ctx.mul(ctx.basis_element(k), image[j]));
      a.set(j, k, static_cast<Fp>((std::uint64_t{bjk} + bkj) * half % p));
    }
  return a;
}

namespace {

class Congruence {
 public:
  explicit Congruence(const MatrixFp& a) : m_(a), c_(MatrixFp::identity(a.p(), a.rows())), p_(a.p()) {}

  void swap(std::size_t k, std::size_t j) {
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      const Fp t = m_.at(k, i);
      m_.set(k, i, m_.at(j, i));
      m_.set(j, i, t);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Fp t = m_.at(i, k);
      m_.set(i, k, m_.at(i, j));
      m_.set(i, j, t);
      const Fp u = c_.at(i, k);
      c_.set(i, k, c_.at(i, j));
      c_.set(i, j, u);
    }
  }

  // column k += f column j, then row k += f row j (and the same on C's columns).
  void add_to(std::size_t k, std::size_t j, Fp f) {
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      m_.set(i, k, static_cast<Fp>((m_.at(i, k) + std::uint64_t{f} * m_.at(i, j)) % p_));
      c_.set(i, k, static_cast<Fp>((c_.at(i, k) + std::uint64_t{f} * c_.at(i, j)) % p_));
    }
    for (std::size_t i = 0; i < n; ++i) m_.set(k, i, static_cast<Fp>((m_.at(k, i) + std::uint64_t{f} * m_.at(j, i)) % p_));
  }

  const MatrixFp& m() const { return m_; }
  const MatrixFp& c() const { return c_; }

 private:
  MatrixFp m_;
  MatrixFp c_;
  std::uint32_t p_;
};

}  // namespace

Diagonalization diagonalize(const MatrixFp& symmetric) {
  if (!symmetric.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "diagonalize requires a symmetric square matrix");
  const std::uint32_t p = symmetric.p();
  const std::size_t n = symmetric.rows();
  Congruence work(symmetric);
  for (std::size_t k = 0; k < n; ++k) {
    if (work.m().at(k, k) == 0) {
      std::size_t partner = k + 1;
      while (partner < n && work.m().at(k, partner) == 0) ++partner;
      if (partner == n) continue;  // row k is already zero
      std::size_t j = k + 1;
      while (j < n && work.m().at(j, j) == 0) ++j;
      if (j < n) work.swap(k, j);
      else work.add_to(k, partner, 1);  // new pivot 2 * M[k][partner] != 0 as p is odd
    }
    const Fp pivot_inv = fp_inv(work.m().at(k, k), p);
    for (std::size_t j = k + 1; j < n; ++j) {
      const Fp entry = work.m().at(j, k);
      if (entry == 0) continue;
      const Fp f = static_cast<Fp>((p - std::uint64_t{entry} * pivot_inv % p) % p);
      work.add_to(j, k, f);
    }
  }
  return Diagonalization{work.c(), work.m()};
}

int delta_eta(const QuadraticSpec& spec) {
  const MatrixFp a = quadratic_form_matrix(spec);
  const Diagonalization diag = diagonalize(a);
  const std::uint32_t p = a.p();
  std::uint64_t product = 1;
  unsigned zeros = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Fp d = diag.diagonal.at(i, i);
    if (d == 0) ++zeros;
    else product = product * d % p;
  }
  if (zeros > 1)
    throw Error(ErrorKind::DegenerateForm,
                "quadratic form has rank " + std::to_string(a.rows() - zeros) + " < n - 1 = " + std::to_string(a.rows() - 1));
  return eta(p, static_cast<Fp>(product));
}

Zeta near_bent_zeta(std::uint32_t p, unsigned n, int eta_delta) {
  int sign = eta_delta;
  if (p % 4 == 3) {
    const unsigned half = (n % 2 == 0) ? (n - 2) / 2 : (n - 1) / 2;
    if (half % 2 == 1) sign = -sign;
  }
  if (p % 4 == 3 && n % 2 == 0) return sign > 0 ? Zeta::I : Zeta::MinusI;
  return sign > 0 ? Zeta::One : Zeta::MinusOne;
}

Fp circulant_delta(std::uint32_t p, unsigned n, unsigned r, unsigned t) {
  if (n < 2 || std::gcd(n, p) != 1)
    throw Error(ErrorKind::RootOfUnityNotFound, "need n >= 2 coprime to p, got n = " + std::to_string(n));
  if (r % n == t % n) throw Error(ErrorKind::DegenerateExponents, "r and t coincide mod n");
  if (!binomial_near_bent(p, n, r, t, BinomialVariant::Minus))
    throw Error(ErrorKind::DegenerateExponents, "the binomial is not near-bent for these exponents");

  unsigned m = 1;
  for (std::uint64_t acc = p % n; acc != 1 % n; acc = acc * p % n) ++m;
  const FieldCtx ext = FieldCtx::make(p, m);

  std::optional<Elem> u;
  for (std::uint64_t idx = 1; idx < ext.size() && !u; ++idx)
    if (ext.order(Elem{idx}) == n) u = Elem{idx};
  if (!u) throw Error(ErrorKind::RootOfUnityNotFound, "no primitive " + std::to_string(n) + "-th root in F_p^" + std::to_string(m));

  const auto eigenvalue = [&](unsigned j) {
    const std::uint64_t er = std::uint64_t{(n - r % n) % n} * j % n;
    const std::uint64_t et = std::uint64_t{(n - t % n) % n} * j % n;
    return ext.sub(ext.pow(*u, er), ext.pow(*u, et));
  };
  if (eigenvalue(0).index != 0) throw Error(ErrorKind::ValidationError, "lambda_0 must vanish");
  Elem product{1};
  for (unsigned j = 1; j < n; ++j) product = ext.mul(product, eigenvalue(j));
  if (product.index >= p)
    throw Error(ErrorKind::ValidationError, "eigenvalue product is not in the prime subfield");
  return static_cast<Fp>(product.index);
}

}  // namespace bent
