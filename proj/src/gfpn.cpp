#include "bent/gfpn.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "bent/error.hpp"

namespace bent {

// ---------------------------------------------------------------- integers

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r))
      throw Error(ErrorKind::Overflow, std::to_string(base) + "^" + std::to_string(exp));
  }
  return r;
}

Fp fp_pow(Fp a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t base = a % p;
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Fp>(r);
}

Fp fp_inv(Fp a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in F_" + std::to_string(p));
  return fp_pow(a, p - 2, p);
}

// ---------------------------------------------------------- polynomials

namespace {

void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyFp poly_mod(PolyFp a, const PolyFp& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Fp lead_inv = fp_inv(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<Fp>((a[shift + i] + (p - f) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

PolyFp poly_mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
  PolyFp r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<Fp>(acc[i] % p);
  return poly_mod(std::move(r), m, p);
}

PolyFp poly_powmod(PolyFp base, std::uint64_t e, const PolyFp& m, std::uint32_t p) {
  PolyFp r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFp r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^{p^d} mod m by d successive p-th powers.
PolyFp x_pow_p_pow(unsigned d, const PolyFp& m, std::uint32_t p) {
  PolyFp r = poly_mod(PolyFp{0, 1}, m, p);
  for (unsigned i = 0; i < d; ++i) r = poly_powmod(r, p, m, p);
  return r;
}

PolyFp sub_x(PolyFp a, std::uint32_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

}  // namespace

bool is_irreducible(const PolyFp& monic, std::uint32_t p) {
  PolyFp m = monic;
  trim(m);
  if (m.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(m.size() - 1);
  if (n == 1) return true;
  if (!sub_x(x_pow_p_pow(n, m, p), p).empty()) return false;
  for (std::uint64_t q : prime_factors(n)) {
    const PolyFp g = poly_gcd(sub_x(x_pow_p_pow(static_cast<unsigned>(n / q), m, p), p), m, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- field

struct FieldCtx::Tables {
  std::vector<std::uint32_t> exp;  // exp[k] = gamma^k, k < q - 1
  std::vector<std::uint32_t> log;  // log[exp[k]] = k; log[0] unused
  Elem primitive;
};

namespace {
constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 40;
constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
}  // namespace

FieldCtx FieldCtx::make(std::uint32_t p, unsigned n, const std::optional<PolyFp>& modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorKind::EvenCharacteristic, "p = 2 is not supported; p must be odd");
  if (n < 1) throw Error(ErrorKind::ValidationError, "n must be at least 1");

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.n_ = n;
  ctx.size_ = ipow(p, n);
  if (ctx.size_ > kMaxFieldSize)
    throw Error(ErrorKind::ValidationError, "field of size " + std::to_string(p) + "^" +
                                                std::to_string(n) + " exceeds 2^40 elements");
  ctx.pow_p_.resize(n);
  for (unsigned i = 0; i < n; ++i) ctx.pow_p_[i] = ipow(p, i);

  if (modulus) {
    const PolyFp& m = *modulus;
    if (m.size() != n + 1)
      throw Error(ErrorKind::ValidationError, "modulus must have n + 1 = " + std::to_string(n + 1) +
                                                  " coefficients, got " + std::to_string(m.size()));
    if (m.back() != 1) throw Error(ErrorKind::ValidationError, "modulus must be monic");
    for (Fp c : m)
      if (c >= p) throw Error(ErrorKind::ValidationError, "modulus coefficient " + std::to_string(c) + " >= p");
    if (!is_irreducible(m, p)) {
      std::string text;
      for (std::size_t i = m.size(); i-- > 0;) {
        if (m[i] == 0) continue;
        if (!text.empty()) text += " + ";
        text += (m[i] != 1 || i == 0) ? std::to_string(m[i]) : "";
        if (i > 0) text += (i == 1) ? "x" : "x^" + std::to_string(i);
      }
      throw Error(ErrorKind::Reducible, "modulus " + text + " is reducible over F_" + std::to_string(p));
    }
    ctx.modulus_ = m;
  } else {
    PolyFp m(n + 1, 0);
    m[n] = 1;
    for (std::uint64_t code = 0;; ++code) {
      std::uint64_t c = code;
      for (unsigned i = 0; i < n; ++i, c /= p) m[i] = static_cast<Fp>(c % p);
      if (is_irreducible(m, p)) break;
    }
    ctx.modulus_ = m;
  }

  ctx.basis_trace_.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    Elem y = ctx.basis_element(i);
    Elem acc{0};
    for (unsigned k = 0; k < n; ++k) {
      acc = ctx.add(acc, y);
      y = ctx.pow_schoolbook(y, p);
    }
    ctx.basis_trace_[i] = static_cast<Fp>(acc.index);
  }

  if (ctx.size_ <= kTableLimit) {
    auto tables = std::make_shared<Tables>();
    tables->primitive = ctx.primitive_search();
    const std::uint64_t q1 = ctx.size_ - 1;
    tables->exp.resize(q1);
    tables->log.assign(ctx.size_, 0);
    Elem g{1};
    for (std::uint64_t k = 0; k < q1; ++k) {
      tables->exp[k] = static_cast<std::uint32_t>(g.index);
      tables->log[g.index] = static_cast<std::uint32_t>(k);
      g = ctx.mul_schoolbook(g, tables->primitive);
    }
    ctx.tables_ = std::move(tables);
  }
  return ctx;
}

PolyFp FieldCtx::coeffs(Elem a) const {
  PolyFp c(n_);
  std::uint64_t v = a.index;
  for (unsigned i = 0; i < n_; ++i, v /= p_) c[i] = static_cast<Fp>(v % p_);
  return c;
}

Elem FieldCtx::from_coeffs(std::span<const Fp> c) const {
  std::uint64_t idx = 0;
  for (std::size_t i = std::min<std::size_t>(c.size(), n_); i-- > 0;) idx = idx * p_ + c[i] % p_;
  return Elem{idx};
}

Elem FieldCtx::basis_element(unsigned k) const {
  if (n_ > 1 && k < n_) return Elem{pow_p_[k]};
  const Elem x = n_ > 1 ? Elem{p_} : Elem{(p_ - modulus_[0]) % p_};
  return pow(x, k);
}

Elem FieldCtx::add(Elem a, Elem b) const {
  std::uint64_t x = a.index, y = b.index, r = 0, place = 1;
  for (unsigned i = 0; i < n_; ++i, place *= p_) {
    r += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
  }
  return Elem{r};
}

Elem FieldCtx::neg(Elem a) const {
  std::uint64_t x = a.index, r = 0, place = 1;
  for (unsigned i = 0; i < n_; ++i, place *= p_) {
    r += ((p_ - x % p_) % p_) * place;
    x /= p_;
  }
  return Elem{r};
}

Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldCtx::scale(Fp c, Elem a) const {
  c %= p_;
  std::uint64_t x = a.index, r = 0, place = 1;
  for (unsigned i = 0; i < n_; ++i, place *= p_) {
    r += (x % p_ * c % p_) * place;
    x /= p_;
  }
  return Elem{r};
}

Elem FieldCtx::mul_schoolbook(Elem a, Elem b) const {
  const PolyFp ca = coeffs(a), cb = coeffs(b);
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
  }
  for (auto& v : prod) v %= p_;
  // Reduce from the top using the monic modulus: x^n = -sum m_i x^i.
  for (std::size_t d = prod.size(); d-- > n_;) {
    const std::uint64_t f = prod[d];
    if (f == 0) continue;
    prod[d] = 0;
    const std::size_t shift = d - n_;
    for (unsigned i = 0; i < n_; ++i) prod[shift + i] = (prod[shift + i] + (p_ - f) * modulus_[i]) % p_;
  }
  PolyFp r(n_);
  for (unsigned i = 0; i < n_; ++i) r[i] = static_cast<Fp>(prod[i]);
  return from_coeffs(r);
}

Elem FieldCtx::pow_schoolbook(Elem a, std::uint64_t e) const {
  Elem r{1}, base = a;
  while (e) {
    if (e & 1) r = mul_schoolbook(r, base);
    base = mul_schoolbook(base, base);
    e >>= 1;
  }
  return r;
}

Elem FieldCtx::mul(Elem a, Elem b) const {
  if (!tables_) return mul_schoolbook(a, b);
  if (a.index == 0 || b.index == 0) return Elem{0};
  const std::uint64_t q1 = size_ - 1;
  return Elem{tables_->exp[(tables_->log[a.index] + std::uint64_t{tables_->log[b.index]}) % q1]};
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
  if (!tables_) return pow_schoolbook(a, e);
  if (a.index == 0) return Elem{e == 0 ? 1u : 0u};
  const std::uint64_t q1 = size_ - 1;
  const auto k = static_cast<unsigned __int128>(tables_->log[a.index]) * (e % q1) % q1;
  return Elem{tables_->exp[static_cast<std::uint64_t>(k)]};
}

Elem FieldCtx::inv(Elem a) const {
  if (a.index == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in F_" + std::to_string(p_) + "^" + std::to_string(n_));
  return pow(a, size_ - 2);
}

Elem FieldCtx::frobenius(Elem a, std::uint64_t i) const { return pow(a, pow_p_[i % n_]); }

Fp FieldCtx::trace(Elem a) const {
  std::uint64_t x = a.index, acc = 0;
  for (unsigned i = 0; i < n_; ++i, x /= p_) acc += (x % p_) * basis_trace_[i];
  return static_cast<Fp>(acc % p_);
}

std::uint64_t FieldCtx::order(Elem a) const {
  if (a.index == 0) throw Error(ErrorKind::DivisionByZero, "order of 0 is undefined");
  std::uint64_t ord = size_ - 1;
  for (std::uint64_t r : prime_factors(size_ - 1)) {
    while (ord % r == 0 && pow(a, ord / r).index == 1) ord /= r;
  }
  return ord;
}

Elem FieldCtx::primitive_search() const {
  const std::uint64_t q1 = size_ - 1;
  const auto factors = prime_factors(q1);
  for (std::uint64_t idx = 1; idx < size_; ++idx) {
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (pow_schoolbook(Elem{idx}, q1 / r).index == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return Elem{idx};
  }
  throw Error(ErrorKind::ValidationError, "no primitive element found");
}

Elem FieldCtx::primitive_element() const { return tables_ ? tables_->primitive : primitive_search(); }

// --------------------------------------------------------------- matrices

MatrixFp::MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatrixFp MatrixFp::identity(std::uint32_t p, std::size_t n) {
  MatrixFp m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

MatrixFp MatrixFp::transpose() const {
  MatrixFp t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

std::vector<Fp> MatrixFp::apply(std::span<const Fp> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::ValidationError, "matrix-vector dimension mismatch");
  std::vector<Fp> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<std::uint64_t>(at(r, c)) * v[c];
    out[r] = static_cast<Fp>(acc % p_);
  }
  return out;
}

bool MatrixFp::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

bool MatrixFp::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && at(r, c) != 0) return false;
  return true;
}

MatrixFp operator*(const MatrixFp& a, const MatrixFp& b) {
  if (a.p_ != b.p_ || a.cols_ != b.rows_)
    throw Error(ErrorKind::ValidationError, "matrix product dimension or characteristic mismatch");
  MatrixFp r(a.p_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) acc += static_cast<std::uint64_t>(a.at(i, k)) * b.at(k, j);
      r.set(i, j, static_cast<Fp>(acc % a.p_));
    }
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(std::vector<std::vector<Fp>>& m, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const Fp inv = fp_inv(m[r][c], p);
    for (auto& v : m[r]) v = static_cast<Fp>(static_cast<std::uint64_t>(v) * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint64_t f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = static_cast<Fp>((m[i][k] + (p - f) * m[r][k]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Fp>> to_rows(const MatrixFp& m) {
  std::vector<std::vector<Fp>> rows(m.rows(), std::vector<Fp>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
  return rows;
}

}  // namespace

std::size_t rank(const MatrixFp& m) {
  auto rows = to_rows(m);
  return rref(rows, m.p()).size();
}

std::vector<std::vector<Fp>> kernel(const MatrixFp& m) {
  auto rows = to_rows(m);
  const auto pivots = rref(rows, m.p());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Fp>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fp> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (m.p() - rows[r][free]) % m.p();
    basis.push_back(std::move(v));
  }
  return basis;
}

Elem eval_linearized(const FieldCtx& ctx, std::span<const Elem> coeffs, Elem z) {
  Elem acc{0};
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e].index == 0) continue;
    acc = ctx.add(acc, ctx.mul(coeffs[e], ctx.frobenius(z, e)));
  }
  return acc;
}

MatrixFp linmap_matrix(const FieldCtx& ctx, std::span<const Elem> coeffs) {
  const unsigned n = ctx.n();
  MatrixFp m(ctx.p(), n, n);
  for (unsigned k = 0; k < n; ++k) {
    const PolyFp col = ctx.coeffs(eval_linearized(ctx, coeffs, ctx.basis_element(k)));
    for (unsigned r = 0; r < n; ++r) m.set(r, k, col[r]);
  }
  return m;
}

Elem solve_trace_equation(const FieldCtx& ctx, Elem beta, Fp target) {
  if (beta.index == 0) throw Error(ErrorKind::ZeroBeta, "Tr(b * 0) is identically 0");
  const std::uint32_t p = ctx.p();
  target %= p;
  // Tr(b beta) = sum_i b_i Tr(x^i beta).
  std::vector<Fp> w(ctx.n());
  for (unsigned i = 0; i < ctx.n(); ++i) w[i] = ctx.trace(ctx.mul(ctx.basis_element(i), beta));
  for (std::uint64_t idx = 0; idx < ctx.size(); ++idx) {
    std::uint64_t v = idx, acc = 0;
    for (unsigned i = 0; i < ctx.n(); ++i, v /= p) acc += (v % p) * w[i];
    if (acc % p == target) return Elem{idx};
  }
  throw Error(ErrorKind::ZeroBeta, "trace functional is not onto");
}

}  // namespace bent
