#include "bent/cyclotomic.hpp"

#include <algorithm>

#include "bent/error.hpp"

namespace bent {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "cyclotomic count addition overflowed");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "cyclotomic count subtraction overflowed");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "cyclotomic count product overflowed");
  return r;
}

void require_same_p(const CycInt& a, const CycInt& b) {
  if (a.p() != b.p())
    throw Error(ErrorKind::MixedP, "operands live in Z[eps_" + std::to_string(a.p()) + "] and Z[eps_" +
                                       std::to_string(b.p()) + "]");
}

}  // namespace

CycInt::CycInt(std::uint32_t p) : p_(p), counts_(p, 0) {}

CycInt::CycInt(std::uint32_t p, std::vector<std::int64_t> counts) : p_(p), counts_(std::move(counts)) {
  if (counts_.size() != p_)
    throw Error(ErrorKind::ValidationError,
                "count vector has length " + std::to_string(counts_.size()) + ", expected p = " + std::to_string(p_));
  canonicalize();
}

CycInt CycInt::integer(std::uint32_t p, std::int64_t m) {
  CycInt r(p);
  r.counts_[0] = m;
  return r;
}

CycInt CycInt::eps_power(std::uint32_t p, std::uint64_t j, std::int64_t m) {
  CycInt r(p);
  r.counts_[j % p] = m;
  r.canonicalize();
  return r;
}

void CycInt::canonicalize() {
  const std::int64_t last = counts_.back();
  if (last == 0) return;
  for (auto& c : counts_) c = checked_sub(c, last);
}

bool CycInt::is_zero() const {
  return std::all_of(counts_.begin(), counts_.end(), [](std::int64_t c) { return c == 0; });
}

std::optional<std::int64_t> CycInt::as_integer() const {
  for (std::size_t j = 1; j < counts_.size(); ++j)
    if (counts_[j] != 0) return std::nullopt;
  return counts_[0];
}

CycInt CycInt::conj() const {
  std::vector<std::int64_t> out(p_, 0);
  for (std::uint32_t j = 0; j < p_; ++j) out[(p_ - j) % p_] = counts_[j];
  return CycInt(p_, std::move(out));
}

CycInt CycInt::rotate(std::uint64_t j) const {
  std::vector<std::int64_t> out(p_, 0);
  const std::uint64_t shift = j % p_;
  for (std::uint32_t k = 0; k < p_; ++k) out[(k + shift) % p_] = counts_[k];
  return CycInt(p_, std::move(out));
}

CycInt& CycInt::operator+=(const CycInt& o) {
  require_same_p(*this, o);
  for (std::uint32_t j = 0; j < p_; ++j) counts_[j] = checked_add(counts_[j], o.counts_[j]);
  canonicalize();
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  require_same_p(*this, o);
  for (std::uint32_t j = 0; j < p_; ++j) counts_[j] = checked_sub(counts_[j], o.counts_[j]);
  canonicalize();
  return *this;
}

CycInt CycInt::operator-() const { return scaled(-1); }

CycInt CycInt::scaled(std::int64_t m) const {
  std::vector<std::int64_t> out(counts_);
  for (auto& c : out) c = checked_mul(c, m);
  return CycInt(p_, std::move(out));
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  require_same_p(a, b);
  const std::uint32_t p = a.p_;
  std::vector<std::int64_t> out(p, 0);
  for (std::uint32_t i = 0; i < p; ++i) {
    if (a.counts_[i] == 0) continue;
    for (std::uint32_t j = 0; j < p; ++j) {
      auto& slot = out[(i + j) % p];
      slot = checked_add(slot, checked_mul(a.counts_[i], b.counts_[j]));
    }
  }
  return CycInt(p, std::move(out));
}

std::string to_string(const CycInt& a) {
  std::string s;
  for (std::uint32_t j = 0; j < a.p(); ++j) {
    const std::int64_t c = a.counts()[j];
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    const std::int64_t mag = c < 0 ? -c : c;
    if (j == 0) s += std::to_string(mag);
    else {
      if (mag != 1) s += std::to_string(mag) + "*";
      s += j == 1 ? "e" : "e^" + std::to_string(j);
    }
  }
  return s.empty() ? "0" : s;
}

int eta(std::uint32_t p, Fp c) {
  c %= p;
  if (c == 0) return 0;
  return fp_pow(c, (p - 1) / 2, p) == 1 ? 1 : -1;
}

CycInt gauss_sum(std::uint32_t p) {
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint32_t j = 1; j < p; ++j) counts[j] = eta(p, j);
  return CycInt(p, std::move(counts));
}

std::string_view to_string(Zeta z) {
  switch (z) {
    case Zeta::One: return "1";
    case Zeta::MinusOne: return "-1";
    case Zeta::I: return "i";
    case Zeta::MinusI: return "-i";
  }
  return "?";
}

std::optional<Zeta> zeta_from_string(std::string_view s) {
  if (s == "1") return Zeta::One;
  if (s == "-1") return Zeta::MinusOne;
  if (s == "i") return Zeta::I;
  if (s == "-i") return Zeta::MinusI;
  return std::nullopt;
}

namespace {

bool zeta_is_imaginary(Zeta z) { return z == Zeta::I || z == Zeta::MinusI; }
bool zeta_is_negative(Zeta z) { return z == Zeta::MinusOne || z == Zeta::MinusI; }

// p^{floor(e/2)} * g^{e mod 2}.
CycInt magnitude_base(std::uint32_t p, int e) {
  const std::int64_t scale = static_cast<std::int64_t>(ipow(p, static_cast<unsigned>(e / 2)));
  return (e % 2 == 0) ? CycInt::integer(p, scale) : gauss_sum(p).scaled(scale);
}

}  // namespace

bool admissible(const ValueShape& s, std::uint32_t p) {
  if (s.log_p_magnitude_x2 < 0 || s.j >= p) return false;
  const bool needs_i = (s.log_p_magnitude_x2 % 2 == 1) && (p % 4 == 3);
  return zeta_is_imaginary(s.zeta) == needs_i;
}

CycInt to_cyc_int(const ValueShape& s, std::uint32_t p) {
  if (!admissible(s, p))
    throw Error(ErrorKind::ValidationError, "shape (zeta " + std::string(to_string(s.zeta)) + ", j " +
                                                std::to_string(s.j) + ") is not an element of Z[eps_" +
                                                std::to_string(p) + "]");
  CycInt v = magnitude_base(p, s.log_p_magnitude_x2).rotate(s.j);
  return zeta_is_negative(s.zeta) ? -v : v;
}

std::optional<ValueShape> match_shape(const CycInt& w, int log_p_magnitude_x2) {
  if (w.is_zero() || log_p_magnitude_x2 < 0) return std::nullopt;
  const std::uint32_t p = w.p();
  const bool imaginary = (log_p_magnitude_x2 % 2 == 1) && (p % 4 == 3);
  const CycInt base = magnitude_base(p, log_p_magnitude_x2);
  std::optional<ValueShape> found;
  for (int sign = 0; sign < 2; ++sign) {
    const CycInt signed_base = sign == 0 ? base : -base;
    for (Fp j = 0; j < p; ++j) {
      if (signed_base.rotate(j) != w) continue;
      if (found) throw Error(ErrorKind::AmbiguousMatch, "two admissible shapes match " + to_string(w));
      const Zeta z = imaginary ? (sign == 0 ? Zeta::I : Zeta::MinusI) : (sign == 0 ? Zeta::One : Zeta::MinusOne);
      found = ValueShape{z, j, log_p_magnitude_x2};
    }
  }
  return found;
}

}  // namespace bent
