#pragma once

// Exact arithmetic in Z[eps_p], eps_p = exp(2 pi i / p), and the admissible
// shapes zeta * p^{e/2} * eps^j of normalized Walsh coefficients.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bent/gfpn.hpp"

namespace bent {

/// sum_j counts[j] eps^j, stored modulo x^p - 1 and canonicalized so that
/// counts[p - 1] == 0 (subtracting the last entry uses 1 + eps + ... = 0).
/// Canonical vectors are equal iff the ring elements are equal.
class CycInt {
 public:
  explicit CycInt(std::uint32_t p);  // zero
  CycInt(std::uint32_t p, std::vector<std::int64_t> counts);

  static CycInt integer(std::uint32_t p, std::int64_t m);
  /// m * eps^j.
  static CycInt eps_power(std::uint32_t p, std::uint64_t j, std::int64_t m = 1);

  std::uint32_t p() const { return p_; }
  std::span<const std::int64_t> counts() const { return counts_; }

  bool is_zero() const;
  std::optional<std::int64_t> as_integer() const;

  CycInt conj() const;
  CycInt norm_sq() const { return *this * conj(); }
  /// this * eps^j (a cyclic rotation of the counts).
  CycInt rotate(std::uint64_t j) const;

  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  CycInt operator-() const;
  CycInt scaled(std::int64_t m) const;

  friend bool operator==(const CycInt&, const CycInt&) = default;
  friend auto operator<=>(const CycInt&, const CycInt&) = default;

 private:
  void canonicalize();

  std::uint32_t p_;
  std::vector<std::int64_t> counts_;
};

std::string to_string(const CycInt& a);

/// Quadratic character of F_p: +1 on nonzero squares, -1 on non-squares, 0 at 0.
int eta(std::uint32_t p, Fp c);

/// g = sum_{j=1}^{p-1} eta(j) eps^j; g^2 = (-1)^{(p-1)/2} p.
CycInt gauss_sum(std::uint32_t p);

enum class Zeta { One, MinusOne, I, MinusI };

std::string_view to_string(Zeta z);
std::optional<Zeta> zeta_from_string(std::string_view s);

/// value = zeta * p^{e/2} * eps^j with e = log_p_magnitude_x2. For odd e the
/// half power is carried by the Gauss sum, which equals sqrt(p) when
/// p = 1 mod 4 and i sqrt(p) when p = 3 mod 4; zeta is +-i exactly in the
/// latter case.
struct ValueShape {
  Zeta zeta = Zeta::One;
  Fp j = 0;
  int log_p_magnitude_x2 = 0;

  friend bool operator==(const ValueShape&, const ValueShape&) = default;
  friend auto operator<=>(const ValueShape&, const ValueShape&) = default;
};

bool admissible(const ValueShape& s, std::uint32_t p);
CycInt to_cyc_int(const ValueShape& s, std::uint32_t p);

/// The unique shape with |value|^2 = p^{log_p_magnitude_x2} equal to w, if
/// any. Throws AmbiguousMatch if two candidates match.
std::optional<ValueShape> match_shape(const CycInt& w, int log_p_magnitude_x2);

}  // namespace bent
