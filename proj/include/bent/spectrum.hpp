#pragma once

// p-ary functions as value tables, their exact Walsh spectra, and the
// bent / near-bent / (weak) regularity classification.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "bent/cyclotomic.hpp"
#include "bent/gfpn.hpp"

namespace bent {

/// Either F_{p^n} with pairing Tr(ax), or F_{p^n} x F_p with pairing
/// Tr(a x) + a_y x_y. Points are indexed as field_index + p^n * y.
class Domain {
 public:
  static Domain field(FieldCtx ctx) { return Domain(std::move(ctx), false); }
  static Domain product(FieldCtx ctx) { return Domain(std::move(ctx), true); }

  const FieldCtx& ctx() const { return ctx_; }
  bool is_product() const { return product_; }
  std::uint32_t p() const { return ctx_.p(); }
  unsigned dim() const { return ctx_.n() + (product_ ? 1 : 0); }
  std::uint64_t size() const { return product_ ? ctx_.size() * ctx_.p() : ctx_.size(); }

  Elem field_part(std::uint64_t point) const { return Elem{point % ctx_.size()}; }
  Fp y_part(std::uint64_t point) const { return product_ ? static_cast<Fp>(point / ctx_.size()) : 0; }
  std::uint64_t point(Elem x, Fp y) const { return x.index + (product_ ? ctx_.size() * y : 0); }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain(FieldCtx ctx, bool product) : ctx_(std::move(ctx)), product_(product) {}
  FieldCtx ctx_;
  bool product_;
};

Fp inner_product(const Domain& d, std::uint64_t a, std::uint64_t x);

class PFunction {
 public:
  PFunction(Domain domain, std::vector<Fp> table);
  static PFunction from_fn(Domain domain, const std::function<Fp(std::uint64_t)>& fn);

  const Domain& domain() const { return domain_; }
  std::uint32_t p() const { return domain_.p(); }
  unsigned dim() const { return domain_.dim(); }
  const std::vector<Fp>& table() const { return table_; }
  Fp operator()(std::uint64_t x) const { return table_[x]; }

 private:
  Domain domain_;
  std::vector<Fp> table_;
};

/// W(b) = sum_x eps^{f(x) - <b, x>} for every b, indexed like the domain.
struct WalshSpectrum {
  Domain domain;
  std::vector<CycInt> coeffs;

  /// sum_b |W(b)|^2 == p^{2 dim}, exactly.
  bool parseval_holds() const;
};

CycInt walsh_naive(const PFunction& f, std::uint64_t b);
/// Dimension-factorized transform: one p-point character transform per
/// coordinate, O(dim p^{dim+2}) integer operations.
WalshSpectrum walsh_full(const PFunction& f);

/// True iff the spectrum of f + <c, .> is the spectrum of f translated by c.
bool shift_property_check(const PFunction& f, std::uint64_t c);

enum class Regularity { NotApplicable, Regular, WeaklyRegular, NonWeaklyRegular };
std::string_view to_string(Regularity r);

struct Classification {
  Regularity kind = Regularity::NotApplicable;
  std::optional<Zeta> zeta;  // set for WeaklyRegular

  friend bool operator==(const Classification&, const Classification&) = default;
};

struct ShapeClass {
  Zeta zeta;
  Fp j;
  friend auto operator<=>(const ShapeClass&, const ShapeClass&) = default;
};

using Multiplicities = std::map<ShapeClass, std::uint64_t>;

struct SpectrumReport {
  std::uint32_t p = 0;
  unsigned dim = 0;
  bool is_bent = false;
  bool is_near_bent = false;
  std::uint64_t support_size = 0;
  /// Exponent of |W(b)|^2 on the support (dim for bent, dim + 1 for
  /// near-bent); absent otherwise.
  std::optional<int> log_p_magnitude_x2;
  Classification classification;
  /// Per b: the matched shape (nonzero coefficients of bent/near-bent
  /// functions only). The dual f*(b) is shapes[b]->j.
  std::vector<std::optional<ValueShape>> shapes;
  Multiplicities multiplicities;

  std::optional<Fp> dual(std::uint64_t b) const;
};

SpectrumReport analyze(const WalshSpectrum& spectrum);

/// Shape counts restricted to b = (a, y) for fixed y on a product domain.
Multiplicities slice_multiplicities(const SpectrumReport& report, const Domain& domain, Fp y = 0);
/// Full counts divided by p, or nothing if some count is not divisible.
std::optional<Multiplicities> divided_multiplicities(const SpectrumReport& report);

}  // namespace bent
