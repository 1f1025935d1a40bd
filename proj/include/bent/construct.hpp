#pragma once

// Bent functions on F_{p^n} x F_p glued from p quadratic near-bent
// functions with pairwise disjoint Walsh supports.

#include <optional>
#include <vector>

#include "bent/quadratic.hpp"
#include "bent/spectrum.hpp"

namespace bent {

/// Components g_k with scalars c_k and witnesses b_k; the glued function
/// uses f_k = c_k g_k + Tr(b_k x) on the slice y = k.
struct GluedSpec {
  FieldCtx field;
  std::vector<QuadraticSpec> components;
  std::vector<Fp> scalars;
  Elem beta;
  std::vector<Elem> b_witnesses;

  QuadraticSpec realized(std::size_t k) const;
};

/// Validates that every c_k g_k is near-bent with the same kernel
/// {c beta : c in F_p}, then fixes the witnesses. Given witnesses are
/// checked against g'_k(beta) + Tr(b_k beta) = g'_0(beta) + k (with
/// g'_k = c_k g_k, and g(beta) read as g(beta) - g(0) so constant terms
/// drop out); otherwise b_k = (g'_0(beta) + k - g'_k(beta)) b* with
/// Tr(b* beta) = 1.
GluedSpec arrange(const std::vector<QuadraticSpec>& components, const std::vector<Fp>& scalars,
                  const std::optional<std::vector<Elem>>& witnesses = std::nullopt);

bool witness_condition_holds(const GluedSpec& spec);
/// Computes every component spectrum and checks the supports tile F_{p^n}.
bool supports_partition(const GluedSpec& spec);

/// F(x, y) = f_y(x) on the product domain.
PFunction glue(const GluedSpec& spec);

/// Reduced multivariate polynomial over F_p in the domain coordinates
/// (power-basis coefficients of x, then y); exponents at most p - 1.
struct AnfPoly {
  std::uint32_t p = 0;
  unsigned dim = 0;
  /// coefficient of prod_i z_i^{e_i}, indexed by sum e_i p^i.
  std::vector<Fp> coeffs;

  int degree() const;  // 0 for constants, -1 for the zero polynomial
  Fp eval(std::span<const Fp> point) const;
};

AnfPoly anf(const PFunction& f);

/// Examples 2 to 6 of the glueing construction, with their reference witnesses.
GluedSpec build_example(int id);

/// Weak regularity from eta(c_k)^{n-1} eta(Delta(g_k)) alone: WeaklyRegular
/// iff the value is the same for all k.
Regularity predict_regularity(const GluedSpec& spec);
/// Predicted normalized phase of each component's nonzero coefficients.
std::vector<Zeta> predicted_zetas(const GluedSpec& spec);

struct TupleVerdict {
  std::vector<Fp> scalars;
  Regularity predicted = Regularity::NotApplicable;
  std::optional<Classification> spectral;
  bool agree = true;
};

struct ScanReport {
  std::vector<TupleVerdict> tuples;  // ordered by scalar tuple encoding
  std::uint64_t weakly_regular = 0;
  std::uint64_t non_weakly_regular = 0;
  std::uint64_t disagreements = 0;
  bool confirmed = false;
};

/// Runs the predictor (and optionally full spectra) over all
/// (c_0, ..., c_{p-1}) in (F_p^*)^p for fixed unit-scalar components.
ScanReport scan_coefficients(const std::vector<QuadraticSpec>& components, bool confirm_spectrum);

}  // namespace bent
