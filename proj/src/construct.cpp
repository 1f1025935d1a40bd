#include "bent/construct.hpp"

#include <string>

#include "bent/error.hpp"
#include "bent/parallel.hpp"

namespace bent {

QuadraticSpec GluedSpec::realized(std::size_t k) const {
  return components.at(k).scaled(scalars.at(k)).plus_linear(b_witnesses.at(k));
}

namespace {

// g(beta) - g(0): the constant g(x + beta) - g(x) for beta in the kernel.
Fp increment(const QuadraticSpec& g, Elem beta) {
  const std::uint32_t p = g.field().p();
  return (g.eval(beta) + p - g.eval(Elem{0})) % p;
}

// g'_k(beta) - g'_k(0) + Tr(b beta) for the scaled component.
Fp condition_value(const FieldCtx& ctx, const QuadraticSpec& scaled, Elem b, Elem beta) {
  return (increment(scaled, beta) + ctx.trace(ctx.mul(b, beta))) % ctx.p();
}

}  // namespace

GluedSpec arrange(const std::vector<QuadraticSpec>& components, const std::vector<Fp>& scalars,
                  const std::optional<std::vector<Elem>>& witnesses) {
  if (components.empty()) throw Error(ErrorKind::ValidationError, "components is empty");
  const FieldCtx& ctx = components.front().field();
  const std::uint32_t p = ctx.p();
  if (components.size() != p)
    throw Error(ErrorKind::ValidationError,
                "expected p = " + std::to_string(p) + " components, got " + std::to_string(components.size()));
  if (scalars.size() != p)
    throw Error(ErrorKind::ValidationError,
                "expected p = " + std::to_string(p) + " scalars, got " + std::to_string(scalars.size()));

  std::vector<QuadraticSpec> scaled;
  std::optional<Elem> beta;
  for (std::size_t k = 0; k < p; ++k) {
    if (!(components[k].field() == ctx))
      throw Error(ErrorKind::ValidationError, "components[" + std::to_string(k) + "] uses a different field");
    if (scalars[k] % p == 0)
      throw Error(ErrorKind::ValidationError, "scalars[" + std::to_string(k) + "] must be nonzero mod p");
    scaled.push_back(components[k].scaled(scalars[k]));
    const NearBentCertificate cert = certificate(scaled.back());
    if (cert.s != 1)
      throw Error(ErrorKind::NotNearBent, "component " + std::to_string(k) + " has kernel dimension " +
                                              std::to_string(cert.s) + ", expected 1");
    if (!beta) beta = cert.beta;
    else if (*beta != *cert.beta)
      throw Error(ErrorKind::KernelMismatch, "component " + std::to_string(k) + " has kernel spanned by element " +
                                                 std::to_string(cert.beta->index) + ", component 0 by " +
                                                 std::to_string(beta->index));
  }

  GluedSpec spec{ctx, components, scalars, *beta, {}};
  for (auto& s : spec.scalars) s %= p;
  const Fp base = increment(scaled[0], *beta);
  if (witnesses) {
    if (witnesses->size() != p)
      throw Error(ErrorKind::ValidationError,
                  "expected p = " + std::to_string(p) + " witnesses, got " + std::to_string(witnesses->size()));
    for (std::size_t k = 0; k < p; ++k) {
      if (!ctx.contains((*witnesses)[k]))
        throw Error(ErrorKind::ValidationError, "b_indices[" + std::to_string(k) + "] is outside the field");
      if (condition_value(ctx, scaled[k], (*witnesses)[k], *beta) != (base + k) % p)
        throw Error(ErrorKind::InvalidWitness,
                    "b_indices[" + std::to_string(k) + "] violates g_k(beta) + Tr(b_k beta) = g_0(beta) + k");
    }
    spec.b_witnesses = *witnesses;
  } else {
    const Elem unit = solve_trace_equation(ctx, *beta, 1);
    for (std::size_t k = 0; k < p; ++k) {
      const Fp shift = static_cast<Fp>((base + k + p - increment(scaled[k], *beta)) % p);
      spec.b_witnesses.push_back(ctx.scale(shift, unit));
    }
  }
  return spec;
}

bool witness_condition_holds(const GluedSpec& spec) {
  const FieldCtx& ctx = spec.field;
  const std::uint32_t p = ctx.p();
  const Fp base = condition_value(ctx, spec.components[0].scaled(spec.scalars[0]), spec.b_witnesses[0], spec.beta);
  for (std::size_t k = 0; k < p; ++k) {
    if (condition_value(ctx, spec.components[k].scaled(spec.scalars[k]), spec.b_witnesses[k], spec.beta) !=
        (base + k) % p)
      return false;
  }
  return true;
}

bool supports_partition(const GluedSpec& spec) {
  const std::uint64_t size = spec.field.size();
  std::vector<unsigned> hits(size, 0);
  for (std::size_t k = 0; k < spec.components.size(); ++k) {
    const WalshSpectrum w = walsh_full(spec.realized(k).to_table());
    std::uint64_t support = 0;
    for (std::uint64_t b = 0; b < size; ++b) {
      if (w.coeffs[b].is_zero()) continue;
      ++hits[b];
      ++support;
    }
    if (support * spec.field.p() != size) return false;
  }
  for (unsigned h : hits)
    if (h != 1) return false;
  return true;
}

PFunction glue(const GluedSpec& spec) {
  const FieldCtx& ctx = spec.field;
  const Domain domain = Domain::product(ctx);
  std::vector<Fp> table(domain.size());
  for (std::size_t k = 0; k < spec.components.size(); ++k) {
    const QuadraticSpec f = spec.realized(k);
    for (std::uint64_t x = 0; x < ctx.size(); ++x) table[domain.point(Elem{x}, static_cast<Fp>(k))] = f.eval(Elem{x});
  }
  return PFunction(domain, std::move(table));
}

// ------------------------------------------------------------------ ANF

int AnfPoly::degree() const {
  int best = -1;
  for (std::uint64_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e] == 0) continue;
    int total = 0;
    for (std::uint64_t v = e; v; v /= p) total += static_cast<int>(v % p);
    best = std::max(best, total);
  }
  return best;
}

Fp AnfPoly::eval(std::span<const Fp> point) const {
  if (point.size() != dim) throw Error(ErrorKind::ValidationError, "point has wrong dimension");
  std::uint64_t acc = 0;
  for (std::uint64_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e] == 0) continue;
    std::uint64_t term = coeffs[e];
    std::uint64_t v = e;
    for (unsigned i = 0; i < dim; ++i, v /= p) term = term * fp_pow(point[i], v % p, p) % p;
    acc += term;
  }
  return static_cast<Fp>(acc % p);
}

AnfPoly anf(const PFunction& f) {
  const std::uint32_t p = f.p();
  // Inverse of the Vandermonde matrix V[d][e] = d^e (with 0^0 = 1).
  MatrixFp vandermonde(p, p, p);
  for (Fp d = 0; d < p; ++d)
    for (Fp e = 0; e < p; ++e) vandermonde.set(d, e, fp_pow(d, e, p));
  MatrixFp inverse(p, p, p);
  {
    std::vector<std::vector<Fp>> aug(p, std::vector<Fp>(2 * p, 0));
    for (Fp r = 0; r < p; ++r) {
      for (Fp c = 0; c < p; ++c) aug[r][c] = vandermonde.at(r, c);
      aug[r][p + r] = 1;
    }
    for (Fp c = 0; c < p; ++c) {
      Fp sel = c;
      while (aug[sel][c] == 0) ++sel;
      std::swap(aug[sel], aug[c]);
      const Fp inv = fp_inv(aug[c][c], p);
      for (auto& v : aug[c]) v = static_cast<Fp>(std::uint64_t{v} * inv % p);
      for (Fp r = 0; r < p; ++r) {
        if (r == c || aug[r][c] == 0) continue;
        const std::uint64_t factor = aug[r][c];
        for (Fp k = 0; k < 2 * p; ++k) aug[r][k] = static_cast<Fp>((aug[r][k] + (p - factor) * aug[c][k]) % p);
      }
    }
    for (Fp r = 0; r < p; ++r)
      for (Fp c = 0; c < p; ++c) inverse.set(r, c, aug[r][p + c]);
  }

  AnfPoly poly{p, f.dim(), f.table()};
  const std::uint64_t size = poly.coeffs.size();
  std::vector<Fp> values(p);
  std::uint64_t stride = 1;
  for (unsigned coord = 0; coord < f.dim(); ++coord, stride *= p) {
    for (std::uint64_t g = 0; g < size / p; ++g) {
      const std::uint64_t base = (g / stride) * stride * p + g % stride;
      for (Fp d = 0; d < p; ++d) values[d] = poly.coeffs[base + d * stride];
      const auto out = inverse.apply(values);
      for (Fp e = 0; e < p; ++e) poly.coeffs[base + e * stride] = out[e];
    }
  }
  return poly;
}

// ------------------------------------------------------------- examples

GluedSpec build_example(int id) {
  if (id == 6) {
    const FieldCtx ctx = FieldCtx::make(3, 5);
    const QuadraticSpec g = binomial(ctx, 1, 2, 1, BinomialVariant::Minus);
    return arrange({g, g, g}, {1, 2, 1}, std::vector<Elem>{Elem{0}, Elem{2}, Elem{1}});
  }
  if (id < 2 || id > 6) throw Error(ErrorKind::ValidationError, "example id must be in 2..6, got " + std::to_string(id));

  const FieldCtx ctx = FieldCtx::make(3, 8);
  const QuadraticSpec low = binomial(ctx, 1, 2, 1, BinomialVariant::Plus);   // Tr(x^10 + x^4)
  const QuadraticSpec high = binomial(ctx, 1, 6, 5, BinomialVariant::Plus);  // Tr(x^{3^6+1} + x^{3^5+1})
  const bool swap_middle = (id == 4 || id == 5);
  const bool double_middle = (id == 3 || id == 5);
  const std::vector<QuadraticSpec> components{low, swap_middle ? high : low, high};
  const std::vector<Fp> scalars{1, static_cast<Fp>(double_middle ? 2 : 1), 1};

  const Elem beta = *certificate(low).beta;  // a root of x^2 + 1
  return arrange(components, scalars, std::vector<Elem>{Elem{1}, beta, ctx.scale(2, beta)});
}

// ---------------------------------------------------------- regularity

namespace {

std::vector<int> component_signs(const GluedSpec& spec) {
  const std::uint32_t p = spec.field.p();
  const unsigned n = spec.field.n();
  std::vector<int> signs;
  for (std::size_t k = 0; k < spec.components.size(); ++k) {
    int s = delta_eta(spec.components[k]);
    if ((n - 1) % 2 == 1) s *= eta(p, spec.scalars[k]);
    signs.push_back(s);
  }
  return signs;
}

}  // namespace

Regularity predict_regularity(const GluedSpec& spec) {
  const auto signs = component_signs(spec);
  for (int s : signs)
    if (s != signs.front()) return Regularity::NonWeaklyRegular;
  return Regularity::WeaklyRegular;
}

std::vector<Zeta> predicted_zetas(const GluedSpec& spec) {
  std::vector<Zeta> out;
  for (int s : component_signs(spec)) out.push_back(near_bent_zeta(spec.field.p(), spec.field.n(), s));
  return out;
}

ScanReport scan_coefficients(const std::vector<QuadraticSpec>& components, bool confirm_spectrum) {
  if (components.empty()) throw Error(ErrorKind::ValidationError, "template has no components");
  const std::uint32_t p = components.front().field().p();
  // Surfaces KernelMismatch / NotNearBent before the sweep.
  arrange(components, std::vector<Fp>(components.size(), 1));

  std::uint64_t total = 1;
  for (std::size_t k = 0; k < components.size(); ++k) total *= (p - 1);

  ScanReport report;
  report.confirmed = confirm_spectrum;
  report.tuples.resize(total);
  parallel_for(total, [&](std::size_t code) {
    TupleVerdict verdict;
    std::uint64_t v = code;
    for (std::size_t k = 0; k < components.size(); ++k, v /= (p - 1)) verdict.scalars.push_back(static_cast<Fp>(v % (p - 1) + 1));
    const GluedSpec spec = arrange(components, verdict.scalars);
    verdict.predicted = predict_regularity(spec);
    if (confirm_spectrum) {
      const SpectrumReport spectral = analyze(walsh_full(glue(spec)));
      verdict.spectral = spectral.classification;
      const bool weak = spectral.classification.kind == Regularity::Regular ||
                        spectral.classification.kind == Regularity::WeaklyRegular;
      verdict.agree = spectral.is_bent && (weak == (verdict.predicted == Regularity::WeaklyRegular));
    }
    report.tuples[code] = std::move(verdict);
  });
  for (const auto& t : report.tuples) {
    if (t.predicted == Regularity::WeaklyRegular) ++report.weakly_regular;
    else ++report.non_weakly_regular;
    if (!t.agree) ++report.disagreements;
  }
  return report;
}

}  // namespace bent
