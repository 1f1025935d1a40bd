#include "bent/spectrum.hpp"

#include <set>

#include "bent/error.hpp"
#include "bent/parallel.hpp"

namespace bent {

std::uint64_t Domain::add(std::uint64_t a, std::uint64_t b) const {
  const Elem x = ctx_.add(field_part(a), field_part(b));
  return point(x, (y_part(a) + y_part(b)) % p());
}

std::uint64_t Domain::sub(std::uint64_t a, std::uint64_t b) const {
  const Elem x = ctx_.sub(field_part(a), field_part(b));
  return point(x, (y_part(a) + p() - y_part(b)) % p());
}

Fp inner_product(const Domain& d, std::uint64_t a, std::uint64_t x) {
  const FieldCtx& ctx = d.ctx();
  const Fp field = ctx.trace(ctx.mul(d.field_part(a), d.field_part(x)));
  return static_cast<Fp>((field + std::uint64_t{d.y_part(a)} * d.y_part(x)) % d.p());
}

PFunction::PFunction(Domain domain, std::vector<Fp> table) : domain_(std::move(domain)), table_(std::move(table)) {
  if (table_.size() != domain_.size())
    throw Error(ErrorKind::ValidationError, "table has " + std::to_string(table_.size()) + " entries, expected p^dim = " +
                                                std::to_string(domain_.size()));
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] >= domain_.p())
      throw Error(ErrorKind::ValidationError,
                  "table[" + std::to_string(i) + "] = " + std::to_string(table_[i]) + " is not in [0, p)");
}

PFunction PFunction::from_fn(Domain domain, const std::function<Fp(std::uint64_t)>& fn) {
  std::vector<Fp> table(domain.size());
  const std::uint32_t p = domain.p();
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = fn(x) % p;
  return PFunction(std::move(domain), std::move(table));
}

bool WalshSpectrum::parseval_holds() const {
  const std::uint32_t p = domain.p();
  CycInt total(p);
  for (const auto& w : coeffs) total += w.norm_sq();
  const auto value = total.as_integer();
  return value && *value == static_cast<std::int64_t>(ipow(p, 2 * domain.dim()));
}

CycInt walsh_naive(const PFunction& f, std::uint64_t b) {
  const std::uint32_t p = f.p();
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint64_t x = 0; x < f.domain().size(); ++x) {
    const Fp e = (f(x) + p - inner_product(f.domain(), b, x)) % p;
    ++counts[e];
  }
  return CycInt(p, std::move(counts));
}

namespace {

// Index of b's pairing vector in the coordinate basis: <b, x> equals the dot
// product of that vector with the base-p digits of x.
std::vector<std::uint64_t> dot_coordinates(const Domain& d) {
  const FieldCtx& ctx = d.ctx();
  const unsigned n = ctx.n();
  const std::uint32_t p = d.p();
  std::vector<std::vector<Fp>> gram(n, std::vector<Fp>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) gram[i][j] = ctx.trace(ctx.mul(ctx.basis_element(i), ctx.basis_element(j)));

  std::vector<std::uint64_t> field_map(ctx.size());
  for (std::uint64_t b = 0; b < ctx.size(); ++b) {
    const PolyFp c = ctx.coeffs(Elem{b});
    std::uint64_t idx = 0;
    for (unsigned i = n; i-- > 0;) {
      std::uint64_t t = 0;
      for (unsigned j = 0; j < n; ++j) t += std::uint64_t{gram[i][j]} * c[j];
      idx = idx * p + t % p;
    }
    field_map[b] = idx;
  }
  std::vector<std::uint64_t> out(d.size());
  for (std::uint64_t b = 0; b < d.size(); ++b)
    out[b] = field_map[d.field_part(b).index] + (d.is_product() ? ctx.size() * d.y_part(b) : 0);
  return out;
}

}  // namespace

WalshSpectrum walsh_full(const PFunction& f) {
  const Domain& d = f.domain();
  const std::uint32_t p = d.p();
  const std::uint64_t size = d.size();

  // counts[x * p + j]; every entry stays within [0, p^dim], so no overflow.
  std::vector<std::int64_t> data(size * p, 0);
  for (std::uint64_t x = 0; x < size; ++x) data[x * p + f(x)] = 1;

  const std::uint64_t groups = size / p;
  std::uint64_t stride = 1;
  for (unsigned coord = 0; coord < d.dim(); ++coord, stride *= p) {
    parallel_for(groups, [&](std::size_t g) {
      const std::uint64_t base = (g / stride) * stride * p + g % stride;
      std::vector<std::int64_t> in(static_cast<std::size_t>(p) * p);
      for (std::uint32_t digit = 0; digit < p; ++digit)
        for (std::uint32_t j = 0; j < p; ++j) in[digit * p + j] = data[(base + digit * stride) * p + j];
      for (std::uint32_t k = 0; k < p; ++k) {
        std::int64_t* out = &data[(base + k * stride) * p];
        std::fill(out, out + p, 0);
        for (std::uint32_t digit = 0; digit < p; ++digit) {
          // multiply by eps^{-digit * k}: rotate counts down by digit * k
          const std::uint32_t shift = static_cast<std::uint32_t>((p - (std::uint64_t{digit} * k) % p) % p);
          for (std::uint32_t j = 0; j < p; ++j) out[(j + shift) % p] += in[digit * p + j];
        }
      }
    });
  }

  const auto coord_of = dot_coordinates(d);
  WalshSpectrum spectrum{d, std::vector<CycInt>(size, CycInt(p))};
  for (std::uint64_t b = 0; b < size; ++b) {
    const std::int64_t* src = &data[coord_of[b] * p];
    spectrum.coeffs[b] = CycInt(p, std::vector<std::int64_t>(src, src + p));
  }
  return spectrum;
}

bool shift_property_check(const PFunction& f, std::uint64_t c) {
  const Domain& d = f.domain();
  const PFunction shifted = PFunction::from_fn(d, [&](std::uint64_t x) { return f(x) + inner_product(d, c, x); });
  const WalshSpectrum base = walsh_full(f);
  const WalshSpectrum moved = walsh_full(shifted);
  for (std::uint64_t b = 0; b < d.size(); ++b)
    if (moved.coeffs[b] != base.coeffs[d.sub(b, c)]) return false;
  return true;
}

std::string_view to_string(Regularity r) {
  switch (r) {
    case Regularity::NotApplicable: return "NotApplicable";
    case Regularity::Regular: return "Regular";
    case Regularity::WeaklyRegular: return "WeaklyRegular";
    case Regularity::NonWeaklyRegular: return "NonWeaklyRegular";
  }
  return "?";
}

std::optional<Fp> SpectrumReport::dual(std::uint64_t b) const {
  if (b >= shapes.size() || !shapes[b]) return std::nullopt;
  return shapes[b]->j;
}

SpectrumReport analyze(const WalshSpectrum& spectrum) {
  const std::uint32_t p = spectrum.domain.p();
  const unsigned dim = spectrum.domain.dim();
  SpectrumReport report;
  report.p = p;
  report.dim = dim;

  const CycInt bent_norm = CycInt::integer(p, static_cast<std::int64_t>(ipow(p, dim)));
  const CycInt near_norm = CycInt::integer(p, static_cast<std::int64_t>(ipow(p, dim + 1)));
  bool all_bent = true, all_near = true;
  for (const auto& w : spectrum.coeffs) {
    if (w.is_zero()) {
      all_bent = false;
      continue;
    }
    ++report.support_size;
    const CycInt ns = w.norm_sq();
    if (ns != bent_norm) all_bent = false;
    if (ns != near_norm) all_near = false;
  }
  report.is_bent = all_bent;
  report.is_near_bent = !all_bent && all_near;
  report.shapes.assign(spectrum.coeffs.size(), std::nullopt);
  if (!report.is_bent && !report.is_near_bent) return report;

  const int e = static_cast<int>(report.is_bent ? dim : dim + 1);
  report.log_p_magnitude_x2 = e;
  std::set<Zeta> zetas;
  for (std::size_t b = 0; b < spectrum.coeffs.size(); ++b) {
    const CycInt& w = spectrum.coeffs[b];
    if (w.is_zero()) continue;
    const auto shape = match_shape(w, e);
    if (!shape)
      throw Error(ErrorKind::ShapeMismatch, "coefficient at b = " + std::to_string(b) + " (" + to_string(w) +
                                                ") matches no admissible shape");
    report.shapes[b] = shape;
    zetas.insert(shape->zeta);
    ++report.multiplicities[ShapeClass{shape->zeta, shape->j}];
  }
  if (zetas.size() == 1) {
    const Zeta z = *zetas.begin();
    report.classification = z == Zeta::One ? Classification{Regularity::Regular, std::nullopt}
                                           : Classification{Regularity::WeaklyRegular, z};
  } else {
    report.classification = Classification{Regularity::NonWeaklyRegular, std::nullopt};
  }
  return report;
}

Multiplicities slice_multiplicities(const SpectrumReport& report, const Domain& domain, Fp y) {
  if (!domain.is_product()) throw Error(ErrorKind::ValidationError, "slices are defined for product domains only");
  Multiplicities out;
  for (std::uint64_t a = 0; a < domain.ctx().size(); ++a) {
    const auto& s = report.shapes.at(domain.point(Elem{a}, y));
    if (s) ++out[ShapeClass{s->zeta, s->j}];
  }
  return out;
}

std::optional<Multiplicities> divided_multiplicities(const SpectrumReport& report) {
  Multiplicities out;
  for (const auto& [cls, count] : report.multiplicities) {
    if (count % report.p != 0) return std::nullopt;
    out[cls] = count / report.p;
  }
  return out;
}

}  // namespace bent
