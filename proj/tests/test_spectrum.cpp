#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bent/quadratic.hpp"
#include "bent/spectrum.hpp"

using namespace bent;

namespace {

PFunction random_function(const Domain& d, std::mt19937_64& rng) {
  std::vector<Fp> table(d.size());
  for (auto& v : table) v = static_cast<Fp>(rng() % d.p());
  return PFunction(d, table);
}

// Direct character sum, with the pairing written out from field operations.
CycInt oracle_coefficient(const PFunction& f, std::uint64_t b) {
  const Domain& d = f.domain();
  const FieldCtx& ctx = d.ctx();
  const std::uint32_t p = d.p();
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint64_t x = 0; x < d.size(); ++x) {
    Fp pairing = ctx.trace(ctx.mul(d.field_part(b), d.field_part(x)));
    pairing = (pairing + d.y_part(b) * d.y_part(x)) % p;
    ++counts[(f(x) + p - pairing) % p];
  }
  return CycInt(p, counts);
}

CycInt power_of_p(std::uint32_t p, unsigned e) {
  std::int64_t v = 1;
  for (unsigned i = 0; i < e; ++i) v *= p;
  return CycInt::integer(p, v);
}

}  // namespace

TEST(Pairing, BasicValuesAndNonDegeneracy) {
  const Domain f9 = Domain::field(FieldCtx::make(3, 2));
  EXPECT_EQ(inner_product(f9, 1, 1), 2u);
  const Domain f27 = Domain::field(FieldCtx::make(3, 3));
  for (std::uint64_t a = 0; a < f27.size(); ++a) EXPECT_EQ(inner_product(f27, a, 0), 0u);
  for (std::uint64_t a = 1; a < f27.size(); ++a) {
    bool nonzero = false;
    for (std::uint64_t x = 0; x < f27.size() && !nonzero; ++x) nonzero = inner_product(f27, a, x) != 0;
    EXPECT_TRUE(nonzero) << a;
  }
  const Domain prod = Domain::product(FieldCtx::make(3, 2));
  const std::uint64_t a = prod.point(Elem{4}, 2), x = prod.point(Elem{7}, 2);
  const FieldCtx& ctx = prod.ctx();
  EXPECT_EQ(inner_product(prod, a, x), (ctx.trace(ctx.mul(Elem{4}, Elem{7})) + 4) % 3);
  EXPECT_EQ(prod.sub(prod.add(a, x), x), a);
}

TEST(Walsh, ZeroAndLinearFunctions) {
  const Domain d = Domain::product(FieldCtx::make(3, 2));
  const PFunction zero(d, std::vector<Fp>(d.size(), 0));
  const WalshSpectrum w = walsh_full(zero);
  EXPECT_EQ(walsh_naive(zero, 0), power_of_p(3, 3));
  for (std::uint64_t b = 1; b < d.size(); ++b) {
    EXPECT_TRUE(walsh_naive(zero, b).is_zero());
    EXPECT_TRUE(w.coeffs[b].is_zero());
  }
  const std::uint64_t c = d.point(Elem{5}, 1);
  const PFunction linear = PFunction::from_fn(d, [&](std::uint64_t x) { return inner_product(d, c, x); });
  const WalshSpectrum wl = walsh_full(linear);
  for (std::uint64_t b = 0; b < d.size(); ++b)
    EXPECT_EQ(wl.coeffs[b], b == c ? power_of_p(3, 3) : CycInt(3));
}

TEST(Walsh, FastMatchesNaiveAndOracle) {
  std::mt19937_64 rng(1);
  const std::vector<Domain> domains = {Domain::field(FieldCtx::make(3, 2)), Domain::field(FieldCtx::make(3, 3)),
                                       Domain::field(FieldCtx::make(5, 2)), Domain::product(FieldCtx::make(3, 2)),
                                       Domain::product(FieldCtx::make(5, 2)), Domain::field(FieldCtx::make(7, 2))};
  for (const Domain& d : domains) {
    for (int t = 0; t < 50; ++t) {
      const PFunction f = random_function(d, rng);
      const WalshSpectrum w = walsh_full(f);
      ASSERT_EQ(w.coeffs.size(), d.size());
      EXPECT_TRUE(w.parseval_holds());
      for (std::uint64_t b = 0; b < d.size(); ++b) {
        ASSERT_EQ(w.coeffs[b], walsh_naive(f, b));
        ASSERT_EQ(w.coeffs[b], oracle_coefficient(f, b));
      }
    }
  }
}

TEST(Walsh, FourierInversion) {
  std::mt19937_64 rng(2);
  const Domain d = Domain::product(FieldCtx::make(3, 2));
  const PFunction f = random_function(d, rng);
  const WalshSpectrum w = walsh_full(f);
  for (std::uint64_t x = 0; x < d.size(); ++x) {
    CycInt sum(3);
    for (std::uint64_t b = 0; b < d.size(); ++b) sum += w.coeffs[b].rotate(inner_product(d, b, x));
    EXPECT_EQ(sum, CycInt::eps_power(3, f(x), 27));
  }
}

TEST(Walsh, ShiftProperty) {
  std::mt19937_64 rng(3);
  const Domain d = Domain::field(FieldCtx::make(3, 3));
  for (int t = 0; t < 20; ++t) {
    const PFunction f = random_function(d, rng);
    EXPECT_TRUE(shift_property_check(f, 0));
    const std::uint64_t c = rng() % d.size();
    EXPECT_TRUE(shift_property_check(f, c));
    // The multiset of coefficients is preserved.
    const PFunction shifted = PFunction::from_fn(d, [&](std::uint64_t x) { return (f(x) + inner_product(d, c, x)) % 3; });
    auto a = walsh_full(f).coeffs, b = walsh_full(shifted).coeffs;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(Walsh, NearBentExampleComponent) {
  const FieldCtx ctx = FieldCtx::make(3, 8);
  const PFunction g = binomial(ctx, 1, 2, 1, BinomialVariant::Plus).to_table();
  const WalshSpectrum w = walsh_full(g);
  std::uint64_t support = 0;
  for (const auto& c : w.coeffs) {
    const CycInt n = c.norm_sq();
    ASSERT_TRUE(n.is_zero() || n == power_of_p(3, 9));
    support += !n.is_zero();
  }
  EXPECT_EQ(support, 2187u);
  const SpectrumReport r = analyze(w);
  EXPECT_TRUE(r.is_near_bent);
  EXPECT_FALSE(r.is_bent);
  EXPECT_EQ(r.support_size, 2187u);
  EXPECT_EQ(r.log_p_magnitude_x2, 9);
}

TEST(Classify, ZeroFunctionIsNeither) {
  const Domain d = Domain::field(FieldCtx::make(3, 2));
  const SpectrumReport r = analyze(walsh_full(PFunction(d, std::vector<Fp>(9, 0))));
  EXPECT_FALSE(r.is_bent);
  EXPECT_FALSE(r.is_near_bent);
  EXPECT_EQ(r.support_size, 1u);
  EXPECT_EQ(r.classification.kind, Regularity::NotApplicable);
  EXPECT_EQ(r.log_p_magnitude_x2, std::nullopt);
}

TEST(Classify, QuadraticBentIsWeaklyRegularWithBentDual) {
  for (auto [p, n] : {std::pair{3u, 2u}, std::pair{3u, 3u}, std::pair{5u, 2u}, std::pair{7u, 3u}}) {
    const FieldCtx ctx = FieldCtx::make(p, n);
    const QuadraticSpec f = monomial(ctx, Elem{1}, 0);  // Tr(x^2)
    ASSERT_EQ(certificate(f).s, 0u);
    const SpectrumReport r = analyze(walsh_full(f.to_table()));
    EXPECT_TRUE(r.is_bent);
    EXPECT_TRUE(r.classification.kind == Regularity::Regular || r.classification.kind == Regularity::WeaklyRegular);
    // The dual of a weakly regular bent function is bent.
    std::vector<Fp> dual(ctx.size());
    for (std::uint64_t b = 0; b < ctx.size(); ++b) dual[b] = *r.dual(b);
    EXPECT_TRUE(analyze(walsh_full(PFunction(Domain::field(ctx), dual))).is_bent);
    std::uint64_t total = 0;
    for (const auto& [cls, count] : r.multiplicities) total += count;
    EXPECT_EQ(total, ctx.size());
  }
}

TEST(Classify, RegularMeansUnitPhase) {
  // Tr(x^2) on F_{3^2}: p = 3 mod 4 and n even give zeta = +-1.
  const FieldCtx ctx = FieldCtx::make(3, 2);
  const SpectrumReport r = analyze(walsh_full(monomial(ctx, Elem{1}, 0).to_table()));
  const Zeta z = r.shapes[0]->zeta;
  EXPECT_TRUE(z == Zeta::One || z == Zeta::MinusOne);
  for (const auto& s : r.shapes) EXPECT_EQ(s->zeta, z);
  if (z == Zeta::One) {
    EXPECT_EQ(r.classification.kind, Regularity::Regular);
  } else {
    EXPECT_EQ(r.classification.kind, Regularity::WeaklyRegular);
    EXPECT_EQ(r.classification.zeta, z);
  }
}

TEST(Classify, SliceAndDividedCountsOnProductDomain) {
  // Tr(x^2) + y^2 on F_{3^2} x F_3 is a quadratic bent function.
  const FieldCtx ctx = FieldCtx::make(3, 2);
  const Domain d = Domain::product(ctx);
  const PFunction f = PFunction::from_fn(d, [&](std::uint64_t pt) {
    const Elem x = d.field_part(pt);
    const Fp y = d.y_part(pt);
    return (ctx.trace(ctx.mul(x, x)) + y * y) % 3;
  });
  const SpectrumReport r = analyze(walsh_full(f));
  ASSERT_TRUE(r.is_bent);
  std::uint64_t slice_total = 0;
  for (const auto& [cls, count] : slice_multiplicities(r, d, 0)) slice_total += count;
  EXPECT_EQ(slice_total, 9u);
  const auto divided = divided_multiplicities(r);
  if (divided) {
    std::uint64_t total = 0;
    for (const auto& [cls, count] : *divided) total += count;
    EXPECT_EQ(total, 9u);
  }
}
