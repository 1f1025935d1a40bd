#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "bent/cyclotomic.hpp"
#include "bent/error.hpp"

using namespace bent;

namespace {

std::complex<double> numeric(const CycInt& a) {
  std::complex<double> z = 0;
  const auto c = a.counts();
  for (std::size_t j = 0; j < c.size(); ++j)
    z += static_cast<double>(c[j]) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / a.p());
  return z;
}

std::complex<double> numeric(Zeta z) {
  switch (z) {
    case Zeta::One: return {1, 0};
    case Zeta::MinusOne: return {-1, 0};
    case Zeta::I: return {0, 1};
    case Zeta::MinusI: return {0, -1};
  }
  return {};
}

CycInt random_cyc(std::uint32_t p, std::mt19937_64& rng) {
  std::vector<std::int64_t> c(p);
  for (auto& v : c) v = static_cast<std::int64_t>(rng() % 21) - 10;
  return CycInt(p, c);
}

}  // namespace

TEST(CycInt, RootOfUnityRelations) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const CycInt eps = CycInt::eps_power(p, 1);
    EXPECT_EQ(eps * CycInt::eps_power(p, p - 1), CycInt::integer(p, 1));
    EXPECT_EQ(eps.conj(), CycInt::eps_power(p, p - 1));
    CycInt sum(p);
    for (std::uint32_t j = 0; j < p; ++j) sum += CycInt::eps_power(p, j);
    EXPECT_TRUE(sum.is_zero());
    EXPECT_EQ(sum, CycInt(p));
    EXPECT_EQ(CycInt::eps_power(p, p + 2), CycInt::eps_power(p, 2));
  }
}

TEST(CycInt, CanonicalFormHasZeroLastCount) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const CycInt a = random_cyc(5, rng);
    EXPECT_EQ(a.counts().back(), 0);
  }
}

TEST(CycInt, RingLawsAgainstNumericEvaluation) {
  std::mt19937_64 rng(2);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    for (int t = 0; t < 100; ++t) {
      const CycInt a = random_cyc(p, rng), b = random_cyc(p, rng), c = random_cyc(p, rng);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, CycInt(p));
      EXPECT_EQ(-a + a, CycInt(p));
      EXPECT_LT(std::abs(numeric(a * b) - numeric(a) * numeric(b)), 1e-6);
      EXPECT_LT(std::abs(numeric(a.conj()) - std::conj(numeric(a))), 1e-6);
      EXPECT_EQ(a.rotate(3), a * CycInt::eps_power(p, 3));
      EXPECT_EQ(a.scaled(-4), a * CycInt::integer(p, -4));
    }
  }
}

TEST(CycInt, NormIsMultiplicative) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const CycInt a = random_cyc(7, rng), b = random_cyc(7, rng);
    EXPECT_EQ((a * b).norm_sq(), a.norm_sq() * b.norm_sq());
    const auto n = a.norm_sq();
    EXPECT_NEAR(numeric(n).real(), std::norm(numeric(a)), 1e-6);
  }
  EXPECT_EQ(CycInt(3).norm_sq(), CycInt(3));
  EXPECT_EQ(CycInt::eps_power(5, 2, -7).norm_sq(), CycInt::integer(5, 49));
}

TEST(CycInt, AsInteger) {
  EXPECT_EQ(CycInt::integer(5, -12).as_integer(), -12);
  EXPECT_EQ(CycInt::eps_power(5, 1).as_integer(), std::nullopt);
  // 1 + eps + eps^2 = 0 for p = 3, so -eps - eps^2 = 1.
  EXPECT_EQ(CycInt(3, {0, -1, -1}).as_integer(), 1);
}

TEST(CycInt, OverflowIsReported) {
  const CycInt big = CycInt::integer(3, std::int64_t{1} << 40);
  try {
    (void)(big * big);
    FAIL() << "no overflow raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Overflow);
  }
}

TEST(QuadraticCharacter, Values) {
  EXPECT_EQ(eta(3, 1), 1);
  EXPECT_EQ(eta(3, 2), -1);
  EXPECT_EQ(eta(5, 4), 1);
  EXPECT_EQ(eta(5, 2), -1);
  EXPECT_EQ(eta(7, 0), 0);
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    std::vector<int> squares(p, -1);
    squares[0] = 0;
    for (std::uint32_t x = 1; x < p; ++x) squares[x * x % p] = 1;
    for (Fp c = 0; c < p; ++c) EXPECT_EQ(eta(p, c), squares[c]) << p << " " << c;
  }
}

TEST(GaussSum, SquareAndNorm) {
  const CycInt g3 = gauss_sum(3);
  EXPECT_EQ(g3, CycInt(3, {0, 1, -1}));
  EXPECT_EQ(g3 * g3, CycInt::integer(3, -3));
  EXPECT_EQ(gauss_sum(5) * gauss_sum(5), CycInt::integer(5, 5));
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const CycInt g = gauss_sum(p);
    const std::int64_t sign = p % 4 == 1 ? 1 : -1;
    EXPECT_EQ(g * g, CycInt::integer(p, sign * p));
    EXPECT_EQ(g.norm_sq(), CycInt::integer(p, p));
    EXPECT_EQ(g.conj(), g.scaled(eta(p, p - 1)));
  }
}

TEST(ValueShape, KnownExamples) {
  const auto nine_eps = match_shape(CycInt::eps_power(3, 1, 9), 4);
  ASSERT_TRUE(nine_eps);
  EXPECT_EQ(nine_eps->zeta, Zeta::One);
  EXPECT_EQ(nine_eps->j, 1u);

  const auto g9 = match_shape(gauss_sum(3).scaled(9), 5);
  ASSERT_TRUE(g9);
  EXPECT_EQ(g9->zeta, Zeta::I);
  EXPECT_EQ(g9->j, 0u);

  EXPECT_EQ(match_shape(CycInt(3), 4), std::nullopt);
  EXPECT_EQ(match_shape(CycInt::integer(3, 5), 4), std::nullopt);
}

TEST(ValueShape, RoundTripAndNumericValue) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int e = 0; e <= 9; ++e) {
      for (Zeta z : {Zeta::One, Zeta::MinusOne, Zeta::I, Zeta::MinusI}) {
        for (Fp j = 0; j < p; ++j) {
          const ValueShape s{z, j, e};
          const bool imaginary = z == Zeta::I || z == Zeta::MinusI;
          const bool expect_admissible = imaginary == (p % 4 == 3 && e % 2 == 1);
          ASSERT_EQ(admissible(s, p), expect_admissible) << p << " " << e;
          if (!expect_admissible) continue;
          const CycInt w = to_cyc_int(s, p);
          const std::complex<double> want =
              numeric(z) * std::pow(static_cast<double>(p), e / 2.0) * std::polar(1.0, 2 * std::numbers::pi * j / p);
          EXPECT_LT(std::abs(numeric(w) - want), 1e-6 * (1 + std::abs(want)));
          EXPECT_EQ(match_shape(w, e), s);
          EXPECT_EQ(w.norm_sq(), CycInt::integer(p, static_cast<std::int64_t>(std::llround(std::pow(p, e)))));
        }
      }
    }
  }
}

TEST(ValueShape, ZetaStrings) {
  for (Zeta z : {Zeta::One, Zeta::MinusOne, Zeta::I, Zeta::MinusI}) EXPECT_EQ(zeta_from_string(to_string(z)), z);
  EXPECT_EQ(to_string(Zeta::MinusI), "-i");
  EXPECT_EQ(zeta_from_string("j"), std::nullopt);
}
