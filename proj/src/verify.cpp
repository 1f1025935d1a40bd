#include "bent/verify.hpp"

#include <algorithm>
#include <chrono>
#include <complex>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "bent/error.hpp"
#include "bent/parallel.hpp"

namespace bent::verify {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (!passed) detail << "; ";
    else detail.str("");
    passed = false;
    detail << what;
  }
  void note(const std::string& what) {
    if (passed) detail << (detail.tellp() > 0 ? "; " : "") << what;
  }
};

Multiplicities classes(std::initializer_list<std::tuple<Zeta, Fp, std::uint64_t>> items) {
  Multiplicities m;
  for (const auto& [z, j, c] : items) m[ShapeClass{z, j}] = c;
  return m;
}

std::set<ShapeClass> value_set(const Multiplicities& m) {
  std::set<ShapeClass> out;
  for (const auto& [cls, count] : m)
    if (count > 0) out.insert(cls);
  return out;
}

std::string describe(const Multiplicities& m) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [cls, count] : m) {
    out << (first ? "" : ", ") << to_string(cls.zeta) << "*e^" << cls.j << ": " << count;
    first = false;
  }
  out << '}';
  return out.str();
}

std::string describe(const Classification& c) {
  std::string s(to_string(c.kind));
  if (c.zeta) s += "(" + std::string(to_string(*c.zeta)) + ")";
  return s;
}

// Multiplicity table in a given reading, if it exists.
std::optional<Multiplicities> read_counts(const SpectrumReport& report, const Domain& domain, Interpretation how) {
  if (how == Interpretation::Slice) return slice_multiplicities(report, domain, 0);
  return divided_multiplicities(report);
}

struct Analysis {
  SpectrumReport report;
  bool parseval = false;
  int degree = -1;
};

Analysis analyze_function(const PFunction& f, bool with_degree) {
  const WalshSpectrum spectrum = walsh_full(f);
  Analysis a{analyze(spectrum), spectrum.parseval_holds(), -1};
  if (with_degree) a.degree = anf(f).degree();
  return a;
}

const Multiplicities kExample2 = classes({{Zeta::MinusI, 0, 2187}, {Zeta::MinusI, 1, 2268}, {Zeta::MinusI, 2, 2106}});
const Multiplicities kExample3 = classes({{Zeta::I, 1, 702},
                                          {Zeta::I, 2, 756},
                                          {Zeta::MinusI, 0, 1458},
                                          {Zeta::I, 0, 729},
                                          {Zeta::MinusI, 2, 1404},
                                          {Zeta::MinusI, 1, 1512}});

struct Shared {
  std::vector<Interpretation> matching;  // readings under which Example 2 matched
};

void check_example_2(const Options& options, Shared& shared, Outcome& out) {
  const GluedSpec spec = build_example(2);
  const PFunction f = options.example2_override ? *options.example2_override : glue(spec);
  const Domain expected = Domain::product(spec.field);
  if (!(f.domain() == expected)) {
    out.fail("table is not on F_{3^8} x F_3");
    return;
  }
  const Analysis a = analyze_function(f, true);
  if (!a.parseval) out.fail("Parseval identity fails");
  if (!a.report.is_bent) out.fail("not bent");
  if (a.degree != 4) out.fail("algebraic degree " + std::to_string(a.degree) + ", expected 4");
  const Classification want{Regularity::WeaklyRegular, Zeta::MinusI};
  if (a.report.classification != want) out.fail("classification " + describe(a.report.classification) + ", expected WeaklyRegular(-i)");
  if (value_set(a.report.multiplicities) != value_set(kExample2))
    out.fail("value set " + describe(a.report.multiplicities) + " differs from {-i, -i*e, -i*e^2}");

  for (Interpretation how : {Interpretation::Slice, Interpretation::Divided}) {
    const auto counts = a.report.is_bent ? read_counts(a.report, f.domain(), how) : std::nullopt;
    if (counts && *counts == kExample2) shared.matching.push_back(how);
  }
  if (shared.matching.empty()) {
    const auto slice = slice_multiplicities(a.report, f.domain(), 0);
    out.fail("multiplicities match under no reading; slice " + describe(slice));
  } else {
    out.note("degree 4, WeaklyRegular(-i), counts " + describe(kExample2) + " matched by the " +
             std::string(to_string(shared.matching.front())) + " reading");
    if (shared.matching.size() > 1) out.note("also matched by the other reading");
  }
}

void check_example_3(Shared& shared, Outcome& out) {
  const GluedSpec spec = build_example(3);
  const PFunction f = glue(spec);
  const Analysis a = analyze_function(f, false);
  if (!a.parseval) out.fail("Parseval identity fails");
  if (!a.report.is_bent) out.fail("not bent");
  if (a.report.classification.kind != Regularity::NonWeaklyRegular)
    out.fail("classification " + describe(a.report.classification) + ", expected NonWeaklyRegular");
  std::vector<Interpretation> readings = shared.matching;
  if (readings.empty()) {
    out.fail("no reading resolved by the Example 2 check");
    return;
  }
  bool matched = false;
  for (Interpretation how : readings) {
    const auto counts = read_counts(a.report, f.domain(), how);
    if (counts && *counts == kExample3) {
      matched = true;
      out.note("six classes " + describe(kExample3) + " matched by the " + std::string(to_string(how)) + " reading");
      break;
    }
  }
  if (!matched) out.fail("counts " + describe(*read_counts(a.report, f.domain(), readings.front())) + " differ");
}

void check_examples_4_5_6(Outcome& out) {
  const auto fig4 = value_set(kExample2);
  const auto fig6 = value_set(kExample3);
  for (int id : {4, 5, 6}) {
    const GluedSpec spec = build_example(id);
    const PFunction f = glue(spec);
    const Analysis a = analyze_function(f, id == 6);
    const std::string tag = "Example " + std::to_string(id) + ": ";
    if (!a.parseval) out.fail(tag + "Parseval identity fails");
    if (!a.report.is_bent) out.fail(tag + "not bent");
    const auto values = value_set(a.report.multiplicities);
    if (id == 4) {
      if (a.report.classification.kind != Regularity::WeaklyRegular) out.fail(tag + describe(a.report.classification));
      if (values != fig4) out.fail(tag + "value set " + describe(a.report.multiplicities));
    } else if (id == 5) {
      if (a.report.classification.kind != Regularity::NonWeaklyRegular) out.fail(tag + describe(a.report.classification));
      if (values != fig6) out.fail(tag + "value set " + describe(a.report.multiplicities));
    } else {
      if (spec.field.p() != 3 || spec.field.n() != 5 || f.dim() != 6) out.fail(tag + "wrong domain");
      if (a.report.classification.kind != Regularity::WeaklyRegular) out.fail(tag + describe(a.report.classification));
      if (a.degree != 4) out.fail(tag + "degree " + std::to_string(a.degree));
    }
    if (out.passed) out.note(tag + describe(a.report.classification));
  }
}

void check_monomials(Outcome& out) {
  std::uint64_t checked = 0;
  for (auto [p, max_n] : {std::pair{3u, 6u}, std::pair{5u, 4u}}) {
    for (unsigned n = 1; n <= max_n; ++n) {
      const FieldCtx ctx = FieldCtx::make(p, n);
      std::vector<unsigned> bad(ctx.size() * n, 0);
      parallel_for(ctx.size() - 1, [&](std::size_t k) {
        const Elem a{k + 1};
        for (unsigned r = 0; r < n; ++r) bad[k * n + r] = certificate(monomial(ctx, a, r)).s == 1;
      });
      for (unsigned b : bad) {
        if (b) out.fail("near-bent monomial found for p = " + std::to_string(p) + ", n = " + std::to_string(n));
      }
      checked += (ctx.size() - 1) * n;
    }
  }
  out.note(std::to_string(checked) + " monomials, none with kernel dimension 1");
}

void check_binomial_criteria(Outcome& out) {
  std::uint64_t checked = 0;
  std::uint64_t near_bent = 0;
  for (auto [p, max_n] : {std::pair{3u, 8u}, std::pair{5u, 5u}}) {
    for (unsigned n = 2; n <= max_n; ++n) {
      const FieldCtx ctx = FieldCtx::make(p, n);
      struct Case { unsigned r, t; BinomialVariant v; };
      std::vector<Case> cases;
      for (unsigned r = 1; r < n; ++r)
        for (unsigned t = 0; t < r; ++t)
          for (auto v : {BinomialVariant::Minus, BinomialVariant::Plus}) cases.push_back({r, t, v});
      std::vector<int> verdict(cases.size());
      parallel_for(cases.size(), [&](std::size_t i) {
        const auto& c = cases[i];
        const bool oracle = certificate(binomial(ctx, 1, c.r, c.t, c.v)).s == 1;
        const bool formula = binomial_near_bent(p, n, c.r, c.t, c.v);
        verdict[i] = (oracle == formula ? 0 : 1) | (oracle ? 2 : 0);
      });
      for (std::size_t i = 0; i < cases.size(); ++i) {
        if (verdict[i] & 1)
          out.fail("p = " + std::to_string(p) + ", n = " + std::to_string(n) + ", (r, t) = (" + std::to_string(cases[i].r) +
                   ", " + std::to_string(cases[i].t) + ")" + (cases[i].v == BinomialVariant::Plus ? " plus" : " minus"));
        if (verdict[i] & 2) ++near_bent;
      }
      checked += cases.size();
    }
  }
  out.note(std::to_string(checked) + " binomials (" + std::to_string(near_bent) + " near-bent), zero disagreements");
}

void check_scan(unsigned n, BinomialVariant variant, std::uint64_t want_weak, Outcome& out) {
  const FieldCtx ctx = FieldCtx::make(3, n);
  const QuadraticSpec g = binomial(ctx, 1, 2, 1, variant);
  const ScanReport report = scan_coefficients({g, g, g}, true);
  std::uint64_t spectral_weak = 0;
  for (const auto& t : report.tuples) {
    if (t.spectral && (t.spectral->kind == Regularity::WeaklyRegular || t.spectral->kind == Regularity::Regular)) ++spectral_weak;
  }
  const std::uint64_t total = report.tuples.size();
  if (total != 8) out.fail("expected 8 tuples, got " + std::to_string(total));
  if (report.weakly_regular != want_weak)
    out.fail("predictor: " + std::to_string(report.weakly_regular) + " weakly regular, expected " + std::to_string(want_weak));
  if (spectral_weak != want_weak)
    out.fail("spectra: " + std::to_string(spectral_weak) + " weakly regular, expected " + std::to_string(want_weak));
  if (report.disagreements != 0) out.fail(std::to_string(report.disagreements) + " predictor/spectrum disagreements");
  out.note("weakly regular " + std::to_string(report.weakly_regular) + ", non-weakly regular " +
           std::to_string(report.non_weakly_regular) + " (predictor and spectra)");
}

std::vector<std::pair<unsigned, unsigned>> valid_pairs(std::uint32_t p, unsigned n, BinomialVariant v) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned r = 1; r < n; ++r)
    for (unsigned t = 0; t < r; ++t)
      if (binomial_near_bent(p, n, r, t, v)) out.emplace_back(r, t);
  return out;
}

GluedSpec random_glued(const FieldCtx& ctx, std::mt19937_64& rng) {
  const std::uint32_t p = ctx.p();
  const BinomialVariant variant = ctx.n() % 2 == 0 ? BinomialVariant::Plus : BinomialVariant::Minus;
  const auto pairs = valid_pairs(p, ctx.n(), variant);
  std::uniform_int_distribution<Fp> unit(1, p - 1);
  std::uniform_int_distribution<Fp> any(0, p - 1);
  std::uniform_int_distribution<std::uint64_t> elem(0, ctx.size() - 1);

  const auto draw = [&]() -> QuadraticSpec {
    if (rng() % 2 == 0) {
      const auto [r, t] = pairs[rng() % pairs.size()];
      return binomial(ctx, unit(rng), r, t, variant);
    }
    return random_near_bent(ctx, rng);
  };
  const QuadraticSpec first = draw();
  const Elem beta = *certificate(first).beta;
  std::vector<QuadraticSpec> components;
  std::vector<Fp> scalars;
  for (std::uint32_t k = 0; k < p; ++k) {
    const QuadraticSpec g = k == 0 ? first : rotate_kernel(draw(), beta);
    const QuadraticSpec with_affine(ctx, g.quad_terms(), Elem{elem(rng)}, any(rng));
    components.push_back(with_affine);
    scalars.push_back(unit(rng));
  }
  return arrange(components, scalars);
}

void check_random_glue(std::uint64_t seed, Outcome& out) {
  constexpr int kSpecs = 60;
  std::mt19937_64 rng(seed);
  std::vector<GluedSpec> specs;
  const FieldCtx f4 = FieldCtx::make(3, 4);
  const FieldCtx f5 = FieldCtx::make(3, 5);
  for (int i = 0; i < kSpecs; ++i) specs.push_back(random_glued(i % 2 == 0 ? f4 : f5, rng));

  std::vector<int> result(specs.size());  // bit 0: disagreement, bit 1: weak, bit 2: not bent, bit 3: parseval
  parallel_for(specs.size(), [&](std::size_t i) {
    const Regularity predicted = predict_regularity(specs[i]);
    const WalshSpectrum spectrum = walsh_full(glue(specs[i]));
    const SpectrumReport report = analyze(spectrum);
    const bool weak = report.classification.kind == Regularity::WeaklyRegular || report.classification.kind == Regularity::Regular;
    result[i] = (weak != (predicted == Regularity::WeaklyRegular) ? 1 : 0) | (weak ? 2 : 0) | (report.is_bent ? 0 : 4) |
                (spectrum.parseval_holds() ? 0 : 8);
  });
  int weak = 0;
  for (std::size_t i = 0; i < result.size(); ++i) {
    if (result[i] & 1) out.fail("spec " + std::to_string(i) + ": predictor disagrees with the spectrum");
    if (result[i] & 4) out.fail("spec " + std::to_string(i) + ": glued function not bent");
    if (result[i] & 8) out.fail("spec " + std::to_string(i) + ": Parseval identity fails");
    if (result[i] & 2) ++weak;
  }
  out.note(std::to_string(kSpecs) + " random specs agree (" + std::to_string(weak) + " weakly regular, " +
           std::to_string(kSpecs - weak) + " not)");
}

void check_properties(std::uint64_t seed, Outcome& out) {
  std::mt19937_64 rng(seed);
  std::uint64_t spectra = 0;

  // Fast transform against the defining sum.
  for (auto [p, n] : {std::pair{3u, 2u}, std::pair{3u, 3u}, std::pair{5u, 2u}}) {
    const Domain d = Domain::field(FieldCtx::make(p, n));
    std::uniform_int_distribution<Fp> value(0, p - 1);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Fp> table(d.size());
      for (auto& v : table) v = value(rng);
      const PFunction f(d, table);
      const WalshSpectrum fast = walsh_full(f);
      ++spectra;
      if (!fast.parseval_holds()) out.fail("Parseval fails for a random function on F_" + std::to_string(p) + "^" + std::to_string(n));
      for (std::uint64_t b = 0; b < d.size(); ++b) {
        if (!(fast.coeffs[b] == walsh_naive(f, b))) {
          out.fail("fast and naive transforms differ on F_" + std::to_string(p) + "^" + std::to_string(n));
          break;
        }
      }
    }
  }

  // Gauss sums, in exact arithmetic and numerically.
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const CycInt g = gauss_sum(p);
    const std::int64_t want = (p % 4 == 1) ? std::int64_t{p} : -std::int64_t{p};
    if (!(g * g == CycInt::integer(p, want))) out.fail("g^2 != " + std::to_string(want) + " for p = " + std::to_string(p));
    std::complex<double> z = 0;
    for (std::uint32_t j = 1; j < p; ++j) {
      const Fp r = fp_pow(j, (p - 1) / 2, p);
      z += (r == 1 ? 1.0 : -1.0) * std::polar(1.0, 2 * std::numbers::pi * j / p);
    }
    if (std::abs(z * z - std::complex<double>(static_cast<double>(want), 0)) > 1e-9)
      out.fail("numeric Gauss sum mismatch for p = " + std::to_string(p));
  }

  // Scaling law and support size on random near-bent specs.
  int scaling_checks = 0;
  for (unsigned n : {3u, 4u, 5u}) {
    for (std::uint32_t p : {3u, 5u}) {
      if (p == 5 && n == 5) continue;
      const FieldCtx ctx = FieldCtx::make(p, n);
      std::uniform_int_distribution<Fp> unit(1, p - 1);
      for (int trial = 0; trial < 20; ++trial) {
        const QuadraticSpec g = random_near_bent(ctx, rng);
        const Fp c = unit(rng);
        const int expected = (n - 1) % 2 == 0 ? delta_eta(g) : eta(p, c) * delta_eta(g);
        if (delta_eta(g.scaled(c)) != expected) out.fail("scaling law fails on F_" + std::to_string(p) + "^" + std::to_string(n));
        const WalshSpectrum spectrum = walsh_full(g.to_table());
        ++spectra;
        if (!spectrum.parseval_holds()) out.fail("Parseval fails for a near-bent spec");
        const SpectrumReport report = analyze(spectrum);
        if (!report.is_near_bent || report.support_size != ctx.size() / p)
          out.fail("near-bent support " + std::to_string(report.support_size) + " on F_" + std::to_string(p) + "^" + std::to_string(n));
        ++scaling_checks;
      }
    }
  }

  // Discriminant independence of the exponent pair.
  int exponent_pairs = 0;
  for (unsigned n : {5u, 7u}) {
    const FieldCtx ctx = FieldCtx::make(3, n);
    const auto pairs = valid_pairs(3, n, BinomialVariant::Minus);
    std::set<Fp> deltas;
    std::set<int> etas;
    for (auto [r, t] : pairs) {
      deltas.insert(circulant_delta(3, n, r, t));
      etas.insert(delta_eta(binomial(ctx, 1, r, t, BinomialVariant::Minus)));
    }
    if (deltas.size() != 1) out.fail("Delta depends on the exponent pair for n = " + std::to_string(n));
    if (etas.size() != 1 || (deltas.size() == 1 && eta(3, *deltas.begin()) != *etas.begin()))
      out.fail("eta(Delta) of the forms disagrees with the eigenvalue product for n = " + std::to_string(n));
    exponent_pairs += static_cast<int>(pairs.size());
  }

  out.note(std::to_string(spectra) + " spectra with Parseval, 150 fast/naive comparisons, 5 Gauss sums, " +
           std::to_string(scaling_checks) + " scaling checks, " + std::to_string(exponent_pairs) + " exponent pairs");
}

}  // namespace

std::string_view to_string(Interpretation i) { return i == Interpretation::Slice ? "b = 0 slice" : "full counts / p"; }

QuadraticSpec random_quadratic(const FieldCtx& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> nonzero(1, ctx.size() - 1);
  const unsigned terms = 1 + static_cast<unsigned>(rng() % 3);
  std::vector<QuadTerm> quad;
  for (unsigned k = 0; k < terms; ++k) quad.push_back(QuadTerm{Elem{nonzero(rng)}, static_cast<unsigned>(rng() % ctx.n())});
  return QuadraticSpec(ctx, std::move(quad));
}

QuadraticSpec random_near_bent(const FieldCtx& ctx, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    QuadraticSpec g = random_quadratic(ctx, rng);
    if (certificate(g).s == 1) return g;
  }
  throw Error(ErrorKind::ValidationError, "no near-bent quadratic found by sampling");
}

QuadraticSpec rotate_kernel(const QuadraticSpec& g, Elem beta) {
  const FieldCtx& ctx = g.field();
  const auto cert = certificate(g);
  if (cert.s != 1) throw Error(ErrorKind::NotNearBent, "kernel dimension " + std::to_string(cert.s));
  // ker g(gamma x) = gamma^{-1} ker g.
  const Elem gamma = ctx.mul(*cert.beta, ctx.inv(beta));
  std::vector<QuadTerm> terms;
  for (const auto& t : g.quad_terms()) {
    const Elem factor = ctx.mul(ctx.frobenius(gamma, t.i), gamma);
    terms.push_back(QuadTerm{ctx.mul(t.a, factor), t.i});
  }
  return QuadraticSpec(ctx, std::move(terms), ctx.mul(g.linear(), gamma), g.constant());
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "[PASS] " : "[FAIL] ") << 'C' << r.id << ' ' << r.name << " (" << static_cast<long long>(r.ms)
      << " ms, budget " << static_cast<long long>(r.budget_ms) << " ms): " << r.detail;
  return out.str();
}

std::vector<CriterionResult> run_acceptance(const Options& options) {
  Shared shared;
  struct Criterion {
    int id;
    const char* name;
    double budget_ms;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Example 2 reconstruction", 30'000, [&](Outcome& o) { check_example_2(options, shared, o); }},
      {2, "Example 3 reconstruction", 30'000, [&](Outcome& o) { check_example_3(shared, o); }},
      {3, "Examples 4, 5, 6", 10'000, [&](Outcome& o) { check_examples_4_5_6(o); }},
      {4, "quadratic monomials are never near-bent", 60'000, [&](Outcome& o) { check_monomials(o); }},
      {5, "binomial gcd criteria vs kernel dimension", 60'000, [&](Outcome& o) { check_binomial_criteria(o); }},
      {6, "coefficient scan p = 3, n = 4, plus (2, 1)", 10'000, [&](Outcome& o) { check_scan(4, BinomialVariant::Plus, 2, o); }},
      {7, "coefficient scan p = 3, n = 5, minus (2, 1)", 10'000, [&](Outcome& o) { check_scan(5, BinomialVariant::Minus, 8, o); }},
      {8, "discriminant predictor vs spectra on random glued specs", 120'000,
       [&](Outcome& o) { check_random_glue(options.seed, o); }},
      {9, "property suite", 120'000, [&](Outcome& o) { check_properties(options.seed + 1, o); }},
  };

  std::vector<CriterionResult> results;
  for (const auto& c : criteria) {
    // Criterion 2 reuses the reading resolved by criterion 1.
    const bool selected = options.only.empty() || std::ranges::find(options.only, c.id) != options.only.end();
    const bool needed = c.id == 1 && !options.only.empty() && std::ranges::find(options.only, 2) != options.only.end();
    if (!selected && !needed) continue;
    Outcome outcome;
    const auto start = Clock::now();
    try {
      c.run(outcome);
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (ms > c.budget_ms) outcome.fail("over the time budget");
    if (selected) results.push_back(CriterionResult{c.id, c.name, outcome.passed, outcome.detail.str(), ms, c.budget_ms});
  }
  return results;
}

}  // namespace bent::verify
