#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bent/error.hpp"
#include "bent/json_io.hpp"

using namespace bent;
using io::json;

namespace {

// Runs body, expects an Error of the given kind whose message mentions `needle`.
void expect_error(const std::function<void()>& body, ErrorKind kind, const std::string& needle) {
  try {
    body();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    return;
  }
  ADD_FAILURE() << "no error raised, expected one naming " << needle;
}

}  // namespace

TEST(JsonField, RoundTripKeepsModulus) {
  const FieldCtx ctx = FieldCtx::make(3, 4, PolyFp{2, 0, 0, 1, 1});
  const json j = io::to_json(ctx);
  EXPECT_EQ(j["modulus"], json({2, 0, 0, 1, 1}));
  EXPECT_EQ(io::field_from_json(j), ctx);
  EXPECT_EQ(io::field_from_json(json{{"p", 3}, {"n", 4}}), FieldCtx::make(3, 4));
}

TEST(JsonField, Errors) {
  expect_error([] { io::field_from_json(json{{"n", 2}}); }, ErrorKind::ValidationError, "'p'");
  expect_error([] { io::field_from_json(json{{"p", "3"}, {"n", 2}}); }, ErrorKind::ValidationError, "'p'");
  expect_error([] { io::field_from_json(json{{"p", 3}, {"n", -1}}); }, ErrorKind::ValidationError, "'n'");
  expect_error([] { io::field_from_json(json{{"p", 3}, {"n", 2}, {"modulus", {1, "x", 1}}}); },
               ErrorKind::ValidationError, "modulus[1]");
  expect_error([] { io::field_from_json(json::array()); }, ErrorKind::ValidationError, "<root>");
  expect_error([] { io::field_from_json(json{{"p", 4}, {"n", 2}}); }, ErrorKind::NotPrime, "");
  expect_error([] { io::field_from_json(json{{"p", 3}, {"n", 2}, {"modulus", {2, 0, 1}}}); }, ErrorKind::Reducible, "");
}

TEST(JsonCycInt, RoundTrip) {
  std::mt19937_64 rng(1);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<std::int64_t> c(p);
      for (auto& v : c) v = static_cast<std::int64_t>(rng() % 41) - 20;
      const CycInt a(p, c);
      EXPECT_EQ(io::cyc_int_from_json(io::to_json(a)), a);
    }
  }
  expect_error([] { io::cyc_int_from_json(json{{"p", 3}, {"counts", {1, 2}}}); }, ErrorKind::ValidationError, "'counts'");
  expect_error([] { io::cyc_int_from_json(json{{"p", 3}, {"counts", {1, 2.5, 0}}}); }, ErrorKind::ValidationError,
               "counts[1]");
}

TEST(JsonValueShape, RoundTripAndBadZeta) {
  for (Zeta z : {Zeta::One, Zeta::MinusOne, Zeta::I, Zeta::MinusI}) {
    const ValueShape s{z, 2, 7};
    EXPECT_EQ(io::value_shape_from_json(io::to_json(s)), s);
  }
  EXPECT_EQ(io::to_json(ValueShape{Zeta::MinusI, 1, 9})["zeta"], "-i");
  expect_error([] { io::value_shape_from_json(json{{"zeta", "k"}, {"j", 0}, {"log_p_magnitude_x2", 4}}); },
               ErrorKind::ValidationError, "'zeta'");
  expect_error([] { io::value_shape_from_json(json{{"zeta", 1}, {"j", 0}, {"log_p_magnitude_x2", 4}}); },
               ErrorKind::ValidationError, "'zeta'");
  expect_error([] { io::value_shape_from_json(json{{"zeta", "1"}, {"log_p_magnitude_x2", 4}}); },
               ErrorKind::ValidationError, "'j'");
}

TEST(JsonQuadratic, RoundTripAndInheritedField) {
  const FieldCtx ctx = FieldCtx::make(3, 5);
  const QuadraticSpec g(ctx, {QuadTerm{Elem{7}, 2}, QuadTerm{Elem{1}, 0}}, Elem{100}, 2);
  const json j = io::to_json(g);
  EXPECT_EQ(io::quadratic_from_json(j), g);
  json bare = j;
  bare.erase("p");
  bare.erase("n");
  bare.erase("modulus");
  EXPECT_EQ(io::quadratic_from_json(bare, ctx), g);
  // Exponent indices are reduced mod n; linear part and constant are optional.
  const json wrapped{{"p", 3}, {"n", 5}, {"quad_terms", {{{"a_index", 1}, {"i", 7}}}}};
  EXPECT_EQ(io::quadratic_from_json(wrapped), QuadraticSpec(ctx, {QuadTerm{Elem{1}, 2}}, Elem{0}, 0));
}

TEST(JsonQuadratic, Errors) {
  const FieldCtx ctx = FieldCtx::make(3, 2);
  expect_error([&] { io::quadratic_from_json(json{{"p", 3}, {"n", 2}}); }, ErrorKind::ValidationError, "'quad_terms'");
  expect_error([&] { io::quadratic_from_json(json{{"quad_terms", {{{"a_index", 9}, {"i", 0}}}}}, ctx); },
               ErrorKind::ValidationError, "quad_terms[0].a_index");
  expect_error([&] { io::quadratic_from_json(json{{"quad_terms", {{{"a_index", 1}}}}}, ctx); },
               ErrorKind::ValidationError, "quad_terms[0].i");
  expect_error([&] { io::quadratic_from_json(json{{"quad_terms", json::array()}, {"linear_index", 12}}, ctx); },
               ErrorKind::ValidationError, "'linear_index'");
  expect_error([&] { io::quadratic_from_json(json{{"quad_terms", {{{"a_index", 1}, {"i", 0}}}}, {"p", 5}, {"n", 2}}, ctx); },
               ErrorKind::ValidationError, "differs");
}

TEST(JsonGlued, RoundTripPreservesWitnesses) {
  for (int id = 2; id <= 6; ++id) {
    const GluedSpec spec = build_example(id);
    const json j = io::to_json(spec);
    EXPECT_EQ(j["beta_index"], spec.beta.index);
    const GluedSpec back = io::glued_from_json(j);
    EXPECT_EQ(back.components, spec.components) << id;
    EXPECT_EQ(back.scalars, spec.scalars) << id;
    EXPECT_EQ(back.b_witnesses, spec.b_witnesses) << id;
    EXPECT_EQ(back.beta, spec.beta) << id;
    EXPECT_FALSE(j["components"][0].contains("p"));
  }
}

TEST(JsonGlued, DefaultsAndErrors) {
  json j = io::to_json(build_example(2));
  j.erase("b_indices");
  j.erase("scalars");
  const GluedSpec recomputed = io::glued_from_json(j);
  EXPECT_EQ(recomputed.scalars, (std::vector<Fp>{1, 1, 1}));
  EXPECT_TRUE(witness_condition_holds(recomputed));

  json bad = io::to_json(build_example(2));
  bad["b_indices"][2] = 828;
  expect_error([&] { io::glued_from_json(bad); }, ErrorKind::InvalidWitness, "b_indices[2]");
  bad["b_indices"][2] = 6561;
  expect_error([&] { io::glued_from_json(bad); }, ErrorKind::ValidationError, "b_indices[2]");
  json wrong = io::to_json(build_example(2));
  wrong["components"][1]["quad_terms"][0]["a_index"] = "one";
  expect_error([&] { io::glued_from_json(wrong); }, ErrorKind::ValidationError, "components[1].quad_terms[0].a_index");
  json missing = io::to_json(build_example(2));
  missing.erase("components");
  expect_error([&] { io::glued_from_json(missing); }, ErrorKind::ValidationError, "'components'");
}

TEST(JsonTemplate, ReadsComponents) {
  const FieldCtx ctx = FieldCtx::make(3, 4);
  const QuadraticSpec g = binomial(ctx, 1, 2, 1, BinomialVariant::Plus);
  json j = io::to_json(ctx);
  json c = io::to_json(g);
  j["components"] = json::array({c, c, c});
  const auto comps = io::template_from_json(j);
  ASSERT_EQ(comps.size(), 3u);
  for (const auto& x : comps) EXPECT_EQ(x, g);
}

TEST(JsonPFunction, RoundTripOnBothDomains) {
  std::mt19937_64 rng(2);
  for (bool product : {false, true}) {
    const FieldCtx ctx = FieldCtx::make(5, 2);
    const Domain d = product ? Domain::product(ctx) : Domain::field(ctx);
    std::vector<Fp> table(d.size());
    for (auto& v : table) v = static_cast<Fp>(rng() % 5);
    const PFunction f(d, table);
    const json j = io::to_json(f);
    EXPECT_EQ(j["domain"], product ? "product" : "field");
    const PFunction back = io::pfunction_from_json(j);
    EXPECT_EQ(back.domain().is_product(), product);
    EXPECT_EQ(back.table(), f.table());
  }
}

TEST(JsonPFunction, Errors) {
  const json base{{"p", 3}, {"n", 2}, {"table", std::vector<int>(9, 0)}};
  json shorter = base;
  shorter["table"].erase(0);
  expect_error([&] { io::pfunction_from_json(shorter); }, ErrorKind::ValidationError, "'table'");
  json big = base;
  big["table"][4] = 3;
  expect_error([&] { io::pfunction_from_json(big); }, ErrorKind::ValidationError, "table[4]");
  json negative = base;
  negative["table"][2] = -1;
  expect_error([&] { io::pfunction_from_json(negative); }, ErrorKind::ValidationError, "table[2]");
  json domain = base;
  domain["domain"] = "torus";
  expect_error([&] { io::pfunction_from_json(domain); }, ErrorKind::ValidationError, "'domain'");
  json product = base;
  product["domain"] = "product";
  expect_error([&] { io::pfunction_from_json(product); }, ErrorKind::ValidationError, "expected 27 entries");
}

TEST(JsonParse, MalformedTextIsParseError) {
  expect_error([] { io::parse("{\"p\": 3,"); }, ErrorKind::ParseError, "");
  EXPECT_EQ(io::parse("{\"p\": 3}")["p"], 3);
}

TEST(JsonReport, FieldsAndDual) {
  const FieldCtx ctx = FieldCtx::make(3, 3);
  const SpectrumReport r = analyze(walsh_full(monomial(ctx, Elem{1}, 0).to_table()));
  const json j = io::to_json(r, true);
  EXPECT_EQ(j["p"], 3);
  EXPECT_EQ(j["dim"], 3);
  EXPECT_EQ(j["is_bent"], true);
  EXPECT_EQ(j["support_size"], 27);
  EXPECT_EQ(j["log_p_magnitude_x2"], 3);
  ASSERT_EQ(j["dual"].size(), 27u);
  for (std::uint64_t b = 0; b < 27; ++b) EXPECT_EQ(j["dual"][b], *r.dual(b));
  std::uint64_t total = 0;
  for (const auto& row : j["class_multiplicities"]) total += row["count"].get<std::uint64_t>();
  EXPECT_EQ(total, 27u);
  EXPECT_FALSE(io::to_json(r)["dual"].is_array());
}

TEST(JsonReport, ScanAndCertificate) {
  const FieldCtx ctx = FieldCtx::make(3, 4);
  const QuadraticSpec g = binomial(ctx, 1, 2, 1, BinomialVariant::Plus);
  const json scan = io::to_json(scan_coefficients({g, g, g}, true));
  EXPECT_EQ(scan["tuples"].size(), 8u);
  EXPECT_EQ(scan["counts"]["weakly_regular"], 2);
  EXPECT_EQ(scan["counts"]["non_weakly_regular"], 6);
  EXPECT_EQ(scan["disagreements"], 0);
  EXPECT_TRUE(scan["tuples"][0].contains("spectral"));
  const json cert = io::to_json(certificate(g));
  EXPECT_EQ(cert["s"], 1);
  EXPECT_EQ(cert["kernel_basis"].size(), 1u);
  EXPECT_TRUE(cert.contains("beta_index"));
}

TEST(Csv, OneLinePerCoefficient) {
  const Domain d = Domain::field(FieldCtx::make(3, 2));
  const PFunction f = PFunction::from_fn(d, [](std::uint64_t x) { return static_cast<Fp>(x % 3); });
  const WalshSpectrum w = walsh_full(f);
  std::ostringstream out;
  io::write_spectrum_csv(out, w);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "b_index,counts[0],counts[1],counts[2]");
  std::uint64_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::int64_t> v;
    while (std::getline(cells, cell, ',')) v.push_back(std::stoll(cell));
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(static_cast<std::uint64_t>(v[0]), rows);
    EXPECT_EQ(CycInt(3, {v[1], v[2], v[3]}), w.coeffs[rows]);
    ++rows;
  }
  EXPECT_EQ(rows, 9u);
}
