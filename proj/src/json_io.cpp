#include "bent/json_io.hpp"

#include <ostream>

#include "bent/error.hpp"

namespace bent::io {
namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ValidationError, "field '" + field + "': " + what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) invalid(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::int64_t as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) invalid(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t as_uint(const json& v, const std::string& field) {
  const std::int64_t x = as_int(v, field);
  if (x < 0) invalid(field, "expected a non-negative integer");
  return static_cast<std::uint64_t>(x);
}

const json& as_array(const json& v, const std::string& field) {
  if (!v.is_array()) invalid(field, "expected an array");
  return v;
}

// p, n and optional modulus of an object that describes its own field.
FieldCtx field_of(const json& j, const std::string& path) {
  const auto p = as_uint(require(j, "p", path), join(path, "p"));
  const auto n = as_uint(require(j, "n", path), join(path, "n"));
  if (p > 0xFFFFFFFFu) invalid(join(path, "p"), "too large");
  if (n > 64) invalid(join(path, "n"), "too large");
  std::optional<PolyFp> modulus;
  if (const auto it = j.find("modulus"); it != j.end() && !it->is_null()) {
    const std::string field = join(path, "modulus");
    PolyFp m;
    for (std::size_t i = 0; i < as_array(*it, field).size(); ++i)
      m.push_back(static_cast<Fp>(as_uint((*it)[i], field + "[" + std::to_string(i) + "]")));
    modulus = std::move(m);
  }
  return FieldCtx::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(n), modulus);
}

Elem element(const json& v, const FieldCtx& ctx, const std::string& field) {
  const Elem e{as_uint(v, field)};
  if (!ctx.contains(e)) invalid(field, "index " + std::to_string(e.index) + " is outside F_" +
                                           std::to_string(ctx.p()) + "^" + std::to_string(ctx.n()));
  return e;
}

QuadraticSpec quadratic_at(const json& j, const std::optional<FieldCtx>& inherited, const std::string& path) {
  if (!j.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
  FieldCtx ctx = inherited ? *inherited : field_of(j, path);
  if (inherited && j.contains("p")) {
    const FieldCtx own = field_of(j, path);
    if (!(own == ctx)) invalid(path, "field description differs from the enclosing spec");
  }
  const std::string terms_path = join(path, "quad_terms");
  std::vector<QuadTerm> terms;
  const json& arr = as_array(require(j, "quad_terms", path), terms_path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string item = terms_path + "[" + std::to_string(k) + "]";
    const Elem a = element(require(arr[k], "a_index", item), ctx, item + ".a_index");
    const auto i = as_uint(require(arr[k], "i", item), item + ".i");
    terms.push_back(QuadTerm{a, static_cast<unsigned>(i % ctx.n())});
  }
  Elem linear{0};
  if (j.contains("linear_index")) linear = element(j["linear_index"], ctx, join(path, "linear_index"));
  Fp constant = 0;
  if (j.contains("constant")) constant = static_cast<Fp>(as_uint(j["constant"], join(path, "constant")) % ctx.p());
  return QuadraticSpec(ctx, std::move(terms), linear, constant);
}

std::vector<QuadraticSpec> components_of(const json& j, const FieldCtx& ctx) {
  std::vector<QuadraticSpec> out;
  const json& arr = as_array(require(j, "components", ""), "components");
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(quadratic_at(arr[k], ctx, "components[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

json to_json(const FieldCtx& ctx) { return json{{"p", ctx.p()}, {"n", ctx.n()}, {"modulus", ctx.modulus()}}; }

FieldCtx field_from_json(const json& j) { return field_of(j, ""); }

json to_json(const CycInt& a) {
  return json{{"p", a.p()}, {"counts", std::vector<std::int64_t>(a.counts().begin(), a.counts().end())}};
}

CycInt cyc_int_from_json(const json& j) {
  const auto p = as_uint(require(j, "p", ""), "p");
  std::vector<std::int64_t> counts;
  const json& arr = as_array(require(j, "counts", ""), "counts");
  for (std::size_t i = 0; i < arr.size(); ++i) counts.push_back(as_int(arr[i], "counts[" + std::to_string(i) + "]"));
  if (counts.size() != p) invalid("counts", "expected " + std::to_string(p) + " entries");
  return CycInt(static_cast<std::uint32_t>(p), std::move(counts));
}

json to_json(const ValueShape& s) {
  return json{{"zeta", std::string(to_string(s.zeta))}, {"j", s.j}, {"log_p_magnitude_x2", s.log_p_magnitude_x2}};
}

ValueShape value_shape_from_json(const json& j) {
  const json& z = require(j, "zeta", "");
  if (!z.is_string()) invalid("zeta", "expected one of \"1\", \"-1\", \"i\", \"-i\"");
  const auto zeta = zeta_from_string(z.get<std::string>());
  if (!zeta) invalid("zeta", "expected one of \"1\", \"-1\", \"i\", \"-i\"");
  return ValueShape{*zeta, static_cast<Fp>(as_uint(require(j, "j", ""), "j")),
                    static_cast<int>(as_int(require(j, "log_p_magnitude_x2", ""), "log_p_magnitude_x2"))};
}

json to_json(const QuadraticSpec& spec) {
  json terms = json::array();
  for (const auto& t : spec.quad_terms()) terms.push_back(json{{"a_index", t.a.index}, {"i", t.i}});
  return json{{"p", spec.field().p()},
              {"n", spec.field().n()},
              {"modulus", spec.field().modulus()},
              {"quad_terms", terms},
              {"linear_index", spec.linear().index},
              {"constant", spec.constant()}};
}

QuadraticSpec quadratic_from_json(const json& j, const std::optional<FieldCtx>& field) { return quadratic_at(j, field, ""); }

json to_json(const GluedSpec& spec) {
  json comps = json::array();
  for (const auto& c : spec.components) {
    json q = to_json(c);
    q.erase("p");
    q.erase("n");
    q.erase("modulus");
    comps.push_back(q);
  }
  std::vector<std::uint64_t> b;
  for (auto e : spec.b_witnesses) b.push_back(e.index);
  return json{{"p", spec.field.p()},   {"n", spec.field.n()},          {"modulus", spec.field.modulus()},
              {"components", comps},   {"scalars", spec.scalars},       {"b_indices", b},
              {"beta_index", spec.beta.index}};
}

GluedSpec glued_from_json(const json& j) {
  const FieldCtx ctx = field_of(j, "");
  auto components = components_of(j, ctx);
  std::vector<Fp> scalars;
  if (j.contains("scalars")) {
    const json& arr = as_array(j["scalars"], "scalars");
    for (std::size_t k = 0; k < arr.size(); ++k)
      scalars.push_back(static_cast<Fp>(as_uint(arr[k], "scalars[" + std::to_string(k) + "]")));
  } else {
    scalars.assign(components.size(), 1);
  }
  std::optional<std::vector<Elem>> witnesses;
  if (j.contains("b_indices") && !j["b_indices"].is_null()) {
    const json& arr = as_array(j["b_indices"], "b_indices");
    std::vector<Elem> b;
    for (std::size_t k = 0; k < arr.size(); ++k) b.push_back(element(arr[k], ctx, "b_indices[" + std::to_string(k) + "]"));
    witnesses = std::move(b);
  }
  return arrange(components, scalars, witnesses);
}

std::vector<QuadraticSpec> template_from_json(const json& j) {
  const FieldCtx ctx = field_of(j, "");
  return components_of(j, ctx);
}

json to_json(const PFunction& f) {
  const Domain& d = f.domain();
  return json{{"p", d.p()},
              {"n", d.ctx().n()},
              {"modulus", d.ctx().modulus()},
              {"domain", d.is_product() ? "product" : "field"},
              {"table", f.table()}};
}

PFunction pfunction_from_json(const json& j) {
  const FieldCtx ctx = field_of(j, "");
  bool product = false;
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_string() || (d != "field" && d != "product")) invalid("domain", "expected \"field\" or \"product\"");
    product = d == "product";
  }
  const Domain domain = product ? Domain::product(ctx) : Domain::field(ctx);
  const json& arr = as_array(require(j, "table", ""), "table");
  if (arr.size() != domain.size())
    invalid("table", "expected " + std::to_string(domain.size()) + " entries, got " + std::to_string(arr.size()));
  std::vector<Fp> table(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto v = as_uint(arr[i], "table[" + std::to_string(i) + "]");
    if (v >= ctx.p()) invalid("table[" + std::to_string(i) + "]", "value " + std::to_string(v) + " is not in [0, p)");
    table[i] = static_cast<Fp>(v);
  }
  return PFunction(domain, std::move(table));
}

json to_json(const Multiplicities& m) {
  json out = json::array();
  for (const auto& [cls, count] : m)
    out.push_back(json{{"zeta", std::string(to_string(cls.zeta))}, {"j", cls.j}, {"count", count}});
  return out;
}

json to_json(const Classification& c) {
  json out{{"kind", std::string(to_string(c.kind))}};
  if (c.zeta) out["zeta"] = std::string(to_string(*c.zeta));
  return out;
}

json to_json(const SpectrumReport& report, bool include_dual) {
  json out{{"p", report.p},
           {"dim", report.dim},
           {"is_bent", report.is_bent},
           {"is_near_bent", report.is_near_bent},
           {"support_size", report.support_size},
           {"classification", to_json(report.classification)},
           {"class_multiplicities", to_json(report.multiplicities)}};
  if (report.log_p_magnitude_x2) out["log_p_magnitude_x2"] = *report.log_p_magnitude_x2;
  if (include_dual) {
    json dual = json::array();
    for (std::uint64_t b = 0; b < report.shapes.size(); ++b) {
      const auto d = report.dual(b);
      dual.push_back(d ? json(*d) : json(nullptr));
    }
    out["dual"] = dual;
  }
  return out;
}

json to_json(const NearBentCertificate& cert) {
  json basis = json::array();
  for (auto e : cert.kernel_basis) basis.push_back(e.index);
  json out{{"s", cert.s}, {"kernel_basis", basis}};
  if (cert.beta) out["beta_index"] = cert.beta->index;
  return out;
}

json to_json(const ScanReport& report) {
  json tuples = json::array();
  for (const auto& t : report.tuples) {
    json row{{"scalars", t.scalars}, {"predicted", std::string(to_string(t.predicted))}};
    if (t.spectral) {
      row["spectral"] = to_json(*t.spectral);
      row["agree"] = t.agree;
    }
    tuples.push_back(row);
  }
  return json{{"tuples", tuples},
              {"counts", {{"weakly_regular", report.weakly_regular}, {"non_weakly_regular", report.non_weakly_regular}}},
              {"confirmed_by_spectrum", report.confirmed},
              {"disagreements", report.disagreements}};
}

void write_spectrum_csv(std::ostream& out, const WalshSpectrum& spectrum) {
  out << "b_index";
  for (std::uint32_t j = 0; j < spectrum.domain.p(); ++j) out << ",counts[" << j << "]";
  out << '\n';
  for (std::uint64_t b = 0; b < spectrum.coeffs.size(); ++b) {
    out << b;
    for (auto c : spectrum.coeffs[b].counts()) out << ',' << c;
    out << '\n';
  }
}

}  // namespace bent::io
