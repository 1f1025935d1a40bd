// bent: command-line front end for the field, spectrum and construction
// library. Every command prints a JSON run report on stdout.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "bent/error.hpp"
#include "bent/json_io.hpp"
#include "bent/parallel.hpp"
#include "bent/verify.hpp"

namespace {

using bent::io::json;
using Clock = std::chrono::steady_clock;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bent::Error(bent::ErrorKind::ValidationError, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bent::Error(bent::ErrorKind::ValidationError, "cannot write output file '" + path + "'");
  out << text;
}

/// Collects the report of one command: echo, digest, phase timings, result.
class RunReport {
 public:
  explicit RunReport(std::vector<std::string> argv) : argv_(std::move(argv)) {}

  void digest(const std::string& input) { digest_ = sha256_hex(input); }

  template <typename F>
  auto phase(const std::string& name, F&& body) {
    const auto start = Clock::now();
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      timing_[name] = elapsed(start);
    } else {
      auto value = body();
      timing_[name] = elapsed(start);
      return value;
    }
  }

  json& result() { return result_; }

  void print(std::ostream& out) const {
    json report{{"command", argv_}, {"input_digest", digest_}, {"timing_ms", timing_}, {"result", result_}};
    out << report.dump(2) << '\n';
  }

 private:
  static double elapsed(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }

  std::vector<std::string> argv_;
  std::string digest_;
  json timing_ = json::object();
  json result_ = json::object();
};

std::vector<bent::Fp> parse_modulus(const std::string& text) {
  std::vector<bent::Fp> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<bent::Fp>(v));
    } catch (const std::exception&) {
      throw bent::Error(bent::ErrorKind::ValidationError,
                        "field 'modulus': '" + item + "' is not a non-negative integer coefficient");
    }
  }
  return out;
}

// Spectrum, degree and the product-domain count tables of one function.
json spectrum_payload(RunReport& run, const bent::PFunction& f, bool with_dual, const std::string& csv_path) {
  const auto spectrum = run.phase("walsh", [&] { return bent::walsh_full(f); });
  const auto report = run.phase("classify", [&] { return bent::analyze(spectrum); });
  const int degree = run.phase("anf", [&] { return bent::anf(f).degree(); });
  json out = bent::io::to_json(report, with_dual);
  out["algebraic_degree"] = degree;
  out["parseval_holds"] = spectrum.parseval_holds();
  if (f.domain().is_product() && (report.is_bent || report.is_near_bent)) {
    out["slice_b0_multiplicities"] = bent::io::to_json(bent::slice_multiplicities(report, f.domain(), 0));
    if (const auto divided = bent::divided_multiplicities(report))
      out["divided_multiplicities"] = bent::io::to_json(*divided);
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw bent::Error(bent::ErrorKind::ValidationError, "cannot write CSV file '" + csv_path + "'");
    bent::io::write_spectrum_csv(csv, spectrum);
  }
  return out;
}

int cmd_field(RunReport& run, std::uint32_t p, unsigned n, const std::string& modulus_text) {
  std::optional<bent::PolyFp> modulus;
  if (!modulus_text.empty()) modulus = parse_modulus(modulus_text);
  run.digest("field:" + std::to_string(p) + ":" + std::to_string(n) + ":" + modulus_text);
  const auto ctx = run.phase("build", [&] { return bent::FieldCtx::make(p, n, modulus); });
  json& r = run.result();
  r["field"] = bent::io::to_json(ctx);
  r["size"] = ctx.size();
  r["primitive_element_index"] = run.phase("primitive", [&] { return ctx.primitive_element().index; });
  std::vector<std::uint64_t> traces;
  for (unsigned i = 0; i < n; ++i) traces.push_back(ctx.trace(ctx.basis_element(i)));
  r["basis_traces"] = traces;
  return kOk;
}

int cmd_analyze(RunReport& run, const std::string& path, bool with_dual, const std::string& csv_path) {
  const std::string text = read_file(path);
  run.digest(text);
  const json j = run.phase("parse", [&] { return bent::io::parse(text); });
  json& r = run.result();
  std::optional<bent::PFunction> f;
  if (j.is_object() && j.contains("table")) {
    r["input_kind"] = "function";
    f = run.phase("load", [&] { return bent::io::pfunction_from_json(j); });
  } else if (j.is_object() && j.contains("components")) {
    r["input_kind"] = "glued_spec";
    const auto spec = run.phase("arrange", [&] { return bent::io::glued_from_json(j); });
    r["predicted_regularity"] = std::string(bent::to_string(bent::predict_regularity(spec)));
    f = run.phase("glue", [&] { return bent::glue(spec); });
  } else if (j.is_object() && j.contains("quad_terms")) {
    r["input_kind"] = "quadratic_spec";
    const auto spec = run.phase("load", [&] { return bent::io::quadratic_from_json(j); });
    r["certificate"] = bent::io::to_json(run.phase("certificate", [&] { return bent::certificate(spec); }));
    f = run.phase("tabulate", [&] { return spec.to_table(); });
  } else {
    throw bent::Error(bent::ErrorKind::ValidationError,
                      "input must contain 'table' (function), 'components' (glued spec) or 'quad_terms' (quadratic spec)");
  }
  r["report"] = spectrum_payload(run, *f, with_dual, csv_path);
  return kOk;
}

int cmd_construct(RunReport& run, int example, const std::string& spec_path, const std::string& out_path) {
  std::optional<bent::GluedSpec> spec;
  if (!spec_path.empty()) {
    const std::string text = read_file(spec_path);
    run.digest(text);
    const json j = run.phase("parse", [&] { return bent::io::parse(text); });
    spec = run.phase("arrange", [&] { return bent::io::glued_from_json(j); });
  } else {
    if (example < 2 || example > 6)
      throw bent::Error(bent::ErrorKind::ValidationError, "field 'example': expected an id in 2..6, got " + std::to_string(example));
    run.digest("example:" + std::to_string(example));
    spec = run.phase("arrange", [&] { return bent::build_example(example); });
  }
  const auto f = run.phase("glue", [&] { return bent::glue(*spec); });
  const auto predicted = bent::predict_regularity(*spec);
  json& r = run.result();
  r["spec"] = bent::io::to_json(*spec);
  r["predicted_regularity"] = std::string(bent::to_string(predicted));
  json zetas = json::array();
  for (auto z : bent::predicted_zetas(*spec)) zetas.push_back(std::string(bent::to_string(z)));
  r["predicted_component_zetas"] = zetas;
  r["report"] = spectrum_payload(run, f, false, "");
  if (!out_path.empty()) {
    run.phase("write", [&] {
      write_file(out_path, json{{"spec", bent::io::to_json(*spec)}, {"function", bent::io::to_json(f)}}.dump() + "\n");
    });
  }

  const json& report = r["report"];
  const std::string spectral = report["classification"]["kind"];
  const bool weak = spectral == "WeaklyRegular" || spectral == "Regular";
  const bool agree = weak == (predicted == bent::Regularity::WeaklyRegular);
  r["verdicts"] = {{"bent", report["is_bent"]}, {"predictor_agrees", agree}};
  return report["is_bent"].get<bool>() && agree ? kOk : kVerificationFailure;
}

int cmd_scan(RunReport& run, const std::string& path, bool confirm) {
  const std::string text = read_file(path);
  run.digest(text);
  const json j = run.phase("parse", [&] { return bent::io::parse(text); });
  const auto components = run.phase("load", [&] { return bent::io::template_from_json(j); });
  const auto report = run.phase("scan", [&] { return bent::scan_coefficients(components, confirm); });
  run.result() = bent::io::to_json(report);
  return report.disagreements == 0 ? kOk : kVerificationFailure;
}

int cmd_verify(RunReport& run, const std::string& table_path, const std::vector<int>& only) {
  bent::verify::Options options;
  options.only = only;
  if (!table_path.empty()) {
    const std::string text = read_file(table_path);
    run.digest(text);
    options.example2_override = bent::io::pfunction_from_json(bent::io::parse(text));
  } else {
    run.digest("verify-paper");
  }
  const auto results = run.phase("criteria", [&] { return bent::verify::run_acceptance(options); });
  json list = json::array();
  bool ok = true;
  for (const auto& c : results) {
    std::cerr << bent::verify::format_line(c) << '\n';
    list.push_back(json{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"budget_ms", c.budget_ms}});
    ok = ok && c.passed;
  }
  run.result() = json{{"criteria", list}, {"all_passed", ok}};
  return ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh spectra, near-bent quadratics and glued bent functions over F_{p^n}"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (default: BENT_THREADS or all cores)")->check(CLI::PositiveNumber);

  std::uint32_t p = 0;
  unsigned n = 0;
  std::string modulus;
  auto* field = app.add_subcommand("field", "Build F_{p^n} and print its modulus");
  field->add_option("--p", p, "Characteristic")->required();
  field->add_option("--n", n, "Extension degree")->required();
  field->add_option("--modulus", modulus, "Monic modulus coefficients, constant term first (e.g. 1,0,1)");

  std::string input;
  std::string csv;
  bool dual = false;
  auto* analyze = app.add_subcommand("analyze", "Walsh spectrum and classification of a function or spec");
  analyze->add_option("file", input, "JSON function table, quadratic spec or glued spec")->required();
  analyze->add_option("--csv", csv, "Also write the raw spectrum as CSV");
  analyze->add_flag("--dual", dual, "Include the dual function");

  int example = 0;
  std::string spec_path;
  std::string out_path;
  auto* construct = app.add_subcommand("construct", "Glue near-bent components into a bent function");
  auto* example_opt = construct->add_option("--example", example, "Built-in example id (2 to 6)");
  auto* spec_opt = construct->add_option("--spec", spec_path, "Glued spec JSON file");
  example_opt->excludes(spec_opt);
  construct->add_option("--out", out_path, "Write the spec and function table here");

  bool confirm = false;
  auto* scan = app.add_subcommand("scan", "Regularity of every coefficient tuple for a template");
  scan->add_option("file", input, "Template JSON (p, n, components)")->required();
  scan->add_flag("--confirm-spectrum", confirm, "Check every tuple against its full spectrum");

  std::string table;
  std::vector<int> only;
  auto* verify = app.add_subcommand("verify-paper", "Run the reproduction criteria");
  verify->add_option("--table", table, "Replace the Example 2 table with this function JSON");
  verify->add_option("--only", only, "Run only these criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (threads > 0) bent::set_thread_count(threads);
  if (construct->parsed() && example_opt->count() == 0 && spec_opt->count() == 0) {
    std::cerr << "error: construct needs --example or --spec\n";
    return kInputError;
  }

  RunReport run(std::vector<std::string>(argv, argv + argc));
  try {
    int code = kOk;
    if (field->parsed()) code = cmd_field(run, p, n, modulus);
    else if (analyze->parsed()) code = cmd_analyze(run, input, dual, csv);
    else if (construct->parsed()) code = cmd_construct(run, example, spec_path, out_path);
    else if (scan->parsed()) code = cmd_scan(run, input, confirm);
    else if (verify->parsed()) code = cmd_verify(run, table, only);
    run.print(std::cout);
    return code;
  } catch (const bent::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
