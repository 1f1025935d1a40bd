#pragma once

// JSON (and CSV) encodings of fields, ring elements, functions, specs and
// reports. Readers throw ParseError / ValidationError naming the field.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bent/construct.hpp"

namespace bent::io {

using nlohmann::json;

json to_json(const FieldCtx& ctx);
FieldCtx field_from_json(const json& j);

json to_json(const CycInt& a);
CycInt cyc_int_from_json(const json& j);

json to_json(const ValueShape& s);
ValueShape value_shape_from_json(const json& j);

json to_json(const QuadraticSpec& spec);
/// Reads p / n / modulus from j, or inherits them from `field` when given.
QuadraticSpec quadratic_from_json(const json& j, const std::optional<FieldCtx>& field = std::nullopt);

json to_json(const GluedSpec& spec);
/// Runs arrange(); b_indices are validated when present, recomputed otherwise.
GluedSpec glued_from_json(const json& j);
/// {"p", "n", "modulus"?, "components": [...]} for coefficient scans.
std::vector<QuadraticSpec> template_from_json(const json& j);

json to_json(const PFunction& f);
PFunction pfunction_from_json(const json& j);

json to_json(const Multiplicities& m);
json to_json(const Classification& c);
json to_json(const SpectrumReport& report, bool include_dual = false);
json to_json(const NearBentCertificate& cert);
json to_json(const ScanReport& report);

/// One line per coefficient: b_index,counts[0],...,counts[p-1].
void write_spectrum_csv(std::ostream& out, const WalshSpectrum& spectrum);

json parse(const std::string& text);

}  // namespace bent::io
