#pragma once

// Reproduction harness: runs each reference claim end to end and reports a
// pass/fail verdict with timing.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bent/construct.hpp"

namespace bent::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double ms = 0;
  double budget_ms = 0;
};

struct Options {
  /// Replaces the glued Example 2 table (for checking the harness itself).
  std::optional<PFunction> example2_override;
  /// Restricts the run to these criterion ids; empty runs all.
  std::vector<int> only;
  std::uint64_t seed = 20240917;
};

std::vector<CriterionResult> run_acceptance(const Options& options = {});

/// One line: "[PASS] C1 name (12 ms, budget 30000 ms): detail".
std::string format_line(const CriterionResult& r);

/// Multiplicity tables in the two readings of a count over a product
/// domain: the b = 0 slice, and the full counts divided by p.
enum class Interpretation { Slice, Divided };
std::string_view to_string(Interpretation i);

/// A random quadratic spec on ctx with 1 to 3 terms.
QuadraticSpec random_quadratic(const FieldCtx& ctx, std::mt19937_64& rng);
/// A random near-bent quadratic spec (rejection sampling).
QuadraticSpec random_near_bent(const FieldCtx& ctx, std::mt19937_64& rng);
/// g(gamma x) with gamma chosen so that the kernel becomes {c beta}.
QuadraticSpec rotate_kernel(const QuadraticSpec& g, Elem beta);

}  // namespace bent::verify
