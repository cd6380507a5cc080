#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "stirling/complex.hpp"
#include "stirling/counting.hpp"
#include "stirling/homology.hpp"
#include "stirling/tree.hpp"

namespace stirling {

using Json = nlohmann::ordered_json;

/// Exact integers go out as JSON numbers when they fit in 64 bits, as
/// decimal strings otherwise.
Json to_json(const BigCount& value);

/// Rank of the reduced homology expected for k parts:
/// f(k, n) for k >= 2, and 0 for k <= 1 (a cone, or all of T^n).
BigCount expected_sphere_count(int k, int n);

struct VerifyOptions {
  std::vector<std::uint32_t> primes{2, kDefaultLargePrime};
  std::size_t max_cells = kDefaultMaxCells;
  /// Above this many cells only counts and Euler characteristics are checked.
  std::size_t homology_max_cells = 500'000;
  std::size_t snf_max_columns = kDefaultSnfMaxColumns;
  bool check_snf = true;
  bool check_chain_axiom = true;
  bool check_decomposition = true;
};

struct InstanceReport {
  Json payload;  // deterministic
  Json timings;  // wall-clock milliseconds, kept apart from the payload
  bool passed = false;
  bool skipped = false;
  FVector f_vector;
  std::vector<std::vector<std::uint64_t>> betti;  // one per prime
};

/// Runs every applicable check on Str(T, family, n). Instances whose
/// enumeration exceeds the cell cap come back skipped, not failed.
InstanceReport verify_instance(const SubtreeFamily& family, int n, const VerifyOptions& options);

/// f(m, n) by all three routes plus Euler characteristic and cell counts.
Json count_report(int m, int n, bool& consistent);

Json decomposition_json(const DecompositionReport& report);

struct SuiteRequest {
  int m_min = 2;
  int m_max = 4;
  /// n runs over [n_min, n_max] if `relative` is false, else [m + n_min, m + n_max].
  int n_min = 0;
  int n_max = 2;
  bool relative = true;
  /// Family applied to every tree, in parse_family_spec syntax.
  std::string family_spec = "all";
  /// Trees per m when m > kExhaustiveTreeLimit.
  std::size_t sample = 16;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

inline constexpr int kExhaustiveTreeLimit = 5;

struct SuiteResult {
  std::vector<InstanceReport> instances;
  std::vector<Json> summaries;  // one per (m, n): tree independence
  bool passed = true;
};

/// Every tree on m vertices (a seeded sample past kExhaustiveTreeLimit)
/// times every n in range. Output order is independent of `jobs`.
SuiteResult verify_suite(const SuiteRequest& request, const VerifyOptions& options);

}  // namespace stirling
