#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qheis/types.hpp"

namespace qheis {

struct SuiteConfig {
  std::vector<double> lambdas{0.0, 0.2, 0.5, -0.5};
  int n = 1;
  TruncationBox box;
  QuadratureSpec quad;
  std::uint64_t seed = 20240601;
  std::vector<std::string> suites;           // empty runs every suite
  std::map<std::string, double> tolerances;  // keyed by suite, identity or "suite/identity"
  std::string report_path;
  std::string csv_path;
  int threads = 0;  // 0: QHEIS_THREADS, else the hardware concurrency

  // Throws std::invalid_argument on unknown suites, non-positive tolerances or bad numerics.
  void validate() const;
};

struct CheckRecord {
  std::string suite;
  std::string identity;
  std::string anchor;  // the identity being checked, written out
  double lambda = 0;
  double residual = 0;  // at the final level; NaN when the check could not run
  double tolerance = 0;
  bool pass = false;
  int level = 0;
  int nodes = 0;  // intervals per axis at the final level, 0 for grid-free checks
  std::vector<double> trend;
  std::vector<int> trend_nodes;  // intervals per axis (or family size) for each trend entry
  int samples = 0;
  std::string note;
  double runtime_s = 0;
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<CheckRecord> records;
  std::map<std::string, std::string> unitaries;  // derived unitary -> how it is composed
  std::size_t passed() const;
  std::size_t failed() const;
  bool overall_pass() const;
};

// Suite names in execution order.
const std::vector<std::string>& suite_names();
std::string suite_description(const std::string& name);

VerificationReport run(const SuiteConfig& config);
// Runs one suite and returns its convergence table; an empty name gives the header only.
std::string convergence_study(SuiteConfig config, const std::string& suite);

inline constexpr const char* kReportSchema = "qheis-report/1";
std::string report_json(const VerificationReport& report, bool include_runtime = true);
std::string convergence_csv(const VerificationReport& report);

// Reads the JSON config format; keys absent from `text` keep the values of `base`.
SuiteConfig config_from_json(const std::string& text, SuiteConfig base = {});
std::string config_json(const SuiteConfig& config);

// Default trend floor: a refined residual already at or below this counts as converged.
inline constexpr double kTrendFloor = 1e-10;

}  // namespace qheis
