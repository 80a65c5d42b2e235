#pragma once

// Experiment driver: each run_* turns a config into a table of records plus a
// summary with pass/fail criteria. Runs are pure functions of the config.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "vilenkin/constructions.hpp"

namespace vilenkin {

enum class WeightMode {
  cone_power,       // sum over the cone of ||S_{k,l} f||_p^p / (kl)^{2-p}
  log_weighted,     // the same times (1 / (log M_N log M_N))^{[p]}
  diagonal,         // (1 / log^{2[p]} M_N) sum_k ||S_{k,k} f||_p^p / k^{4-2p}
  diagonal_series,  // sum_n ||S_{n,n} f||_p / (n^{3-2p} log^{2[p]}(n+1))
};

std::string_view to_string(WeightMode mode);
WeightMode parse_weight_mode(std::string_view text);

enum class Format { csv, json };

struct ExperimentConfig {
  std::string experiment = "strong-sum";
  std::vector<std::string> bases{"2x5"};
  std::vector<int> depths;          // empty: the full length of each base
  double p = 0.75;
  double alpha = 1.0;
  std::vector<double> eps{0.25, 0.5, 1.0};
  int samples = 10;                 // random atoms
  int polynomials = 10;             // random Vilenkin polynomials (convergence)
  std::uint64_t seed = 1;
  WeightMode weight_mode = WeightMode::cone_power;
  Family family = Family::random_atom;
  std::string phi;                  // empty: the family default
  int k_max = 0;                    // 0: every representable k
  std::vector<int> cell_depths;     // lemma1; empty: 1..depth-1
  double growth_floor = 1.5;
  double drift = 2.0;
  int threads = 0;                  // 0: hardware concurrency
};

using Value = std::variant<std::int64_t, double, std::string>;

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunResult {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  std::vector<std::pair<std::string, Value>> summary;
  std::vector<Criterion> criteria;

  bool pass() const;
  /// Column lookup for tests and tools.
  std::size_t column(std::string_view name) const;
};

struct StrongSum {
  double lhs = 0.0;
  double rhs = 0.0;    // ||f||_H^p, or ||f||_H for diagonal-series
  double ratio = 0.0;  // 0 when lhs = 0
};

/// The weighted partial-sum functional of f selected by mode, k, l <= M_N.
StrongSum strong_sum(const GridFunction2D& f, double p, double alpha, WeightMode mode);

RunResult run_strong_summability(const ExperimentConfig& cfg);
RunResult run_sharpness(const ExperimentConfig& cfg);
RunResult run_convergence(const ExperimentConfig& cfg);
RunResult run_lemma1(const ExperimentConfig& cfg);
/// Closed form against direct summation for every kernel index.
RunResult run_kernel_check(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment.
RunResult run_experiment(const ExperimentConfig& cfg);

/// Twelve significant digits, the precision of every emitted number.
std::string format_number(double v);

void emit(const RunResult& result, Format format, std::ostream& out);
void emit(const RunResult& result, Format format, const std::filesystem::path& path);

}  // namespace vilenkin
