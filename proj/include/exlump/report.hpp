#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "exlump/chain.hpp"

namespace exlump {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { Text, Json };

struct ReportConfig {
  std::string input;
  Format format = Format::Text;
  std::uint64_t seed = 0;
  bool curry = true;
  FieldLimits limits;
  /// Include wall-clock phase timings (makes output run dependent).
  bool stats = false;
};

struct ReportEntry {
  std::size_t dimension = 0;
  Field field;
  /// n x m lumping matrix; its columns define the macro-variables.
  SparseMat lumping;
  std::vector<MultiPoly> rhs;
  /// A with L_prev = L * A; empty for the first entry.
  SparseMat refinement;
  std::string provenance;
};

struct RunStatistics {
  std::size_t dimension = 0;
  std::size_t total = 0;
  std::size_t nonequivalent = 0;
  std::map<std::string, double> seconds;
};

struct ReduceResult {
  ODEModel model;
  std::vector<ReportEntry> chain;
  RunStatistics statistics;
  std::vector<std::string> diagnostics;
};

/// Runs the full reduction on a parsed model; every entry is verified.
ReduceResult reduce_model(const ODEModel& model, const ReportConfig& cfg);

/// Names of the macro-variables of chain entry i (1-based): y_i_1, y_i_2, ...
std::vector<std::string> macro_names(std::size_t entry, std::size_t m);

std::string render_text(const ReduceResult& r, const ReportConfig& cfg);
std::string render_json(const ReduceResult& r, const ReportConfig& cfg);

struct ReduceOutput {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Exit codes: 0 success, 2 parse error, 3 search diagnostic, 4 I/O.
ReduceOutput run_reduce(const ReportConfig& cfg);

struct BenchmarkRecord {
  std::string path;
  std::size_t dimension = 0;
  std::size_t total = 0;
  std::size_t nonequivalent = 0;
  double seconds = 0;
};

struct BenchmarkRow {
  std::string bucket;
  std::size_t count = 0;
  double avg_total = 0, avg_noneq = 0, min_s = 0, avg_s = 0, max_s = 0;
};

struct BenchmarkResult {
  std::vector<BenchmarkRecord> records;
  std::vector<BenchmarkRow> rows;
  std::vector<std::string> failures;
};

/// Dimension bucket label: 2-9, 10-19, 20-29, 30-39, 40-59, 60-79, 80-99,
/// 100-133, or "other".
std::string bucket_of(std::size_t dimension);

/// Reduces every regular file in dir (sorted by name) with currying on.
/// Failures are recorded and skipped.
BenchmarkResult benchmark(const std::string& dir, std::uint64_t seed, const FieldLimits& limits = {});
std::string benchmark_table(const BenchmarkResult& b);
std::string benchmark_csv(const BenchmarkResult& b);

}  // namespace exlump
