#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "filldist/combinatorics.hpp"

namespace filldist {

enum class Mode { Sample, Spectra, Fill, Embed, Certificate, Sweep };

enum class OutputFormat { Csv, Json };

/// Probability specification: an explicit p, or an exponent ε resolved
/// per n as p = n^{ε−1} (clamped into [0,1]).
struct PSpec {
  enum class Kind { Explicit, Exponent };
  Kind kind = Kind::Explicit;
  double value = 0.5;

  double resolve(int n) const;
};

struct ExperimentConfig {
  Mode mode = Mode::Sweep;
  std::vector<int> n_values;
  PSpec p_spec;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int ambient_dim = 0;  // 0 → dimension n per trial
  std::string output_path;  // empty → caller decides (CLI prints)
  OutputFormat format = OutputFormat::Csv;
  int threads = 1;
  std::optional<std::string> complex_path;    // load instead of sampling
  std::optional<std::string> embedding_path;  // fixed embedding
};

/// One Monte Carlo trial.  Fields a mode does not compute stay null;
/// null is also how vacuous quantities (obstructed certificate, nothing
/// feasible) are reported, never a sentinel number.
struct ExperimentRecord {
  std::uint64_t seed = 0;
  int trial_index = 0;
  int n = 0;
  std::optional<double> p;
  std::optional<index_t> face_count;
  std::optional<index_t> min_edge_degree;
  std::optional<double> lambda1;
  std::optional<double> normalized_lambda1;
  std::optional<index_t> betti1;
  std::optional<index_t> min_fill;
  std::optional<double> sum_fill_sq;
  std::optional<index_t> infeasible_count;
  std::optional<double> certificate;
  std::optional<double> triangle_distortion;
  std::optional<bool> inequality_holds;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

/// Splittable child seed: derive(derive(master, n), trial).  Substream 1
/// of the trial seed feeds the sampler, substream 2 the embedding, so
/// skipping either never shifts the other.
std::uint64_t trial_seed(std::uint64_t master_seed, int n, int trial_index);

/// Checks the file-independent invariants; throws InvalidParameter.
void validate_config(const ExperimentConfig& config);

/// Runs all (n, trial) tasks, possibly on a thread pool, and returns
/// records ordered by (n ascending, trial ascending) regardless of
/// execution order.  Per-trial obstructions become null fields.
std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);
std::string records_to_json(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> parse_records_json(const std::string& text);

void write_records(const std::vector<ExperimentRecord>& records,
                   const std::string& path, OutputFormat format);

}  // namespace filldist
