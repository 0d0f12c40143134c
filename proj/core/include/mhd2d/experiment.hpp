#ifndef MHD2D_EXPERIMENT_HPP
#define MHD2D_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/diophantine.hpp"
#include "mhd2d/integrator.hpp"

namespace mhd2d {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int modes_per_dim = 64;
  std::string n_name = "golden";  // "golden", "noble", or "custom"
  Vec2 n = golden_vector();
  double r = 2.0;
  double alpha = 0.5;
  double beta = 0.5;
  double n_sob = 15.0;
  std::vector<double> gamma_list{5.5, 8.0, 10.0};
  double epsilon = 1e-3;
  double t_end = 50.0;
  double sample_interval = 0.1;
  double cfl = 0.4;
  double dt_max = 0.05;
  double dt_min = 1e-9;
  double fit_t_min = 5.0;
  std::uint64_t seed = 1;
  bool allow_resonant = false;
  int dioph_K = 0;  // 0 -> smallest K covering the lattice radius
  std::string output_dir = ".";
  std::string csv_path;      // default <output_dir>/series.csv
  std::string summary_path;  // default <output_dir>/summary.json

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
  ProofParams proof_params() const;
  int effective_dioph_K() const;
};

/// Flat key=value file; '#' starts a comment. Unknown keys are rejected.
std::map<std::string, std::string> read_config_entries(const std::string& path);
void apply_entry(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig config_from_entries(const std::map<std::string, std::string>& entries);

/// Seeded random initial data: spectral profile (1+|k|^2)^{-(N+2)/2} with
/// random phases, Leray-projected, mean-zero, scaled so
/// |u|_{H^N} + |b|_{H^N} = epsilon.
FlowState synthesize_initial_data(const RunConfig& cfg);

enum class FitStatus { ok, below_floor, too_few_samples };

struct FitResult {
  FitStatus status = FitStatus::too_few_samples;
  double exponent = 0.0;
  double stderr_ = 0.0;
  bool super_polynomial = false;  // slope steeper than any plausible power law
};

/// Least-squares slope of log(q) vs log(1+t) over t >= t_min.
/// Values at or below the 1e-14 floor make the fit refuse (below_floor);
/// otherwise nonpositive values are an error.
FitResult fit_decay(const std::vector<double>& times,
                    const std::vector<double>& values, double t_min);

struct GammaFit {
  double gamma;
  FitResult fit;
  double predicted_bound;  // -(N-gamma)(beta+1)/(N-r-alpha-3)
};

struct RunSummary {
  RunConfig config;
  DiophantineCertificate certificate;
  double a_weight = 0.0;
  double final_l2_u = 0.0, final_l2_b = 0.0;
  double final_h_n_u = 0.0, final_h_n_b = 0.0;
  double sup_h_n = 0.0;  // sup over samples of |u|_{H^N} + |b|_{H^N}
  std::vector<GammaFit> fits;
  std::size_t violation_count = 0;
  bool resonant_override = false;
  double wall_clock_seconds = 0.0;
};

struct RunResult {
  std::vector<EnergySample> samples;
  RunSummary summary;
  FlowState final_state;
};

/// Full pipeline: certificate, initial data, time integration with sampling,
/// monitor, decay fits, CSV + JSON summary (written atomically).
RunResult run_simulation(const RunConfig& cfg);

void write_series_csv(const std::string& path, const std::vector<EnergySample>& samples,
                      const std::vector<double>& gamma_list);
void write_summary_json(const std::string& path, const RunSummary& summary);
std::string certificate_json(const DiophantineCertificate& cert);

// ---- checkpoints ----------------------------------------------------------

struct CheckpointFormatError : IoError {
  using IoError::IoError;
};
struct CheckpointTruncatedError : IoError {
  using IoError::IoError;
};
struct CheckpointInvariantError : IoError {
  using IoError::IoError;
};

void checkpoint_write(const FlowState& state, const std::string& path);
FlowState checkpoint_read(const std::string& path,
                          std::optional<int> expect_modes = {});

// ---- verification driver --------------------------------------------------

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
};

/// Randomized property suites over every module; used by the `verify`
/// subcommand.
std::vector<SuiteResult> verify_all(std::uint64_t seed = 1);

/// (t, value) pairs of one named column of a series CSV.
std::vector<std::pair<double, double>> read_csv_column(const std::string& path,
                                                       const std::string& column);

/// Random divergence-free mean-zero pair for tests and the cancellations
/// subcommand.
SpectralVector2 random_divfree_field(WaveLattice lat, std::uint64_t seed,
                                     double decay_exponent = 4.0);

}  // namespace mhd2d

#endif
