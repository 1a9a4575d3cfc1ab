// Scenario execution: simulate -> synthesize -> attack -> report, with
// artifacts under <out>/<scenario>/<seed>/:
//   trace.sctr, trace.meta.json, report.json, manifest.json
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sculi/accelerator.hpp"
#include "sculi/attack.hpp"
#include "sculi/power_model.hpp"
#include "sculi/scenario.hpp"

namespace sculi::bench {

/// A scenario with its kP already simulated; the activity log is shared by
/// every seed.
struct PreparedScenario {
  Scenario scenario;
  Scalar scalar;
  accel::SimulationResult sim;
};

PreparedScenario prepare(const Scenario& s);

struct Evaluation {
  leakage::Trace trace;
  attack::AttackReport report;
  double dc_offset = 0.0;  // against the laser-off trace with the same seed
};

/// In-memory run for one noise seed.
Evaluation evaluate(const PreparedScenario& p, std::uint64_t seed);
/// Best delta only; skips the laser-off twin.
double best_delta(const PreparedScenario& p, std::uint64_t seed);

struct RunResult {
  std::string scenario;
  std::uint64_t seed = 0;
  leakage::LaserSpec laser;
  double dc_offset = 0.0;
  double delta_best = 0.0;
  std::size_t best_slot = 0;
  bool best_inverted = false;
  std::filesystem::path dir;
};

/// Runs one seed and writes its four artifacts.
RunResult run_once(const PreparedScenario& p, std::uint64_t seed, const std::filesystem::path& out_root);
/// All repeats of a scenario (seeds seed, seed+1, ...).
std::vector<RunResult> run_scenario(const Scenario& s, const std::filesystem::path& out_root);

struct ScenarioSummary {
  std::string scenario;
  std::size_t runs = 0;
  double power_pct = 0.0;
  double diameter_um = 0.0;
  double dc_offset_mean = 0.0;
  double delta_mean = 0.0;
  double delta_std = 0.0;  // population std over repeats
};

struct SweepResult {
  std::vector<RunResult> rows;  // one per scenario x repeat

  std::vector<ScenarioSummary> summary() const;
};

SweepResult run_sweep(const Config& cfg, const std::filesystem::path& out_root);
/// scenario,power_pct,diameter_um,dc_offset,delta_best
std::string sweep_csv(const SweepResult& r);
/// scenario,runs,power_pct,diameter_um,dc_offset_mean,delta_mean,delta_std
std::string summary_csv(const SweepResult& r);

// ---------------------------------------------------------------------------
// Calibration of the noise level against a target delta range.

struct CalibrationOptions {
  double target_lo = 89.0;
  double target_hi = 92.0;
  double sigma_max = 40.0;
  std::size_t n_seeds = 10;
  std::size_t max_evaluations = 24;
};

struct CalibrationPoint {
  double sigma_noise = 0.0;
  double mean_delta = 0.0;
};

struct CalibrationResult {
  Scenario scenario;  // input scenario with the calibrated sigma_noise
  double mean_delta = 0.0;
  std::vector<CalibrationPoint> explored;
};

class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, std::vector<CalibrationPoint> explored);
  const std::vector<CalibrationPoint>& explored() const { return explored_; }

 private:
  std::vector<CalibrationPoint> explored_;
};

/// Mean best delta of `p` over seeds seed_for(0 .. n_seeds-1).
double mean_best_delta(const PreparedScenario& p, std::size_t n_seeds);

/// Bisects sigma_noise in [0, sigma_max] at the scenario's leak weight until
/// the mean best delta over n_seeds lands near the middle of the target
/// range. Throws CalibrationError when the range cannot be reached.
CalibrationResult calibrate(const Scenario& s, const CalibrationOptions& opt = {});

/// Best delta of the scenario for seeds first_seed .. first_seed+n_days-1.
std::vector<double> day_variation(const Scenario& s, std::size_t n_days, std::uint64_t first_seed);
/// max - min; 0 for fewer than two values.
double spread(std::span<const double> deltas);

// ---------------------------------------------------------------------------
// Manifests.

struct Manifest {
  std::string toolkit;
  std::string version;
  std::string config_hash;
  std::string config;  // canonical scenario text
  std::string scenario;
  std::uint64_t seed = 0;
};

std::string manifest_json(const Manifest& m);
/// Throws ConfigError on malformed documents or a hash mismatch.
Manifest parse_manifest(const std::string& text);

struct RerunResult {
  std::filesystem::path report;
  bool identical = false;
};

/// Replays a manifest into `out_root` and compares the new report.json with
/// the one stored next to the manifest.
RerunResult rerun(const std::filesystem::path& manifest_path, const std::filesystem::path& out_root);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

}  // namespace sculi::bench
