// Horizontal single-trace attack on the ladder.
//
// The trace is cut into key-bit windows of 54 cycles. Each cycle is reduced
// to one number (sum of squared samples, or the quiescent static level in
// static-only mode), giving an n_bits x 54 matrix. Slot s then yields one key
// candidate: bit j is 1 when M[j][s] is at or above the column mean.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sculi/power_model.hpp"
#include "sculi/schedule.hpp"

namespace sculi::attack {

inline constexpr std::size_t kDefaultQuiescentWindow = 100;

/// n_bits x cycles_per_bit matrix, row-major.
class CompressedMatrix {
 public:
  CompressedMatrix() = default;
  CompressedMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t j, std::size_t s) const { return values_[j * cols_ + s]; }
  double& operator()(std::size_t j, std::size_t s) { return values_[j * cols_ + s]; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Window geometry. `cycle_offset` whole cycles are skipped before window 0.
struct Framing {
  std::size_t samples_per_cycle = leakage::kSamplesPerCycle;
  std::size_t cycles_per_bit = accel::kCyclesPerBit;
  std::size_t cycle_offset = 0;

  friend bool operator==(const Framing&, const Framing&) = default;
};

/// M[j][s] = sum of squared samples of cycle j * cycles_per_bit + s. Throws
/// std::invalid_argument when the trace is not a whole number of windows.
CompressedMatrix compress(std::span<const float> samples, const Framing& framing = {});
/// M[j][s] = mean of the last `quiescent_window` samples of the cycle.
CompressedMatrix static_compress(std::span<const float> samples,
                                 std::size_t quiescent_window = kDefaultQuiescentWindow,
                                 const Framing& framing = {});

struct KeyCandidate {
  std::size_t slot = 0;
  std::vector<std::uint8_t> bits;
  bool inverted = false;
  std::optional<double> correctness_pct;

  /// Complemented bits; a scored twin gets 100 - delta.
  KeyCandidate inverted_twin() const;
  /// Candidate bits as lowercase hex, MSB first, left-padded to whole nibbles.
  std::string bits_hex() const;
};

/// One candidate per column; ties with the column mean give bit 1.
std::vector<KeyCandidate> comparison_to_mean(const CompressedMatrix& m);

/// 100 * matching bits / n. Throws std::invalid_argument on length mismatch.
double score(std::span<const std::uint8_t> candidate, std::span<const std::uint8_t> truth);
/// Scores `c` in place and returns its inverted twin, also scored.
KeyCandidate score(KeyCandidate& c, std::span<const std::uint8_t> truth);

enum class Mode { Dynamic, StaticOnly };
std::string_view mode_name(Mode m);

struct AttackOptions {
  Mode mode = Mode::Dynamic;
  std::size_t quiescent_window = kDefaultQuiescentWindow;
  bool allow_inversion = true;
  Framing framing{};

  friend bool operator==(const AttackOptions&, const AttackOptions&) = default;
};

struct AttackReport {
  AttackOptions options;
  std::vector<KeyCandidate> candidates;  // one per slot, raw polarity
  std::vector<double> delta_raw;         // per slot; empty without ground truth
  std::vector<double> delta_inverted;
  std::optional<KeyCandidate> best;
  leakage::TraceMeta meta;

  bool scored() const { return !delta_raw.empty(); }
};

/// Highest-scoring candidate over the raw candidates, plus their inverted
/// twins when `allow_inversion`. Lowest slot wins ties, raw before inverted.
/// Throws std::invalid_argument for an empty or unscored report.
KeyCandidate best_candidate(const AttackReport& report, bool allow_inversion);

/// Compress, extract, and (when `truth` is given) score.
AttackReport run_attack(std::span<const float> samples, const AttackOptions& options,
                        std::optional<std::span<const std::uint8_t>> truth = std::nullopt);
/// Uses the trace's sidecar scalar as ground truth when present.
AttackReport run_attack(const leakage::Trace& trace, const AttackOptions& options);

/// Scores candidates against `truth` and fills delta tables and best.
AttackReport make_report(std::vector<KeyCandidate> candidates, const AttackOptions& options,
                         std::optional<std::span<const std::uint8_t>> truth);

}  // namespace sculi::attack
