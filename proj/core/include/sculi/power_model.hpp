// Activity log + laser settings -> sampled power trace.
//
// Per cycle c, block b and sample s:
//   dynamic = w_dyn * gate(b) * toggles(c,b) * kernel(s)
//   static  = i_static0 * (state_bits(b) + gamma(b) * stored_weight(c,b))
//                       * (1 + alpha * absorbed_power(b))
// Register, multiplexer and controller activity (the key-dependent
// addressing path) is scaled by leak_weight. Per-key-bit baseline jitter
// (std `drift`) and white Gaussian noise are added on top. The laser only
// touches the static term.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sculi/accelerator.hpp"
#include "sculi/floorplan.hpp"

namespace sculi::leakage {

inline constexpr std::size_t kSamplesPerCycle = 1250;
inline constexpr double kSampleRate = 5.0e9;

/// Storage bits of a block (data-independent static load).
std::uint32_t state_bits(accel::BlockId b);

struct PowerParams {
  double w_dyn = 1.0;
  double i_static0 = 0.05;
  std::array<double, accel::kBlockCount> gamma{0.02, 0.02, 0.02, 0.02, 0.02};
  double alpha = 0.02;
  double eta = 0.5;
  double sigma_noise = 0.0;
  double drift = 0.0;
  double leak_weight = 1.0;
  std::array<double, accel::kBlockCount> gate_weight{10, 1, 6, 2, 1};
  double kernel_decay = 150.0;  // samples

  double gamma_of(accel::BlockId b) const { return gamma[accel::index(b)]; }
  void set_gamma(double g) { gamma.fill(g); }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// exp(-s / kernel_decay) for s in [0, kSamplesPerCycle); peak 1 at s = 0.
  std::vector<double> kernel() const;

  friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

struct TraceMeta {
  std::uint64_t seed = 0;
  LaserSpec laser;
  std::string scenario_id;
  std::optional<std::string> scalar_hex;  // ground truth, simulated traces only
};

struct Trace {
  double sample_rate = kSampleRate;
  double clock_hz = accel::kClockHz;
  std::vector<float> samples;
  TraceMeta meta;

  std::size_t samples_per_cycle() const {
    return static_cast<std::size_t>(sample_rate / clock_hz + 0.5);
  }
  std::size_t cycles() const { return samples.size() / samples_per_cycle(); }
};

/// Deterministic in (log, params, spec, plan, seed).
Trace synthesize_trace(const accel::ActivityLog& log, const PowerParams& params, const LaserSpec& spec,
                       const Floorplan& plan, std::uint64_t seed);

/// Synthesizes cycles [first, first + out.size() / kSamplesPerCycle) into
/// `out`. Noise comes from a generator keyed by (seed, cycle), so any split
/// into ranges reproduces synthesize_trace bit for bit.
void synthesize_cycles(const accel::ActivityLog& log, const PowerParams& params, const LaserSpec& spec,
                       const Floorplan& plan, std::uint64_t seed, std::size_t first, std::span<float> out);

/// Noise-free static level of a cycle (the flat part of every sample).
double static_level(const accel::ActivityLog& log, const PowerParams& params,
                    const std::array<double, accel::kBlockCount>& absorbed, std::size_t cycle);

/// mean(t) - mean(reference).
double dc_offset(const Trace& t, const Trace& reference);
double mean(std::span<const float> samples);

}  // namespace sculi::leakage
