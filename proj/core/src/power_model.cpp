#include "sculi/power_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "sculi/binary_field.hpp"

namespace sculi::leakage {

using accel::BlockId;
using accel::kBlockCount;

namespace {

constexpr std::uint32_t kNoiseStream = 0x6e6f6973;  // "nois"
constexpr std::uint32_t kDriftStream = 0x64726674;  // "drft"

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint32_t stream, std::uint64_t counter) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream,
                    static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
  return std::mt19937_64(seq);
}

bool on_address_path(BlockId b) {
  return b == BlockId::Registers || b == BlockId::Multiplexer || b == BlockId::Controller;
}

std::array<double, kBlockCount> absorbed_by_block(const PowerParams& params, const LaserSpec& spec,
                                                  const Floorplan& plan) {
  std::array<double, kBlockCount> a{};
  for (auto b : accel::kAllBlocks) a[accel::index(b)] = absorbed_power(spec, plan, b, params.eta);
  return a;
}

// Baseline jitter: an independent offset per key-bit window.
std::vector<double> baseline_jitter(const accel::ActivityLog& log, double drift, std::uint64_t seed) {
  std::vector<double> offsets(log.processed_bits(), 0.0);
  if (drift <= 0.0) return offsets;
  auto eng = keyed_engine(seed, kDriftStream, 0);
  boost::random::normal_distribution<double> jitter(0.0, drift);
  for (auto& o : offsets) o = jitter(eng);
  return offsets;
}

}  // namespace

std::uint32_t state_bits(BlockId b) {
  constexpr std::uint32_t m = field::Gf233::kDegree;
  switch (b) {
    case BlockId::FieldMultiplier: return 3 * m + static_cast<std::uint32_t>(accel::kDigitBits);
    case BlockId::FieldAdder: return m;
    case BlockId::Registers: return static_cast<std::uint32_t>(accel::kRegisterCount) * m;
    case BlockId::Controller: return 1;
    case BlockId::Multiplexer: return 8;
  }
  return 0;
}

void PowerParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("power parameter '") + name + "' must be finite and >= 0");
    }
  };
  check(w_dyn, "w_dyn");
  check(i_static0, "i_static0");
  for (double g : gamma) check(g, "gamma");
  check(alpha, "alpha");
  check(eta, "eta");
  if (eta > 1.0) throw std::invalid_argument("power parameter 'eta' must lie in [0, 1]");
  check(sigma_noise, "sigma_noise");
  check(drift, "drift");
  check(leak_weight, "leak_weight");
  for (double g : gate_weight) check(g, "gate_weight");
  if (!(kernel_decay > 0.0)) throw std::invalid_argument("power parameter 'kernel_decay' must be > 0");
}

std::vector<double> PowerParams::kernel() const {
  std::vector<double> k(kSamplesPerCycle);
  for (std::size_t s = 0; s < k.size(); ++s) k[s] = std::exp(-static_cast<double>(s) / kernel_decay);
  return k;
}

double static_level(const accel::ActivityLog& log, const PowerParams& params,
                    const std::array<double, kBlockCount>& absorbed, std::size_t cycle) {
  double level = 0.0;
  for (auto b : accel::kAllBlocks) {
    const auto i = accel::index(b);
    const double lw = on_address_path(b) ? params.leak_weight : 1.0;
    const double cells = state_bits(b) + lw * params.gamma[i] * log.stored_weight(cycle, b);
    level += params.i_static0 * cells * (1.0 + params.alpha * absorbed[i]);
  }
  return level;
}

void synthesize_cycles(const accel::ActivityLog& log, const PowerParams& params, const LaserSpec& spec,
                       const Floorplan& plan, std::uint64_t seed, std::size_t first, std::span<float> out) {
  if (out.size() % kSamplesPerCycle != 0) {
    throw std::invalid_argument("output span must hold whole cycles of " + std::to_string(kSamplesPerCycle) +
                                " samples");
  }
  const std::size_t n_cycles = out.size() / kSamplesPerCycle;
  if (first + n_cycles > log.cycles()) {
    throw std::invalid_argument("cycle range [" + std::to_string(first) + ", " + std::to_string(first + n_cycles) +
                                ") exceeds the activity log (" + std::to_string(log.cycles()) + " cycles)");
  }
  params.validate();
  if (spec.enabled) spec.validate();

  const auto kernel = params.kernel();
  const auto absorbed = absorbed_by_block(params, spec, plan);
  const auto jitter = baseline_jitter(log, params.drift, seed);

  for (std::size_t i = 0; i < n_cycles; ++i) {
    const std::size_t c = first + i;
    double dynamic = 0.0;
    for (auto b : accel::kAllBlocks) {
      const double lw = on_address_path(b) ? params.leak_weight : 1.0;
      dynamic += params.w_dyn * params.gate_weight[accel::index(b)] * lw * log.toggles(c, b);
    }
    const double base = static_level(log, params, absorbed, c) + jitter[c / log.cycles_per_bit()];

    float* dst = out.data() + i * kSamplesPerCycle;
    if (params.sigma_noise > 0.0) {
      auto eng = keyed_engine(seed, kNoiseStream, c);
      boost::random::normal_distribution<double> noise(0.0, params.sigma_noise);
      for (std::size_t s = 0; s < kSamplesPerCycle; ++s) {
        dst[s] = static_cast<float>(dynamic * kernel[s] + base + noise(eng));
      }
    } else {
      for (std::size_t s = 0; s < kSamplesPerCycle; ++s) dst[s] = static_cast<float>(dynamic * kernel[s] + base);
    }
  }
}

Trace synthesize_trace(const accel::ActivityLog& log, const PowerParams& params, const LaserSpec& spec,
                       const Floorplan& plan, std::uint64_t seed) {
  Trace t;
  t.samples.resize(log.cycles() * kSamplesPerCycle);
  synthesize_cycles(log, params, spec, plan, seed, 0, t.samples);
  t.meta.seed = seed;
  t.meta.laser = spec;
  return t;
}

double mean(std::span<const float> samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (float v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

double dc_offset(const Trace& t, const Trace& reference) {
  if (t.samples.size() != reference.samples.size()) {
    throw std::invalid_argument("dc_offset: trace lengths differ (" + std::to_string(t.samples.size()) + " vs " +
                                std::to_string(reference.samples.size()) + ")");
  }
  return mean(t.samples) - mean(reference.samples);
}

}  // namespace sculi::leakage
