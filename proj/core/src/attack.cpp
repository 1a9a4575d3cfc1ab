#include "sculi/attack.hpp"

#include <algorithm>
#include <stdexcept>

#include "sculi/scalar.hpp"

namespace sculi::attack {

namespace {

std::size_t window_count(std::size_t n_samples, const Framing& f) {
  if (f.samples_per_cycle == 0 || f.cycles_per_bit == 0) throw std::invalid_argument("framing sizes must be positive");
  const std::size_t skip = f.cycle_offset * f.samples_per_cycle;
  const std::size_t window = f.samples_per_cycle * f.cycles_per_bit;
  if (skip > n_samples || (n_samples - skip) % window != 0) {
    throw std::invalid_argument("trace length " + std::to_string(n_samples) + " (offset " + std::to_string(skip) +
                                " samples) is not a multiple of the window size " + std::to_string(window) +
                                " = " + std::to_string(f.samples_per_cycle) + " samples x " +
                                std::to_string(f.cycles_per_bit) + " cycles");
  }
  return (n_samples - skip) / window;
}

template <class CycleReducer>
CompressedMatrix reduce_cycles(std::span<const float> samples, const Framing& f, CycleReducer reduce) {
  const std::size_t rows = window_count(samples.size(), f);
  CompressedMatrix m(rows, f.cycles_per_bit);
  const float* base = samples.data() + f.cycle_offset * f.samples_per_cycle;
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t s = 0; s < f.cycles_per_bit; ++s) {
      const float* cycle = base + (j * f.cycles_per_bit + s) * f.samples_per_cycle;
      m(j, s) = reduce(std::span<const float>(cycle, f.samples_per_cycle));
    }
  }
  return m;
}

}  // namespace

CompressedMatrix compress(std::span<const float> samples, const Framing& framing) {
  return reduce_cycles(samples, framing, [](std::span<const float> cycle) {
    double sum = 0.0;
    for (float v : cycle) sum += static_cast<double>(v) * static_cast<double>(v);
    return sum;
  });
}

CompressedMatrix static_compress(std::span<const float> samples, std::size_t quiescent_window,
                                 const Framing& framing) {
  if (quiescent_window == 0 || quiescent_window > framing.samples_per_cycle) {
    throw std::invalid_argument("quiescent window must lie in [1, " + std::to_string(framing.samples_per_cycle) +
                                "], got " + std::to_string(quiescent_window));
  }
  return reduce_cycles(samples, framing, [quiescent_window](std::span<const float> cycle) {
    double sum = 0.0;
    for (float v : cycle.last(quiescent_window)) sum += v;
    return sum / static_cast<double>(quiescent_window);
  });
}

KeyCandidate KeyCandidate::inverted_twin() const {
  KeyCandidate t = *this;
  t.inverted = !inverted;
  for (auto& b : t.bits) b ^= 1;
  if (correctness_pct) t.correctness_pct = 100.0 - *correctness_pct;
  return t;
}

std::string KeyCandidate::bits_hex() const { return Scalar::from_bits(bits).to_hex(); }

std::vector<KeyCandidate> comparison_to_mean(const CompressedMatrix& m) {
  std::vector<KeyCandidate> out(m.cols());
  if (m.rows() == 0) {
    for (std::size_t s = 0; s < m.cols(); ++s) out[s].slot = s;
    return out;
  }
  for (std::size_t s = 0; s < m.cols(); ++s) {
    double sum = 0.0;
    double lo = m(0, s);
    double hi = m(0, s);
    for (std::size_t j = 0; j < m.rows(); ++j) {
      sum += m(j, s);
      lo = std::min(lo, m(j, s));
      hi = std::max(hi, m(j, s));
    }
    // The mean lies in [min, max]; clamping only removes rounding error so a
    // constant column compares equal to its mean.
    const double mean = std::clamp(sum / static_cast<double>(m.rows()), lo, hi);
    auto& c = out[s];
    c.slot = s;
    c.bits.resize(m.rows());
    for (std::size_t j = 0; j < m.rows(); ++j) c.bits[j] = m(j, s) >= mean ? 1 : 0;
  }
  return out;
}

double score(std::span<const std::uint8_t> candidate, std::span<const std::uint8_t> truth) {
  if (candidate.size() != truth.size()) {
    throw std::invalid_argument("candidate has " + std::to_string(candidate.size()) + " bits, key has " +
                                std::to_string(truth.size()));
  }
  if (truth.empty()) throw std::invalid_argument("cannot score an empty key");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) matches += (candidate[i] == truth[i]) ? 1 : 0;
  return 100.0 * static_cast<double>(matches) / static_cast<double>(truth.size());
}

KeyCandidate score(KeyCandidate& c, std::span<const std::uint8_t> truth) {
  c.correctness_pct = score(c.bits, truth);
  return c.inverted_twin();
}

std::string_view mode_name(Mode m) { return m == Mode::Dynamic ? "sum-of-squares" : "static-only"; }

KeyCandidate best_candidate(const AttackReport& report, bool allow_inversion) {
  if (report.candidates.empty()) throw std::invalid_argument("report has no candidates");
  if (!report.scored()) throw std::invalid_argument("report has no ground truth to rank candidates");
  std::size_t best_slot = 0;
  bool best_inverted = false;
  double best = -1.0;
  for (std::size_t s = 0; s < report.candidates.size(); ++s) {
    if (report.delta_raw[s] > best) {
      best = report.delta_raw[s];
      best_slot = s;
      best_inverted = false;
    }
    if (allow_inversion && report.delta_inverted[s] > best) {
      best = report.delta_inverted[s];
      best_slot = s;
      best_inverted = true;
    }
  }
  KeyCandidate c = report.candidates[best_slot];
  c.correctness_pct = report.delta_raw[best_slot];
  return best_inverted ? c.inverted_twin() : c;
}

AttackReport make_report(std::vector<KeyCandidate> candidates, const AttackOptions& options,
                         std::optional<std::span<const std::uint8_t>> truth) {
  AttackReport r;
  r.options = options;
  r.candidates = std::move(candidates);
  if (truth) {
    for (auto& c : r.candidates) {
      const auto twin = score(c, *truth);
      r.delta_raw.push_back(*c.correctness_pct);
      r.delta_inverted.push_back(*twin.correctness_pct);
    }
    if (!r.candidates.empty()) r.best = best_candidate(r, options.allow_inversion);
  }
  return r;
}

AttackReport run_attack(std::span<const float> samples, const AttackOptions& options,
                        std::optional<std::span<const std::uint8_t>> truth) {
  const CompressedMatrix m = options.mode == Mode::Dynamic
                                 ? compress(samples, options.framing)
                                 : static_compress(samples, options.quiescent_window, options.framing);
  return make_report(comparison_to_mean(m), options, truth);
}

AttackReport run_attack(const leakage::Trace& trace, const AttackOptions& options) {
  AttackOptions opts = options;
  opts.framing.samples_per_cycle = trace.samples_per_cycle();
  AttackReport r;
  if (trace.meta.scalar_hex) {
    const Scalar k = Scalar::from_hex(*trace.meta.scalar_hex);
    r = run_attack(trace.samples, opts, k.processed_bits());
  } else {
    r = run_attack(trace.samples, opts);
  }
  r.meta = trace.meta;
  return r;
}

}  // namespace sculi::attack
