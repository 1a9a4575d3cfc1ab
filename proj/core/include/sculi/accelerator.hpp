// Cycle-level model of the kP accelerator.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sculi/binary_field.hpp"
#include "sculi/curve.hpp"
#include "sculi/scalar.hpp"
#include "sculi/schedule.hpp"

namespace sculi::accel {

/// Per-cycle, per-block switching and stored-state statistics of one kP run.
class ActivityLog {
 public:
  ActivityLog() = default;
  ActivityLog(std::size_t processed_bits, std::size_t cycles_per_bit);

  std::size_t cycles() const { return addr_bits_.size(); }
  std::size_t processed_bits() const { return processed_bits_; }
  std::size_t cycles_per_bit() const { return cycles_per_bit_; }
  /// Wall-clock duration at the accelerator clock.
  double duration_seconds() const { return static_cast<double>(cycles()) / kClockHz; }

  std::uint32_t toggles(std::size_t cycle, BlockId b) const { return toggles_.at(cycle * kBlockCount + index(b)); }
  std::uint32_t stored_weight(std::size_t cycle, BlockId b) const {
    return stored_weight_.at(cycle * kBlockCount + index(b));
  }
  /// Multiplexer select vector held during the cycle: (src_a << 4) | src_b.
  std::uint16_t addr_bits(std::size_t cycle) const { return addr_bits_.at(cycle); }
  std::uint32_t total_toggles(std::size_t cycle) const;

  void record(std::size_t cycle, BlockId b, std::uint32_t toggles, std::uint32_t stored_weight);
  void set_addr_bits(std::size_t cycle, std::uint16_t bits) { addr_bits_.at(cycle) = bits; }

 private:
  std::size_t processed_bits_ = 0;
  std::size_t cycles_per_bit_ = kCyclesPerBit;
  std::vector<std::uint32_t> toggles_;
  std::vector<std::uint32_t> stored_weight_;
  std::vector<std::uint16_t> addr_bits_;
};

struct BlockSeries {
  std::vector<std::uint32_t> toggles;
  std::vector<std::uint32_t> stored_weight;
};

/// Lossless projection of the log onto one block.
BlockSeries block_state_trace(const ActivityLog& log, BlockId b);
/// Same, for a raw block index; throws std::invalid_argument when out of range.
BlockSeries block_state_trace(const ActivityLog& log, int block_index);

/// Debug export: "cycle,block,toggles,stored_weight" rows.
void write_activity_csv(std::ostream& os, const ActivityLog& log);

struct SimulationResult {
  curve::AffinePoint<field::Gf233> point;
  ActivityLog log;
};

/// Runs the microprogram once per processed key bit and returns kP together
/// with the activity of every cycle. Throws curve::DegenerateInput exactly
/// where ladder_kp would.
SimulationResult simulate_kp(const Scalar& k, const curve::AffinePoint<field::Gf233>& p,
                             const curve::CurveParams<field::Gf233>& params, const BitSchedule& sched);

}  // namespace sculi::accel
