#include <gtest/gtest.h>

#include <sstream>

#include "sculi/accelerator.hpp"

using namespace sculi;
using namespace sculi::accel;

namespace {

const BitSchedule& schedule() {
  static const BitSchedule s = build_schedule();
  return s;
}

bool block_busy(std::size_t slot, BlockId b) { return schedule().op_for(slot, b).has_value(); }

}  // namespace

TEST(Schedule, HasFiftyFourSlots) { EXPECT_EQ(schedule().size(), 54u); }

TEST(Schedule, KindSequenceIndependentOfBit) { EXPECT_EQ(schedule().kind_sequence(0), schedule().kind_sequence(1)); }

TEST(Schedule, SixMultiplicationsOfEightCycles) {
  std::size_t mul_steps = 0;
  for (std::size_t s = 0; s < schedule().size(); ++s) mul_steps += block_busy(s, BlockId::FieldMultiplier);
  EXPECT_EQ(mul_steps, 6 * kMulCycles);
}

TEST(Schedule, SomeAddressesDependOnTheBit) {
  const auto r0 = schedule().resolved(0);
  const auto r1 = schedule().resolved(1);
  std::size_t differing = 0;
  for (std::size_t s = 0; s < r0.size(); ++s) differing += r0[s] != r1[s];
  EXPECT_GT(differing, 0u);
  // The register file is addressed differently, not just the controller.
  bool reg_differs = false;
  for (std::size_t s = 0; s < r0.size(); ++s) {
    for (std::size_t i = 0; i < r0[s].size(); ++i) {
      if (r0[s][i].block == BlockId::Multiplexer && r0[s][i] != r1[s][i]) reg_differs = true;
    }
  }
  EXPECT_TRUE(reg_differs);
}

TEST(Schedule, ResolveSwapsPairsByBit) {
  EXPECT_EQ(resolve(Operand::XA, 1), kRegX1);
  EXPECT_EQ(resolve(Operand::XA, 0), kRegX2);
  EXPECT_EQ(resolve(Operand::ZD, 1), kRegZ2);
  EXPECT_EQ(resolve(Operand::ZD, 0), kRegZ1);
  EXPECT_EQ(resolve(Operand::T3, 0), resolve(Operand::T3, 1));
}

TEST(Blocks, NamesRoundTripAndRejectUnknown) {
  for (auto b : kAllBlocks) EXPECT_EQ(block_from_name(block_name(b)), b);
  EXPECT_THROW(block_from_name("Cache"), std::invalid_argument);
  EXPECT_THROW(block_from_index(5), std::invalid_argument);
  EXPECT_THROW(block_from_index(-1), std::invalid_argument);
}

TEST(Simulate, MatchesLadderOnRandomScalars) {
  const auto& c = curve::b233();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scalar k = Scalar::random_below(c.order, seed);
    const auto sim = simulate_kp(k, c.base_point, c, schedule());
    ASSERT_EQ(sim.point, curve::ladder_kp(k, c.base_point, c)) << k.to_hex();
  }
}

TEST(Simulate, FullScalarTakes12528Cycles) {
  const auto& c = curve::b233();
  const auto sim = simulate_kp(Scalar::random_with_length(233, 1), c.base_point, c, schedule());
  EXPECT_EQ(sim.log.cycles(), 12528u);
  EXPECT_EQ(sim.log.processed_bits(), 232u);
  EXPECT_NEAR(sim.log.duration_seconds(), 3.132e-3, 1e-12);
}

TEST(Simulate, ZeroXBaseIsDegenerate) {
  const auto& c = curve::b233();
  const curve::AffinePoint<field::Gf233> p{field::Gf233::zero(), field::Gf233::one(), false};
  EXPECT_THROW(simulate_kp(Scalar::from_uint(7), p, c, schedule()), curve::DegenerateInput);
}

TEST(Simulate, ConstantBitsGiveRepeatingControlActivity) {
  const auto& c = curve::b233();
  for (unsigned bit : {0u, 1u}) {
    std::vector<std::uint8_t> bits(40, static_cast<std::uint8_t>(bit));
    bits.front() = 1;
    const auto sim = simulate_kp(Scalar::from_bits(bits), c.base_point, c, schedule());
    const auto& log = sim.log;
    for (std::size_t j = 2; j < log.processed_bits(); ++j) {
      for (std::size_t s = 0; s < kCyclesPerBit; ++s) {
        const std::size_t a = (j - 1) * kCyclesPerBit + s, b = j * kCyclesPerBit + s;
        ASSERT_EQ(log.toggles(a, BlockId::Multiplexer), log.toggles(b, BlockId::Multiplexer));
        ASSERT_EQ(log.toggles(a, BlockId::Controller), log.toggles(b, BlockId::Controller));
        ASSERT_EQ(log.addr_bits(a), log.addr_bits(b));
      }
    }
  }
}

TEST(ActivityLog, BlockSeriesPartitionTotals) {
  const auto& c = curve::b233();
  const auto sim = simulate_kp(Scalar::random_with_length(40, 3), c.base_point, c, schedule());
  std::vector<BlockSeries> series;
  for (auto b : kAllBlocks) series.push_back(block_state_trace(sim.log, b));
  for (std::size_t cyc = 0; cyc < sim.log.cycles(); ++cyc) {
    std::uint32_t sum = 0;
    for (const auto& s : series) sum += s.toggles[cyc];
    ASSERT_EQ(sum, sim.log.total_toggles(cyc));
  }
  EXPECT_EQ(block_state_trace(sim.log, 2).stored_weight, series[index(BlockId::Registers)].stored_weight);
  EXPECT_THROW(block_state_trace(sim.log, 9), std::invalid_argument);
}

TEST(ActivityLog, RegisterWeightOnlyChangesOnStores) {
  const auto& c = curve::b233();
  const auto sim = simulate_kp(Scalar::random_with_length(30, 4), c.base_point, c, schedule());
  for (std::size_t cyc = 1; cyc < sim.log.cycles(); ++cyc) {
    const std::size_t slot = cyc % kCyclesPerBit;
    const auto op = schedule().op_for(slot, BlockId::Registers);
    const bool store = op && op->kind == OpKind::Store;
    if (!store) {
      ASSERT_EQ(sim.log.stored_weight(cyc, BlockId::Registers), sim.log.stored_weight(cyc - 1, BlockId::Registers))
          << "cycle " << cyc;
    }
  }
}

TEST(ActivityLog, IdleBlocksDoNotToggle) {
  const auto& c = curve::b233();
  const auto sim = simulate_kp(Scalar::random_with_length(30, 5), c.base_point, c, schedule());
  for (std::size_t cyc = 0; cyc < sim.log.cycles(); ++cyc) {
    const std::size_t slot = cyc % kCyclesPerBit;
    for (auto b : {BlockId::FieldMultiplier, BlockId::FieldAdder}) {
      if (!block_busy(slot, b)) {
        ASSERT_EQ(sim.log.toggles(cyc, b), 0u) << block_name(b) << " slot " << slot;
      }
    }
  }
}

TEST(ActivityLog, CsvExportHasOneRowPerCycleAndBlock) {
  const auto& c = curve::b233();
  const auto sim = simulate_kp(Scalar::from_uint(5), c.base_point, c, schedule());
  std::ostringstream os;
  write_activity_csv(os, sim.log);
  const auto text = os.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), 1 + 2 * 54 * kBlockCount);
  EXPECT_EQ(text.rfind("cycle,block,toggles,stored_weight\n", 0), 0u);
}
