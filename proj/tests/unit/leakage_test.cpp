#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sculi/accelerator.hpp"
#include "sculi/floorplan.hpp"
#include "sculi/power_model.hpp"

using namespace sculi;
using namespace sculi::leakage;
using accel::BlockId;

namespace {

LaserSpec laser(double power, double d, double x = 900, double y = 1500) {
  return LaserSpec{true, power, d, x, y};
}

const accel::SimulationResult& short_run() {
  static const auto sim = accel::simulate_kp(Scalar::random_with_length(24, 11), curve::b233().base_point,
                                             curve::b233(), accel::build_schedule());
  return sim;
}

PowerParams noisy() {
  PowerParams p;
  p.sigma_noise = 3.0;
  p.drift = 0.5;
  return p;
}

}  // namespace

TEST(Beam, EqualIntensityForMatchedSettings) {
  const double i4 = beam_intensity(laser(13, 27));
  const double i5 = beam_intensity(laser(59, 58));
  const double i6 = beam_intensity(laser(100, 75));
  for (double a : {i4, i5, i6}) {
    for (double b : {i4, i5, i6}) EXPECT_LE(std::abs(a - b) / std::max(a, b), 0.03);
  }
}

TEST(Beam, IntensityScaling) {
  EXPECT_EQ(beam_intensity(laser(0, 14)), 0.0);
  EXPECT_EQ(beam_intensity(LaserSpec{}), 0.0);
  EXPECT_DOUBLE_EQ(beam_intensity(laser(50, 40)) / beam_intensity(laser(50, 80)), 4.0);
}

TEST(Beam, FwhmConversion) { EXPECT_NEAR(fwhm_to_sigma(2.0 * std::sqrt(2.0 * std::log(2.0))), 1.0, 1e-12); }

TEST(Beam, LaserValidation) {
  EXPECT_THROW(laser(101, 10).validate(), std::invalid_argument);
  EXPECT_THROW(laser(-1, 10).validate(), std::invalid_argument);
  EXPECT_THROW(laser(10, 0).validate(), std::invalid_argument);
  EXPECT_NO_THROW(laser(100, 75).validate());
}

TEST(Absorption, QuadratureMatchesErfOracle) {
  const auto plan = default_floorplan();
  for (double d : {14.0, 75.0, 400.0, 2500.0}) {
    for (auto [x, y] : {std::pair{900.0, 1500.0}, std::pair{1800.0, 1500.0}, std::pair{2390.0, 2410.0}}) {
      const auto spec = laser(100, d, x, y);
      const double s = fwhm_to_sigma(d);
      for (auto b : accel::kAllBlocks) {
        const Rect& r = plan.block(b);
        const double want = oracle::gaussian_mass(x, y, s, r.x, r.y, r.right(), r.top());
        ASSERT_NEAR(spot_mass_in(spec, r), want, 1e-3 + 0.01 * want) << "d=" << d << " block " << block_name(b);
      }
    }
  }
}

TEST(Absorption, SpotInsideBlockDeliversEtaTimesPower) {
  const auto plan = default_floorplan();
  for (double d : {14.0, 27.0, 58.0, 75.0}) {
    const double p = absorbed_power(laser(59, d), plan, BlockId::FieldMultiplier, 0.5);
    EXPECT_NEAR(p, 0.5 * 59, 0.01 * 0.5 * 59);
  }
}

TEST(Absorption, FarBlocksReceiveNothing) {
  const auto plan = default_floorplan();
  const auto spec = laser(100, 75);
  for (auto b : {BlockId::Registers, BlockId::FieldAdder, BlockId::Controller, BlockId::Multiplexer}) {
    EXPECT_LT(absorbed_power(spec, plan, b, 1.0), 0.001 * 100);
  }
}

TEST(Absorption, BlocksPartitionTheSpot) {
  const auto plan = default_floorplan();
  for (auto [x, y] : {std::pair{1800.0, 1500.0}, std::pair{0.0, 1500.0}, std::pair{2400.0, 2400.0}}) {
    const auto spec = laser(80, 600, x, y);
    double blocks = 0.0;
    for (auto b : accel::kAllBlocks) blocks += absorbed_power(spec, plan, b, 0.7);
    const double off_die = 1.0 - oracle::gaussian_mass(x, y, fwhm_to_sigma(600), 0, 0, 3000, 3000);
    EXPECT_NEAR(blocks + 0.7 * 80 * off_die, 0.7 * 80, 0.01 * 0.7 * 80);
  }
}

TEST(Absorption, DisabledLaserAbsorbsNothing) {
  LaserSpec off = laser(100, 75);
  off.enabled = false;
  EXPECT_EQ(absorbed_power(off, default_floorplan(), BlockId::FieldMultiplier, 1.0), 0.0);
}

TEST(Floorplan, DefaultIsValidAndMultiplierLargest) {
  const auto plan = default_floorplan();
  EXPECT_NO_THROW(plan.validate());
  for (auto b : accel::kAllBlocks) EXPECT_LE(plan.block(b).area(), plan.block(BlockId::FieldMultiplier).area());
  auto bad = plan;
  bad.blocks[accel::index(BlockId::FieldAdder)].x = 1700;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = plan;
  bad.blocks[accel::index(BlockId::Multiplexer)].width = 1300;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(PowerParams, ValidationNamesTheField) {
  PowerParams p;
  p.alpha = -1;
  try {
    p.validate();
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
  p = PowerParams{};
  p.eta = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(PowerParams, KernelPeaksAtOne) {
  const auto k = PowerParams{}.kernel();
  ASSERT_EQ(k.size(), kSamplesPerCycle);
  EXPECT_EQ(k.front(), 1.0);
  EXPECT_EQ(*std::max_element(k.begin(), k.end()), 1.0);
}

TEST(Synthesis, IdleLogGivesFlatStaticBaseline) {
  const accel::ActivityLog idle(2, accel::kCyclesPerBit);
  PowerParams p;
  const auto t = synthesize_trace(idle, p, {}, default_floorplan(), 1);
  ASSERT_EQ(t.samples.size(), 2 * 54 * kSamplesPerCycle);
  double expect = 0.0;
  for (auto b : accel::kAllBlocks) expect += p.i_static0 * state_bits(b);
  for (float v : t.samples) ASSERT_FLOAT_EQ(v, static_cast<float>(expect));
}

TEST(Synthesis, DeterministicInSeed) {
  const auto& log = short_run().log;
  const auto a = synthesize_trace(log, noisy(), laser(59, 58), default_floorplan(), 7);
  const auto b = synthesize_trace(log, noisy(), laser(59, 58), default_floorplan(), 7);
  const auto c = synthesize_trace(log, noisy(), laser(59, 58), default_floorplan(), 8);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
}

TEST(Synthesis, ChunkedEqualsWholeTrace) {
  const auto& log = short_run().log;
  const auto whole = synthesize_trace(log, noisy(), laser(13, 27), default_floorplan(), 3);
  std::vector<float> parts(whole.samples.size());
  const std::size_t cycles = log.cycles();
  for (std::size_t first = 0; first < cycles;) {
    const std::size_t n = std::min<std::size_t>(37, cycles - first);
    synthesize_cycles(log, noisy(), laser(13, 27), default_floorplan(), 3, first,
                      std::span<float>(parts).subspan(first * kSamplesPerCycle, n * kSamplesPerCycle));
    first += n;
  }
  EXPECT_EQ(parts, whole.samples);
}

TEST(Synthesis, RejectsBadRanges) {
  const auto& log = short_run().log;
  std::vector<float> out(kSamplesPerCycle + 1);
  EXPECT_THROW(synthesize_cycles(log, {}, {}, default_floorplan(), 1, 0, out), std::invalid_argument);
  out.resize(kSamplesPerCycle * 2);
  EXPECT_THROW(synthesize_cycles(log, {}, {}, default_floorplan(), 1, log.cycles() - 1, out), std::invalid_argument);
}

TEST(Synthesis, LaserOnlyShiftsTheStaticTerm) {
  const auto& log = short_run().log;
  PowerParams p;
  p.alpha = 0.5;
  p.leak_weight = 0.25;
  const auto plan = default_floorplan();
  const auto spec = laser(100, 400, 1800, 1500);
  const auto on = synthesize_trace(log, p, spec, plan, 1);
  const auto off = synthesize_trace(log, p, {}, plan, 1);
  for (std::size_t c = 0; c < log.cycles(); ++c) {
    double expect = 0.0;
    for (auto b : accel::kAllBlocks) {
      const bool address_path =
          b == BlockId::Registers || b == BlockId::Multiplexer || b == BlockId::Controller;
      const double lw = address_path ? p.leak_weight : 1.0;
      expect += p.i_static0 * (state_bits(b) + lw * p.gamma_of(b) * log.stored_weight(c, b)) * p.alpha *
                absorbed_power(spec, plan, b, p.eta);
    }
    for (std::size_t s = 0; s < kSamplesPerCycle; s += 97) {
      const std::size_t i = c * kSamplesPerCycle + s;
      ASSERT_NEAR(on.samples[i] - off.samples[i], expect, 1e-3 * (1 + expect));
    }
  }
}

TEST(Synthesis, KeepsTheDcLevel) {
  const auto t = synthesize_trace(short_run().log, noisy(), {}, default_floorplan(), 2);
  EXPECT_GT(mean(t.samples), 0.0);
}

TEST(Synthesis, FullScalarTraceGeometry) {
  const auto& c = curve::b233();
  const auto sim = accel::simulate_kp(Scalar::random_with_length(233, 1), c.base_point, c, accel::build_schedule());
  const auto t = synthesize_trace(sim.log, {}, {}, default_floorplan(), 1);
  EXPECT_EQ(t.samples.size(), 12528u * 1250u);
  EXPECT_EQ(t.samples_per_cycle(), 1250u);
  EXPECT_EQ(t.cycles(), 12528u);
}

TEST(DcOffset, IdentityAndConstantShift) {
  const auto t = synthesize_trace(short_run().log, noisy(), {}, default_floorplan(), 4);
  EXPECT_EQ(dc_offset(t, t), 0.0);
  auto shifted = t;
  for (auto& v : shifted.samples) v += 2.5f;
  EXPECT_NEAR(dc_offset(shifted, t), 2.5, 1e-4);
  auto short_trace = t;
  short_trace.samples.pop_back();
  EXPECT_THROW(dc_offset(short_trace, t), std::invalid_argument);
}

TEST(DcOffset, GrowsWithPowerAndIgnoresSpotSize) {
  const auto& log = short_run().log;
  const auto plan = default_floorplan();
  PowerParams p;
  p.sigma_noise = 2.0;
  const auto ref = synthesize_trace(log, p, {}, plan, 5);
  auto offset = [&](double power, double d) { return dc_offset(synthesize_trace(log, p, laser(power, d), plan, 5), ref); };
  const double o2 = offset(3, 14), o4 = offset(13, 27), o5 = offset(59, 58), o6 = offset(100, 75);
  EXPECT_LT(o2, o4);
  EXPECT_LT(o4, o5);
  EXPECT_LT(o5, o6);
  const double o3 = offset(100, 14);
  EXPECT_LE(std::abs(o3 - o6) / o6, 0.05);
}
