#include "sculi/accelerator.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace sculi::accel {

using field::Gf233;

ActivityLog::ActivityLog(std::size_t processed_bits, std::size_t cycles_per_bit)
    : processed_bits_(processed_bits),
      cycles_per_bit_(cycles_per_bit),
      toggles_(processed_bits * cycles_per_bit * kBlockCount, 0),
      stored_weight_(processed_bits * cycles_per_bit * kBlockCount, 0),
      addr_bits_(processed_bits * cycles_per_bit, 0) {}

std::uint32_t ActivityLog::total_toggles(std::size_t cycle) const {
  std::uint32_t sum = 0;
  for (auto b : kAllBlocks) sum += toggles(cycle, b);
  return sum;
}

void ActivityLog::record(std::size_t cycle, BlockId b, std::uint32_t toggles, std::uint32_t stored_weight) {
  toggles_.at(cycle * kBlockCount + index(b)) = toggles;
  stored_weight_.at(cycle * kBlockCount + index(b)) = stored_weight;
}

BlockSeries block_state_trace(const ActivityLog& log, BlockId b) {
  BlockSeries s;
  s.toggles.reserve(log.cycles());
  s.stored_weight.reserve(log.cycles());
  for (std::size_t c = 0; c < log.cycles(); ++c) {
    s.toggles.push_back(log.toggles(c, b));
    s.stored_weight.push_back(log.stored_weight(c, b));
  }
  return s;
}

BlockSeries block_state_trace(const ActivityLog& log, int block_index) {
  return block_state_trace(log, block_from_index(block_index));
}

void write_activity_csv(std::ostream& os, const ActivityLog& log) {
  os << "cycle,block,toggles,stored_weight\n";
  for (std::size_t c = 0; c < log.cycles(); ++c) {
    for (auto b : kAllBlocks) {
      os << c << ',' << block_name(b) << ',' << log.toggles(c, b) << ',' << log.stored_weight(c, b) << '\n';
    }
  }
}

namespace {

// Block state of the running accelerator. Toggle counts are Hamming distances
// between consecutive states; stored weights are Hamming weights.
class Machine {
 public:
  Machine(const Gf233& x, const Gf233& b) {
    const auto init = curve::ladder_init(x, b);
    regs_[kRegX1] = init.x1;
    regs_[kRegZ1] = init.z1;
    regs_[kRegX2] = init.x2;
    regs_[kRegZ2] = init.z2;
    regs_[kRegXP] = x;
    regs_[kRegB] = b;
    for (const auto& r : regs_) reg_weight_ += r.popcount();
  }

  void run_cycle(const std::vector<ResolvedOp>& ops, unsigned key_bit, ActivityLog& log, std::size_t cycle) {
    std::array<std::uint32_t, kBlockCount> toggles{};
    const ResolvedOp* store = nullptr;
    bool mul_writes_back = false;

    for (const auto& op : ops) {
      switch (op.block) {
        case BlockId::Multiplexer: {
          const auto sel = static_cast<std::uint16_t>(((op.src_a < 0 ? 0 : op.src_a) << 4) |
                                                      (op.src_b < 0 ? 0 : op.src_b));
          toggles[index(BlockId::Multiplexer)] = static_cast<std::uint32_t>(std::popcount(
              static_cast<unsigned>(sel ^ mux_sel_)));
          mux_sel_ = sel;
          break;
        }
        case BlockId::Controller: {
          const std::uint8_t next = op.kind == OpKind::Load ? static_cast<std::uint8_t>(key_bit) : 0;
          toggles[index(BlockId::Controller)] = static_cast<std::uint32_t>(next != key_reg_);
          key_reg_ = next;
          break;
        }
        case BlockId::FieldMultiplier:
          toggles[index(BlockId::FieldMultiplier)] = mul_step(op);
          if (op.dst != kNoRegister) mul_writes_back = true;
          break;
        case BlockId::FieldAdder: {
          const Gf233 out = op.kind == OpKind::Add ? regs_.at(op.src_a) + regs_.at(op.src_b) : sqr(regs_.at(op.src_a));
          toggles[index(BlockId::FieldAdder)] = hamming_distance(adder_out_, out);
          adder_out_ = out;
          break;
        }
        case BlockId::Registers:
          if (op.kind == OpKind::Store) store = &op;
          break;
      }
    }

    // Write-back happens after every read of the cycle.
    if (store) {
      const Gf233& value = mul_writes_back ? acc_ : adder_out_;
      Gf233& reg = regs_.at(store->dst);
      toggles[index(BlockId::Registers)] = hamming_distance(reg, value);
      reg_weight_ = reg_weight_ - reg.popcount() + value.popcount();
      reg = value;
    }

    log.record(cycle, BlockId::FieldMultiplier, toggles[index(BlockId::FieldMultiplier)],
               a_.popcount() + b_.popcount() + acc_.popcount() + static_cast<std::uint32_t>(std::popcount(digit_)));
    log.record(cycle, BlockId::FieldAdder, toggles[index(BlockId::FieldAdder)], adder_out_.popcount());
    log.record(cycle, BlockId::Registers, toggles[index(BlockId::Registers)], reg_weight_);
    log.record(cycle, BlockId::Controller, toggles[index(BlockId::Controller)], key_reg_);
    log.record(cycle, BlockId::Multiplexer, toggles[index(BlockId::Multiplexer)],
               static_cast<std::uint32_t>(std::popcount(static_cast<unsigned>(mux_sel_))));
    log.set_addr_bits(cycle, mux_sel_);
  }

  curve::LDPair<Gf233> pair() const {
    return curve::LDPair<Gf233>{regs_[kRegX1], regs_[kRegZ1], regs_[kRegX2], regs_[kRegZ2]};
  }

 private:
  // MSB-first digit-serial multiplication: acc <- acc * x^32 + a * digit.
  std::uint32_t mul_step(const ResolvedOp& op) {
    std::uint32_t t = 0;
    if (op.src_a != kNoRegister) {
      const Gf233& na = regs_.at(op.src_a);
      const Gf233& nb = regs_.at(op.src_b);
      t += hamming_distance(a_, na) + hamming_distance(b_, nb);
      a_ = na;
      b_ = nb;
      step_ = 0;
      const Gf233 zero{};
      t += hamming_distance(acc_, zero);
      acc_ = zero;
    }
    const std::size_t shift = (kMulCycles - 1 - step_) * kDigitBits;
    const auto& w = b_.words();
    const auto digit = static_cast<std::uint32_t>(w[shift / 64] >> (shift % 64));
    static const Gf233 kDigitShift = Gf233::monomial(kDigitBits);
    const Gf233 next = acc_ * kDigitShift + a_ * Gf233::from_uint(digit);
    t += hamming_distance(acc_, next) + static_cast<std::uint32_t>(std::popcount(digit ^ digit_));
    acc_ = next;
    digit_ = digit;
    ++step_;
    return t;
  }

  std::array<Gf233, kRegisterCount> regs_{};
  std::uint32_t reg_weight_ = 0;
  Gf233 a_{}, b_{}, acc_{};
  std::uint32_t digit_ = 0;
  std::size_t step_ = 0;
  Gf233 adder_out_{};
  std::uint16_t mux_sel_ = 0;
  std::uint8_t key_reg_ = 0;
};

}  // namespace

SimulationResult simulate_kp(const Scalar& k, const curve::AffinePoint<Gf233>& p,
                             const curve::CurveParams<Gf233>& params, const BitSchedule& sched) {
  static_assert(kMulCycles * kDigitBits >= Gf233::kDegree, "digit-serial multiplier must cover the field");
  SimulationResult result;
  if (k.is_zero() || p.infinity) {
    result.point = curve::AffinePoint<Gf233>::at_infinity();
    return result;
  }
  if (p.x.is_zero()) throw curve::DegenerateInput("base point has x = 0");
  const auto bits = k.processed_bits();
  result.log = ActivityLog(bits.size(), sched.size());
  if (bits.empty()) {
    result.point = p;
    return result;
  }

  const std::array<std::vector<std::vector<ResolvedOp>>, 2> program{sched.resolved(0), sched.resolved(1)};
  Machine m(p.x, params.b);
  std::size_t cycle = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const unsigned bit = bits[i];
    for (const auto& slot : program[bit]) m.run_cycle(slot, bit, result.log, cycle++);
    if (i + 1 < bits.size()) {
      const auto s = m.pair();
      if (s.z1.is_zero() || s.z2.is_zero()) {
        throw curve::DegenerateInput("ladder reached Z = 0 at processed bit " + std::to_string(i));
      }
    }
  }
  result.point = curve::ladder_finish(m.pair(), p);
  return result;
}

}  // namespace sculi::accel
