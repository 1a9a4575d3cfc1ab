#include "sculi/schedule.hpp"

#include <stdexcept>

namespace sculi::accel {

namespace {

constexpr std::array<std::string_view, kBlockCount> kBlockNames{"FieldMultiplier", "FieldAdder", "Registers",
                                                                "Controller", "Multiplexer"};

class ScheduleBuilder {
 public:
  void op(std::size_t slot, BlockId block, OpKind kind, Operand a = Operand::None, Operand b = Operand::None,
          Operand dst = Operand::None) {
    for (const auto& existing : slots_.at(slot)) {
      if (existing.block == block) throw std::logic_error("two ops on one block in a slot");
    }
    slots_.at(slot).push_back(MicroOp{slot, block, kind, a, b, dst});
  }

  // Digit-serial multiplication over kMulCycles slots: operands are selected
  // and latched in the first slot, the product is written back in the last.
  void multiply(std::size_t start, Operand a, Operand b, Operand dst) {
    op(start, BlockId::Multiplexer, OpKind::MuxSelect, a, b);
    op(start, BlockId::Registers, OpKind::Load, a, b);
    op(start, BlockId::FieldMultiplier, OpKind::MulStep, a, b);
    for (std::size_t s = start + 1; s + 1 < start + kMulCycles; ++s) op(s, BlockId::FieldMultiplier, OpKind::MulStep);
    const std::size_t last = start + kMulCycles - 1;
    op(last, BlockId::FieldMultiplier, OpKind::MulStep, Operand::None, Operand::None, dst);
    op(last, BlockId::Registers, OpKind::Store, Operand::None, Operand::None, dst);
  }

  void add(std::size_t slot, Operand a, Operand b, Operand dst) {
    op(slot, BlockId::Multiplexer, OpKind::MuxSelect, a, b);
    op(slot, BlockId::FieldAdder, OpKind::Add, a, b, dst);
    op(slot, BlockId::Registers, OpKind::Store, Operand::None, Operand::None, dst);
  }

  void square(std::size_t slot, Operand a, Operand dst) {
    op(slot, BlockId::Multiplexer, OpKind::MuxSelect, a);
    op(slot, BlockId::FieldAdder, OpKind::Sqr, a, Operand::None, dst);
    op(slot, BlockId::Registers, OpKind::Store, Operand::None, Operand::None, dst);
  }

  std::array<BitSchedule::Slot, kCyclesPerBit> take() { return std::move(slots_); }

 private:
  std::array<BitSchedule::Slot, kCyclesPerBit> slots_;
};

}  // namespace

std::string_view block_name(BlockId b) { return kBlockNames.at(index(b)); }

BlockId block_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kBlockCount; ++i) {
    if (kBlockNames[i] == name) return kAllBlocks[i];
  }
  throw std::invalid_argument("unknown block '" + std::string(name) + "'");
}

BlockId block_from_index(int i) {
  if (i < 0 || i >= static_cast<int>(kBlockCount)) {
    throw std::invalid_argument("unknown block index " + std::to_string(i));
  }
  return kAllBlocks[static_cast<std::size_t>(i)];
}

std::array<Block, kBlockCount> default_blocks() {
  return {Block{BlockId::FieldMultiplier, 10}, Block{BlockId::FieldAdder, 1}, Block{BlockId::Registers, 6},
          Block{BlockId::Controller, 2}, Block{BlockId::Multiplexer, 1}};
}

std::string_view op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::MulStep: return "MUL_STEP";
    case OpKind::Add: return "ADD";
    case OpKind::Sqr: return "SQR";
    case OpKind::Load: return "LOAD";
    case OpKind::Store: return "STORE";
    case OpKind::MuxSelect: return "MUX_SELECT";
    case OpKind::Nop: return "NOP";
  }
  return "?";
}

int resolve(Operand op, unsigned bit) {
  switch (op) {
    case Operand::None: return kNoRegister;
    case Operand::XA: return bit ? kRegX1 : kRegX2;
    case Operand::ZA: return bit ? kRegZ1 : kRegZ2;
    case Operand::XD: return bit ? kRegX2 : kRegX1;
    case Operand::ZD: return bit ? kRegZ2 : kRegZ1;
    case Operand::T1: return kRegT1;
    case Operand::T2: return kRegT2;
    case Operand::T3: return kRegT3;
    case Operand::T4: return kRegT4;
    case Operand::XP: return kRegXP;
    case Operand::B: return kRegB;
  }
  return kNoRegister;
}

BitSchedule::BitSchedule(std::array<Slot, kCyclesPerBit> slots) : slots_(std::move(slots)) {}

std::vector<std::vector<ResolvedOp>> BitSchedule::resolved(unsigned bit) const {
  std::vector<std::vector<ResolvedOp>> out(slots_.size());
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    for (const auto& op : slots_[s]) {
      out[s].push_back(ResolvedOp{op.slot, op.block, op.kind, resolve(op.src_a, bit), resolve(op.src_b, bit),
                                  resolve(op.dst, bit)});
    }
  }
  return out;
}

std::vector<std::tuple<std::size_t, BlockId, OpKind>> BitSchedule::kind_sequence(unsigned bit) const {
  std::vector<std::tuple<std::size_t, BlockId, OpKind>> seq;
  for (const auto& slot : resolved(bit)) {
    for (const auto& op : slot) seq.emplace_back(op.slot, op.block, op.kind);
  }
  return seq;
}

std::optional<MicroOp> BitSchedule::op_for(std::size_t slot, BlockId b) const {
  for (const auto& op : slots_.at(slot)) {
    if (op.block == b) return op;
  }
  return std::nullopt;
}

BitSchedule build_schedule() {
  using O = Operand;
  ScheduleBuilder s;

  // Slot 0: fetch the key bit and point the multiplexer at the pair to double.
  s.op(0, BlockId::Controller, OpKind::Load);
  s.op(0, BlockId::Multiplexer, OpKind::MuxSelect, O::XD, O::ZD);

  // Madd: T1 = XA*ZD, T2 = XD*ZA, ZA = (T1+T2)^2, XA = x*ZA + T1*T2.
  // Mdouble: ZD = XD^2 * ZD^2, XD = XD^4 + b*ZD^4.
  s.multiply(1, O::XA, O::ZD, O::T1);
  s.square(3, O::XD, O::T3);
  s.multiply(9, O::XD, O::ZA, O::T2);
  s.square(11, O::ZD, O::T4);
  s.add(17, O::T1, O::T2, O::ZA);
  s.square(18, O::ZA, O::ZA);
  s.multiply(19, O::T1, O::T2, O::T1);
  s.multiply(27, O::XP, O::ZA, O::XA);
  s.add(35, O::XA, O::T1, O::XA);
  s.multiply(36, O::T3, O::T4, O::ZD);
  s.square(38, O::T3, O::T3);
  s.square(40, O::T4, O::T4);
  s.multiply(44, O::B, O::T4, O::T4);
  s.add(52, O::T3, O::T4, O::XD);

  // Slot 53: release the multiplexer and retire the key bit.
  s.op(53, BlockId::Multiplexer, OpKind::MuxSelect);
  s.op(53, BlockId::Controller, OpKind::Store);

  return BitSchedule(s.take());
}

}  // namespace sculi::accel
