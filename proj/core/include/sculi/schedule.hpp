// The accelerator's per-key-bit microprogram.
//
// One ladder step takes 54 clock cycles: six digit-serial field
// multiplications of 8 cycles each plus 6 glue cycles. Every slot runs the
// same operation kinds for either key bit; the bit only changes which
// physical registers the multiplexer selects.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace sculi::accel {

inline constexpr std::size_t kCyclesPerBit = 54;
inline constexpr std::size_t kMulCycles = 8;
inline constexpr std::size_t kDigitBits = 32;
inline constexpr double kClockHz = 4.0e6;

enum class BlockId : std::uint8_t { FieldMultiplier, FieldAdder, Registers, Controller, Multiplexer };
inline constexpr std::size_t kBlockCount = 5;
inline constexpr std::array<BlockId, kBlockCount> kAllBlocks{BlockId::FieldMultiplier, BlockId::FieldAdder,
                                                             BlockId::Registers, BlockId::Controller,
                                                             BlockId::Multiplexer};

constexpr std::size_t index(BlockId b) { return static_cast<std::size_t>(b); }
std::string_view block_name(BlockId b);
/// Accepts the names returned by block_name(); throws std::invalid_argument otherwise.
BlockId block_from_name(std::string_view name);
/// Validates a raw block index.
BlockId block_from_index(int i);

struct Block {
  BlockId id;
  unsigned gate_count;  // relative size weight
};

/// Default relative gate counts.
std::array<Block, kBlockCount> default_blocks();

enum class OpKind : std::uint8_t { MulStep, Add, Sqr, Load, Store, MuxSelect, Nop };
std::string_view op_kind_name(OpKind k);

/// Logical operands of a ladder step. XA/ZA is the pair receiving the point
/// addition, XD/ZD the pair being doubled; which physical registers they
/// name depends on the key bit.
enum class Operand : std::uint8_t { None, XA, ZA, XD, ZD, T1, T2, T3, T4, XP, B };

/// Physical register file layout.
inline constexpr int kRegX1 = 0, kRegZ1 = 1, kRegX2 = 2, kRegZ2 = 3, kRegT1 = 4, kRegT2 = 5, kRegT3 = 6,
                     kRegT4 = 7, kRegXP = 8, kRegB = 9;
inline constexpr std::size_t kRegisterCount = 10;
inline constexpr int kNoRegister = -1;

/// Register index of a logical operand for the given key bit.
int resolve(Operand op, unsigned bit);

struct MicroOp {
  std::size_t slot = 0;
  BlockId block = BlockId::Controller;
  OpKind kind = OpKind::Nop;
  Operand src_a = Operand::None;
  Operand src_b = Operand::None;
  Operand dst = Operand::None;
};

/// A MicroOp with its operands bound to physical registers.
struct ResolvedOp {
  std::size_t slot = 0;
  BlockId block = BlockId::Controller;
  OpKind kind = OpKind::Nop;
  int src_a = kNoRegister;
  int src_b = kNoRegister;
  int dst = kNoRegister;

  friend bool operator==(const ResolvedOp&, const ResolvedOp&) = default;
};

class BitSchedule {
 public:
  using Slot = std::vector<MicroOp>;

  explicit BitSchedule(std::array<Slot, kCyclesPerBit> slots);

  std::size_t size() const { return slots_.size(); }
  const Slot& slot(std::size_t s) const { return slots_.at(s); }
  const std::array<Slot, kCyclesPerBit>& slots() const { return slots_; }

  /// Every slot's ops bound to registers for `bit`.
  std::vector<std::vector<ResolvedOp>> resolved(unsigned bit) const;

  /// (slot, block, kind) triples in slot order; independent of the bit.
  std::vector<std::tuple<std::size_t, BlockId, OpKind>> kind_sequence(unsigned bit) const;

  /// The op a block performs in a slot, if any (at most one per block).
  std::optional<MicroOp> op_for(std::size_t slot, BlockId b) const;

 private:
  std::array<Slot, kCyclesPerBit> slots_;
};

/// The fixed 54-slot microprogram for one ladder step.
BitSchedule build_schedule();

}  // namespace sculi::accel
