#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sculi {

using BigInt = boost::multiprecision::cpp_int;

/// A scalar k as an MSB-first bit sequence starting at its leading 1.
///
/// The ladder consumes every bit after the leading one, so a 233-bit scalar
/// yields 232 processed bits. Zero is represented by an empty sequence.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(const BigInt& value);
  /// MSB-first bits; leading zeros are stripped.
  static Scalar from_bits(std::span<const std::uint8_t> msb_first);
  static Scalar from_hex(std::string_view hex);
  static Scalar from_uint(std::uint64_t v) { return Scalar(BigInt(v)); }

  /// Uniform 233-bit-style scalar: `bit_length` bits with the top bit set.
  static Scalar random_with_length(std::size_t bit_length, std::uint64_t seed);
  /// Uniform in [1, bound).
  static Scalar random_below(const BigInt& bound, std::uint64_t seed);

  bool is_zero() const { return bits_.empty(); }
  std::size_t bit_length() const { return bits_.size(); }
  std::size_t processed_length() const { return bits_.empty() ? 0 : bits_.size() - 1; }
  /// All bits, MSB first (bits()[0] == 1 unless zero).
  std::span<const std::uint8_t> bits() const { return bits_; }
  /// Bits after the leading one, in processing order.
  std::span<const std::uint8_t> processed_bits() const {
    return bits_.empty() ? std::span<const std::uint8_t>{} : std::span<const std::uint8_t>(bits_).subspan(1);
  }

  BigInt value() const;
  /// Lowercase hex without prefix; "0" for zero.
  std::string to_hex() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace sculi
