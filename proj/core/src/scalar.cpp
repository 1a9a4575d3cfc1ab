#include "sculi/scalar.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace sculi {

Scalar::Scalar(const BigInt& value) {
  if (value < 0) throw std::invalid_argument("scalar must be non-negative");
  const std::size_t n = value == 0 ? 0 : boost::multiprecision::msb(value) + 1;
  bits_.resize(n);
  for (std::size_t i = 0; i < n; ++i) bits_[n - 1 - i] = boost::multiprecision::bit_test(value, i) ? 1 : 0;
}

Scalar Scalar::from_bits(std::span<const std::uint8_t> msb_first) {
  Scalar s;
  auto first = std::find_if(msb_first.begin(), msb_first.end(), [](std::uint8_t b) { return b != 0; });
  for (auto it = first; it != msb_first.end(); ++it) {
    if (*it > 1) throw std::invalid_argument("scalar bits must be 0 or 1");
    s.bits_.push_back(*it);
  }
  return s;
}

Scalar Scalar::from_hex(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  if (hex.empty()) throw std::invalid_argument("empty scalar hex");
  std::vector<std::uint8_t> bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument(std::string("invalid hex digit '") + c + "' in scalar");
    for (int b = 3; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  return from_bits(bits);
}

Scalar Scalar::random_with_length(std::size_t bit_length, std::uint64_t seed) {
  if (bit_length == 0) return Scalar{};
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(bit_length);
  bits[0] = 1;
  std::uint64_t pool = 0;
  int left = 0;
  for (std::size_t i = 1; i < bit_length; ++i) {
    if (left == 0) {
      pool = rng();
      left = 64;
    }
    bits[i] = static_cast<std::uint8_t>(pool & 1);
    pool >>= 1;
    --left;
  }
  return from_bits(bits);
}

Scalar Scalar::random_below(const BigInt& bound, std::uint64_t seed) {
  if (bound <= 1) throw std::invalid_argument("random_below needs bound > 1");
  std::mt19937_64 rng(seed);
  const std::size_t n = boost::multiprecision::msb(bound) + 1;
  // Rejection sampling over n-bit values.
  for (;;) {
    BigInt v = 0;
    for (std::size_t i = 0; i < n; i += 64) {
      v <<= 64;
      v |= rng();
    }
    const std::size_t drawn = ((n + 63) / 64) * 64;
    v >>= static_cast<unsigned>(drawn - n);
    if (v >= 1 && v < bound) return Scalar(v);
  }
}

BigInt Scalar::value() const {
  BigInt v = 0;
  for (auto b : bits_) {
    v <<= 1;
    if (b) v |= 1;
  }
  return v;
}

std::string Scalar::to_hex() const {
  if (bits_.empty()) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const std::size_t pad = (4 - bits_.size() % 4) % 4;
  int acc = 0;
  std::size_t count = pad;
  for (auto b : bits_) {
    acc = (acc << 1) | b;
    if (++count == 4) {
      out.push_back(kDigits[acc]);
      acc = 0;
      count = 0;
    }
  }
  return out;
}

}  // namespace sculi
