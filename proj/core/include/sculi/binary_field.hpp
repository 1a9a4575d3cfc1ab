// Arithmetic in GF(2^m), polynomial basis.
//
// The field is fixed at compile time by its degree and the exponents of the
// lower terms of the reduction polynomial, e.g. BinaryField<233, 74, 0> is
// GF(2)[x] / (x^233 + x^74 + 1). Elements are immutable values; every public
// operation returns a canonical element (no bits at or above the degree).
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sculi::field {

/// Thrown by inv() for the zero element.
class InversionOfZero : public std::domain_error {
 public:
  InversionOfZero() : std::domain_error("inversion of zero in GF(2^m)") {}
};

namespace detail {

__extension__ typedef unsigned __int128 u128;

// Carry-less 64x64 -> 128 product, 4-bit window.
inline u128 clmul64(std::uint64_t a, std::uint64_t b) {
  u128 table[16];
  table[0] = 0;
  table[1] = b;
  for (int u = 2; u < 16; u += 2) {
    table[u] = table[u / 2] << 1;
    table[u + 1] = table[u] ^ b;
  }
  u128 r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    r = (r << 4) ^ table[(a >> shift) & 0xF];
  }
  return r;
}

// Interleaves zero bits: bit i of the low 32 bits moves to bit 2i.
inline std::uint64_t spread32(std::uint64_t x) {
  x &= 0xFFFFFFFFull;
  x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
  x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
  x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
  x = (x | (x << 2)) & 0x3333333333333333ull;
  x = (x | (x << 1)) & 0x5555555555555555ull;
  return x;
}

}  // namespace detail

template <unsigned Degree, unsigned... LowerTerms>
class BinaryField {
  static_assert(Degree >= 2, "degree must be at least 2");
  static_assert(((LowerTerms < Degree) && ...), "lower terms must be below the degree");
  static_assert(((LowerTerms == 0) || ...), "reduction polynomial must have a constant term");

 public:
  static constexpr unsigned kDegree = Degree;
  static constexpr std::size_t kWords = (Degree + 63) / 64;
  static constexpr std::size_t kHexDigits = (Degree + 3) / 4;
  using Words = std::array<std::uint64_t, kWords>;

  constexpr BinaryField() = default;

  static constexpr BinaryField zero() { return BinaryField{}; }
  static constexpr BinaryField one() { return monomial(0); }

  /// x^i for i < Degree.
  static constexpr BinaryField monomial(unsigned i) {
    if (i >= Degree) throw std::out_of_range("monomial exponent exceeds field degree");
    BinaryField r;
    r.words_[i / 64] = std::uint64_t{1} << (i % 64);
    return r;
  }

  /// Builds an element from raw words; throws if any bit >= Degree is set.
  static constexpr BinaryField from_words(const Words& w) {
    BinaryField r;
    r.words_ = w;
    if (!r.canonical()) throw std::invalid_argument("field element has bits at or above the degree");
    return r;
  }

  /// Low bits of an integer (throws when the value does not fit the field).
  static constexpr BinaryField from_uint(std::uint64_t v) {
    Words w{};
    w[0] = v;
    return from_words(w);
  }

  /// Parses up to kHexDigits hex digits, most significant nibble first. An
  /// optional "0x" prefix is accepted.
  static BinaryField from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    if (hex.empty() || hex.size() > kHexDigits) {
      throw std::invalid_argument("field hex must have 1.." + std::to_string(kHexDigits) + " digits, got " +
                                  std::to_string(hex.size()));
    }
    Words w{};
    std::size_t nibble = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++nibble) {
      const char c = *it;
      std::uint64_t v;
      if (c >= '0' && c <= '9') v = static_cast<std::uint64_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v = static_cast<std::uint64_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v = static_cast<std::uint64_t>(c - 'A' + 10);
      else throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
      const std::size_t bit = nibble * 4;
      if (bit / 64 < kWords) w[bit / 64] |= v << (bit % 64);
      else if (v != 0) throw std::invalid_argument("field hex value exceeds the degree");
    }
    return from_words(w);
  }

  /// Exactly kHexDigits lowercase digits.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(kHexDigits, '0');
    for (std::size_t nibble = 0; nibble < kHexDigits; ++nibble) {
      const std::size_t bit = nibble * 4;
      const auto v = (words_[bit / 64] >> (bit % 64)) & 0xF;
      out[kHexDigits - 1 - nibble] = kDigits[v];
    }
    return out;
  }

  constexpr const Words& words() const { return words_; }
  constexpr bool is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  constexpr bool is_one() const { return *this == one(); }
  constexpr bool bit(unsigned i) const { return i < Degree && ((words_[i / 64] >> (i % 64)) & 1u); }

  /// Degree of the polynomial, -1 for zero.
  constexpr int degree() const {
    for (std::size_t i = kWords; i-- > 0;) {
      if (words_[i]) return static_cast<int>(i * 64 + 63 - static_cast<unsigned>(std::countl_zero(words_[i])));
    }
    return -1;
  }

  constexpr unsigned popcount() const {
    unsigned n = 0;
    for (auto w : words_) n += static_cast<unsigned>(std::popcount(w));
    return n;
  }

  friend constexpr unsigned hamming_distance(const BinaryField& a, const BinaryField& b) {
    unsigned n = 0;
    for (std::size_t i = 0; i < kWords; ++i) n += static_cast<unsigned>(std::popcount(a.words_[i] ^ b.words_[i]));
    return n;
  }

  friend constexpr bool operator==(const BinaryField&, const BinaryField&) = default;

  friend constexpr BinaryField add(const BinaryField& a, const BinaryField& b) {
    BinaryField r;
    for (std::size_t i = 0; i < kWords; ++i) r.words_[i] = a.words_[i] ^ b.words_[i];
    return r;
  }

  friend BinaryField mul(const BinaryField& a, const BinaryField& b) {
    Product t{};
    for (std::size_t i = 0; i < kWords; ++i) {
      if (!a.words_[i]) continue;
      for (std::size_t j = 0; j < kWords; ++j) {
        const detail::u128 p = detail::clmul64(a.words_[i], b.words_[j]);
        t[i + j] ^= static_cast<std::uint64_t>(p);
        t[i + j + 1] ^= static_cast<std::uint64_t>(p >> 64);
      }
    }
    return reduce(t);
  }

  friend BinaryField sqr(const BinaryField& a) {
    Product t{};
    for (std::size_t i = 0; i < kWords; ++i) {
      t[2 * i] = detail::spread32(a.words_[i]);
      t[2 * i + 1] = detail::spread32(a.words_[i] >> 32);
    }
    return reduce(t);
  }

  /// Multiplicative inverse by the binary extended Euclidean algorithm.
  friend BinaryField inv(const BinaryField& a) {
    if (a.is_zero()) throw InversionOfZero{};
    Wide u = widen(a.words_);
    Wide v = modulus();
    Wide g1{};
    Wide g2{};
    g1[0] = 1;
    const Wide f = modulus();
    while (!wide_is_one(u) && !wide_is_one(v)) {
      while (!(u[0] & 1)) {
        wide_shr1(u);
        if (g1[0] & 1) wide_xor(g1, f);
        wide_shr1(g1);
      }
      while (!(v[0] & 1)) {
        wide_shr1(v);
        if (g2[0] & 1) wide_xor(g2, f);
        wide_shr1(g2);
      }
      if (wide_degree(u) > wide_degree(v)) {
        wide_xor(u, v);
        wide_xor(g1, g2);
      } else {
        wide_xor(v, u);
        wide_xor(g2, g1);
      }
    }
    return narrow(wide_is_one(u) ? g1 : g2);
  }

  friend constexpr BinaryField operator+(const BinaryField& a, const BinaryField& b) { return add(a, b); }
  friend BinaryField operator*(const BinaryField& a, const BinaryField& b) { return mul(a, b); }

 private:
  using Product = std::array<std::uint64_t, 2 * kWords>;
  // Wide enough for the reduction polynomial itself (Degree + 1 bits).
  static constexpr std::size_t kWideWords = Degree / 64 + 1;
  using Wide = std::array<std::uint64_t, kWideWords>;

  constexpr bool canonical() const {
    if constexpr (Degree % 64 != 0) {
      if (words_[kWords - 1] >> (Degree % 64)) return false;
    }
    return true;
  }

  // XORs `value` into t, with bit 0 of `value` landing at global bit `offset`
  // (offset may be negative; the bits shifted out below zero must be clear).
  static void xor_at(Product& t, std::uint64_t value, long offset) {
    if (offset < 0) {
      value >>= static_cast<unsigned>(-offset);
      offset = 0;
    }
    const auto word = static_cast<std::size_t>(offset / 64);
    const auto shift = static_cast<unsigned>(offset % 64);
    t[word] ^= value << shift;
    if (shift != 0 && word + 1 < t.size()) t[word + 1] ^= value >> (64 - shift);
  }

  static BinaryField reduce(Product& t) {
    constexpr std::size_t kTopWord = Degree / 64;
    for (std::size_t w = t.size(); w-- > kTopWord;) {
      const std::uint64_t mask = (w == kTopWord) ? (~std::uint64_t{0} << (Degree % 64)) : ~std::uint64_t{0};
      // Folding may land back in the same word when the gap between the
      // degree and the largest lower term is under 64 bits.
      for (std::uint64_t high = t[w] & mask; high != 0; high = t[w] & mask) {
        t[w] ^= high;
        const long base = static_cast<long>(w) * 64 - static_cast<long>(Degree);
        (xor_at(t, high, base + static_cast<long>(LowerTerms)), ...);
      }
      if (w == kTopWord) break;
    }
    BinaryField r;
    std::copy_n(t.begin(), kWords, r.words_.begin());
    return r;
  }

  static constexpr Wide modulus() {
    Wide f{};
    f[Degree / 64] |= std::uint64_t{1} << (Degree % 64);
    ((f[LowerTerms / 64] |= std::uint64_t{1} << (LowerTerms % 64)), ...);
    return f;
  }
  static constexpr Wide widen(const Words& w) {
    Wide r{};
    std::copy(w.begin(), w.end(), r.begin());
    return r;
  }
  static constexpr BinaryField narrow(const Wide& w) {
    BinaryField r;
    std::copy_n(w.begin(), kWords, r.words_.begin());
    return r;
  }
  static constexpr bool wide_is_one(const Wide& w) {
    if (w[0] != 1) return false;
    for (std::size_t i = 1; i < kWideWords; ++i)
      if (w[i]) return false;
    return true;
  }
  static constexpr void wide_shr1(Wide& w) {
    for (std::size_t i = 0; i + 1 < kWideWords; ++i) w[i] = (w[i] >> 1) | (w[i + 1] << 63);
    w[kWideWords - 1] >>= 1;
  }
  static constexpr void wide_xor(Wide& a, const Wide& b) {
    for (std::size_t i = 0; i < kWideWords; ++i) a[i] ^= b[i];
  }
  static constexpr int wide_degree(const Wide& w) {
    for (std::size_t i = kWideWords; i-- > 0;) {
      if (w[i]) return static_cast<int>(i * 64 + 63 - static_cast<unsigned>(std::countl_zero(w[i])));
    }
    return -1;
  }

  Words words_{};
};

/// NIST B-233 field: x^233 + x^74 + 1.
using Gf233 = BinaryField<233, 74, 0>;
/// Small test field: x^4 + x + 1.
using Gf16 = BinaryField<4, 1, 0>;

}  // namespace sculi::field
