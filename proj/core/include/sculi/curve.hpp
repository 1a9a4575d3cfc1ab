// Binary-curve point arithmetic: y^2 + xy = x^3 + a x^2 + b over GF(2^m).
//
// Two independent routes to kP are provided: the x-only Montgomery ladder in
// Lopez-Dahab projective coordinates (the accelerator's algorithm) and
// textbook affine double-and-add, used as the correctness oracle.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sculi/binary_field.hpp"
#include "sculi/scalar.hpp"

namespace sculi::curve {

/// The ladder reached Z = 0 before its final step, or the base point has
/// x = 0 (its x-only representation cannot recover y).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
struct AffinePoint {
  F x{};
  F y{};
  bool infinity = false;

  static AffinePoint at_infinity() { return AffinePoint{F{}, F{}, true}; }

  friend bool operator==(const AffinePoint& p, const AffinePoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
};

template <class F>
struct CurveParams {
  std::string name;
  F a;
  F b;
  AffinePoint<F> base_point;
  BigInt order;  // order of base_point
  unsigned cofactor = 1;
};

/// NIST B-233 (FIPS 186-4 D.1.3.2).
const CurveParams<field::Gf233>& b233();

// ---------------------------------------------------------------------------
// Affine group law

template <class F>
bool is_on_curve(const AffinePoint<F>& p, const CurveParams<F>& params) {
  if (p.infinity) return true;
  const F x2 = sqr(p.x);
  const F lhs = sqr(p.y) + p.x * p.y;
  const F rhs = x2 * p.x + params.a * x2 + params.b;
  return lhs == rhs;
}

template <class F>
AffinePoint<F> negate(const AffinePoint<F>& p) {
  if (p.infinity) return p;
  return AffinePoint<F>{p.x, p.x + p.y, false};
}

template <class F>
AffinePoint<F> affine_double(const AffinePoint<F>& p, const CurveParams<F>& params) {
  if (p.infinity || p.x.is_zero()) return AffinePoint<F>::at_infinity();
  const F lambda = p.x + p.y * inv(p.x);
  const F x3 = sqr(lambda) + lambda + params.a;
  const F y3 = sqr(p.x) + (lambda + F::one()) * x3;
  return AffinePoint<F>{x3, y3, false};
}

template <class F>
AffinePoint<F> affine_add(const AffinePoint<F>& p, const AffinePoint<F>& q, const CurveParams<F>& params) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  if (p.x == q.x) {
    if (p.y == q.y) return affine_double(p, params);
    return AffinePoint<F>::at_infinity();
  }
  const F lambda = (p.y + q.y) * inv(p.x + q.x);
  const F x3 = sqr(lambda) + lambda + p.x + q.x + params.a;
  const F y3 = lambda * (p.x + x3) + x3 + p.y;
  return AffinePoint<F>{x3, y3, false};
}

/// Left-to-right affine double-and-add over all bits of k.
template <class F>
AffinePoint<F> double_and_add_kp(const Scalar& k, const AffinePoint<F>& p, const CurveParams<F>& params) {
  auto r = AffinePoint<F>::at_infinity();
  for (auto bit : k.bits()) {
    r = affine_double(r, params);
    if (bit) r = affine_add(r, p, params);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lopez-Dahab x-only Montgomery ladder

/// Ladder accumulators (X1:Z1) = k'P and (X2:Z2) = (k'+1)P.
template <class F>
struct LDPair {
  F x1, z1, x2, z2;
  friend bool operator==(const LDPair&, const LDPair&) = default;
};

enum class FieldOp : std::uint8_t { Mul, Sqr, Add };

template <class F>
LDPair<F> ladder_init(const F& x, const F& b) {
  const F x2 = sqr(x);
  return LDPair<F>{x, F::one(), sqr(x2) + b, x2};
}

/// One ladder step: Madd into the pair selected by `bit`, Mdouble of the
/// other. The field operations run in the same order for either bit; only
/// operand selection changes. When `ops` is non-null the operation kinds are
/// appended to it.
template <class F>
LDPair<F> ladder_step(const LDPair<F>& in, unsigned bit, const F& x, const F& b,
                      std::vector<FieldOp>* ops = nullptr) {
  auto note = [ops](FieldOp op) {
    if (ops) ops->push_back(op);
  };
  LDPair<F> out = in;
  // bit 1: add into (X1:Z1), double (X2:Z2); bit 0: the mirror image.
  F& xa = bit ? out.x1 : out.x2;
  F& za = bit ? out.z1 : out.z2;
  F& xd = bit ? out.x2 : out.x1;
  F& zd = bit ? out.z2 : out.z1;

  const F t1 = xa * zd;
  note(FieldOp::Mul);
  const F t2 = xd * za;
  note(FieldOp::Mul);
  F t3 = sqr(xd);
  note(FieldOp::Sqr);
  F t4 = sqr(zd);
  note(FieldOp::Sqr);
  za = t1 + t2;
  note(FieldOp::Add);
  za = sqr(za);
  note(FieldOp::Sqr);
  const F t12 = t1 * t2;
  note(FieldOp::Mul);
  xa = x * za;
  note(FieldOp::Mul);
  xa = xa + t12;
  note(FieldOp::Add);
  zd = t3 * t4;
  note(FieldOp::Mul);
  t3 = sqr(t3);
  note(FieldOp::Sqr);
  t4 = sqr(t4);
  note(FieldOp::Sqr);
  t4 = b * t4;
  note(FieldOp::Mul);
  xd = t3 + t4;
  note(FieldOp::Add);
  return out;
}

/// Projective-to-affine conversion with y recovery. Handles the two legal
/// end states with a zero Z: k'P = O and (k'+1)P = O.
template <class F>
AffinePoint<F> ladder_finish(const LDPair<F>& s, const AffinePoint<F>& p) {
  if (s.z1.is_zero()) return AffinePoint<F>::at_infinity();
  if (s.z2.is_zero()) return negate(p);
  const F& x = p.x;
  const F z12 = s.z1 * s.z2;
  const F x3 = s.x1 * inv(s.z1);
  const F t = (s.x1 + x * s.z1) * (s.x2 + x * s.z2) + (sqr(x) + p.y) * z12;
  const F y3 = (x + x3) * t * inv(x * z12) + p.y;
  return AffinePoint<F>{x3, y3, false};
}

/// kP by the x-only ladder, one step per bit after the leading one. When
/// `states` is non-null the pair after each step is appended.
template <class F>
AffinePoint<F> ladder_kp(const Scalar& k, const AffinePoint<F>& p, const CurveParams<F>& params,
                         std::vector<LDPair<F>>* states = nullptr) {
  if (k.is_zero() || p.infinity) return AffinePoint<F>::at_infinity();
  if (p.x.is_zero()) throw DegenerateInput("base point has x = 0");
  if (k.bit_length() == 1) return p;
  const auto bits = k.processed_bits();
  LDPair<F> s = ladder_init(p.x, params.b);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    s = ladder_step(s, bits[i], p.x, params.b);
    if (states) states->push_back(s);
    if (i + 1 < bits.size() && (s.z1.is_zero() || s.z2.is_zero())) {
      throw DegenerateInput("ladder reached Z = 0 at processed bit " + std::to_string(i));
    }
  }
  return ladder_finish(s, p);
}

// ---------------------------------------------------------------------------
// Serialization: "<x hex>,<y hex>" or "INF".

template <class F>
std::string to_string(const AffinePoint<F>& p) {
  if (p.infinity) return "INF";
  return p.x.to_hex() + "," + p.y.to_hex();
}

template <class F>
AffinePoint<F> point_from_string(std::string_view text) {
  if (text == "INF") return AffinePoint<F>::at_infinity();
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("point must be 'x,y' hex pair or INF");
  return AffinePoint<F>{F::from_hex(text.substr(0, comma)), F::from_hex(text.substr(comma + 1)), false};
}

// ---------------------------------------------------------------------------
// Small curve over GF(2^4) for exhaustive tests.

/// Every affine point of y^2 + xy = x^3 + a x^2 + b over a small field,
/// found by enumeration (only practical for tiny degrees).
template <class F>
std::vector<AffinePoint<F>> enumerate_points(const F& a, const F& b) {
  static_assert(F::kDegree <= 12, "enumeration is for tiny fields only");
  std::vector<AffinePoint<F>> pts;
  const std::uint64_t q = std::uint64_t{1} << F::kDegree;
  CurveParams<F> c{"enum", a, b, {}, 0, 1};
  for (std::uint64_t xi = 0; xi < q; ++xi)
    for (std::uint64_t yi = 0; yi < q; ++yi) {
      AffinePoint<F> p{F::from_uint(xi), F::from_uint(yi), false};
      if (is_on_curve(p, c)) pts.push_back(p);
    }
  return pts;
}

/// Order of p by repeated affine addition.
template <class F>
BigInt point_order(const AffinePoint<F>& p, const CurveParams<F>& params) {
  if (p.infinity) return 1;
  BigInt n = 1;
  auto r = p;
  while (!r.infinity) {
    r = affine_add(r, p, params);
    ++n;
  }
  return n;
}

/// y^2 + xy = x^3 + x^2 + 1 over GF(2^4), base point of maximal order.
const CurveParams<field::Gf16>& toy_curve();

}  // namespace sculi::curve
