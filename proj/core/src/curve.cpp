#include "sculi/curve.hpp"

namespace sculi::curve {

const CurveParams<field::Gf233>& b233() {
  using field::Gf233;
  static const CurveParams<Gf233> params = [] {
    CurveParams<Gf233> c;
    c.name = "B-233";
    c.a = Gf233::one();
    c.b = Gf233::from_hex("066647ede6c332c7f8c0923bb58213b333b20e9ce4281fe115f7d8f90ad");
    c.base_point = AffinePoint<Gf233>{
        Gf233::from_hex("0fac9dfcbac8313bb2139f1bb755fef65bc391f8b36f8f8eb7371fd558b"),
        Gf233::from_hex("1006a08a41903350678e58528bebf8a0beff867a7ca36716f7e01f81052"), false};
    c.order = BigInt("0x1000000000000000000000000000013e974e72f8a6922031d2603cfe0d7");
    c.cofactor = 2;
    return c;
  }();
  return params;
}

const CurveParams<field::Gf16>& toy_curve() {
  using field::Gf16;
  static const CurveParams<Gf16> params = [] {
    CurveParams<Gf16> c;
    c.name = "toy-gf16";
    c.a = Gf16::one();
    c.b = Gf16::one();
    BigInt best = 0;
    for (const auto& p : enumerate_points(c.a, c.b)) {
      if (p.x.is_zero()) continue;
      const BigInt n = point_order(p, c);
      if (n > best) {
        best = n;
        c.base_point = p;
      }
    }
    c.order = best;
    const BigInt total = BigInt(enumerate_points(c.a, c.b).size() + 1);
    c.cofactor = static_cast<unsigned>(total / best);
    return c;
  }();
  return params;
}

}  // namespace sculi::curve
