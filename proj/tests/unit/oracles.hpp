// Slow reference implementations shared by the unit and acceptance tests.
// Nothing here reuses the optimized code paths under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sculi/binary_field.hpp"

namespace oracle {

/// Polynomial over GF(2) as a coefficient vector, index = degree.
using Poly = std::vector<std::uint8_t>;

template <class F>
Poly to_poly(const F& a) {
  Poly p(F::kDegree, 0);
  for (unsigned i = 0; i < F::kDegree; ++i) p[i] = a.bit(i) ? 1 : 0;
  return p;
}

template <class F>
F from_poly(const Poly& p) {
  F out;
  for (unsigned i = 0; i < p.size(); ++i) {
    if (p[i]) out = out + F::monomial(i);
  }
  return out;
}

/// Schoolbook carry-less product followed by long division by the modulus
/// whose set coefficients are `modulus_terms`.
template <class F>
F schoolbook_mul(const F& a, const F& b, const std::vector<unsigned>& modulus_terms) {
  const Poly pa = to_poly(a);
  const Poly pb = to_poly(b);
  Poly prod(2 * F::kDegree, 0);
  for (unsigned i = 0; i < F::kDegree; ++i) {
    for (unsigned j = 0; j < F::kDegree; ++j) prod[i + j] ^= pa[i] & pb[j];
  }
  for (unsigned d = 2 * F::kDegree - 1; d >= F::kDegree; --d) {
    if (!prod[d]) continue;
    for (unsigned t : modulus_terms) prod[d - F::kDegree + t] ^= 1;
  }
  prod.resize(F::kDegree);
  return from_poly<F>(prod);
}

template <class F>
F random_element(std::mt19937_64& rng) {
  typename F::Words w{};
  for (auto& x : w) x = rng();
  constexpr unsigned top = F::kDegree % 64;
  if (top != 0) w.back() &= (std::uint64_t{1} << top) - 1;
  return F::from_words(w);
}

/// Brute-force GF(2^4) modulo x^4 + x + 1 on 4-bit integers.
inline unsigned gf16_mul(unsigned a, unsigned b) {
  unsigned r = 0;
  for (int i = 0; i < 4; ++i) {
    if (b & (1u << i)) r ^= a << i;
  }
  for (int d = 6; d >= 4; --d) {
    if (r & (1u << d)) r ^= 0x13u << (d - 4);
  }
  return r;
}

/// Fraction of a 2-D Gaussian (centre cx, cy; std s) inside a rectangle,
/// from the error function.
inline double gaussian_mass(double cx, double cy, double s, double x0, double y0, double x1, double y1) {
  auto axis = [s](double c, double lo, double hi) {
    const double k = 1.0 / (s * std::sqrt(2.0));
    return 0.5 * (std::erf((hi - c) * k) - std::erf((lo - c) * k));
  };
  return axis(cx, x0, x1) * axis(cy, y0, y1);
}

}  // namespace oracle
