#pragma once

// Deterministic random generation for the property suites. Doubles are
// built from raw mt19937_64 bits rather than std distributions, so a seed
// produces the same stream on every platform and standard library.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "superq/grassmann.hpp"
#include "superq/supermatrix.hpp"
#include "superq/superstate.hpp"

namespace superq {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t bits() { return g_(); }

  double unit() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }

  double real(double lo, double hi) { return lo + unit() * (hi - lo); }

  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(unit() * (hi - lo + 1)) % (hi - lo + 1);
  }

  bool flip() { return (g_() & 1) != 0; }

  Parity parity() { return flip() ? Parity::odd : Parity::even; }

  cplx complex(double scale = 1.0) { return {real(-scale, scale), real(-scale, scale)}; }

  // Nonzero complex bounded away from zero, for well-conditioned bodies.
  cplx complex_away_from_zero(double lo = 0.3, double hi = 1.5) {
    const double r = real(lo, hi);
    const double phi = real(0.0, 6.283185307179586);
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  std::uint64_t monomial_mask(int n, Parity p) {
    const std::uint64_t limit = (std::uint64_t{1} << n) - 1;
    for (int tries = 0; tries < 256; ++tries) {
      const std::uint64_t m = g_() & limit;
      if (parity_of_popcount(m) == p && (p == Parity::even || m != 0)) {
        if (p == Parity::even && m == 0) continue;  // body handled separately
        return m;
      }
    }
    // Deterministic fallback: a single generator or the first pair.
    return p == Parity::odd ? 1 : 3;
  }

  // Homogeneous element of the given parity: an optional body (even only)
  // plus a few random monomials. Small algebras without monomials of the
  // requested parity fall back to what exists (body, or zero).
  GrassmannElement homogeneous(int n, Parity p, double scale = 1.0, int max_terms = 3,
                               double body_scale = 1.0) {
    GrassmannElement::term_map terms;
    if (p == Parity::even && body_scale > 0.0) terms.emplace(0, complex(body_scale));
    const bool monomials_exist = (p == Parity::odd) ? n >= 1 : n >= 2;
    if (monomials_exist) {
      const int count = integer(1, max_terms);
      for (int k = 0; k < count; ++k) terms[monomial_mask(n, p)] += complex(scale);
    }
    return GrassmannElement::from_terms(n, std::move(terms));
  }

  GrassmannElement element(int n, double scale = 1.0, int max_terms = 4) {
    GrassmannElement z = homogeneous(n, Parity::even, scale, max_terms);
    if (n > 0) z += homogeneous(n, Parity::odd, scale, max_terms);
    return z;
  }

  GrassmannElement soul_only(int n, double scale = 1.0) {
    GrassmannElement z = homogeneous(n, Parity::even, scale, 2, /*body_scale=*/0.0);
    if (n > 0) z += homogeneous(n, Parity::odd, scale, 2);
    return z.soul();
  }

  // Block-consistent supermatrix of the given total parity.
  SuperMatrix matrix(SuperFormat f, Parity parity, int n, double scale = 1.0,
                     double body_scale = 1.0) {
    SuperMatrix m(f, parity, n);
    for (int i = 0; i < f.dim(); ++i)
      for (int j = 0; j < f.dim(); ++j) {
        const Parity want = m.entry_parity(i, j);
        m.at(i, j) = homogeneous(n, want, scale, 2, want == Parity::even ? body_scale : 0.0);
      }
    return m;
  }

  // Parity-0 matrix with a well-conditioned body (diagonal dominance).
  SuperMatrix invertible_matrix(SuperFormat f, int n, double soul_scale = 0.5) {
    SuperMatrix m = matrix(f, Parity::even, n, soul_scale, 0.4);
    for (int i = 0; i < f.dim(); ++i)
      m.at(i, i) += GrassmannElement::scalar(n, complex_away_from_zero(1.5, 2.5));
    return m;
  }

  // Small-norm parity-0 matrix for exponential identities.
  SuperMatrix small_matrix(SuperFormat f, int n) { return matrix(f, Parity::even, n, 0.25, 0.25); }

  // Homogeneous ket with the declared parity.
  SuperKet ket(SpaceFormat f, Parity parity, int n, double scale = 1.0) {
    SuperKet k(f, parity, n);
    for (int i = 0; i < f.dim(); ++i)
      k.coord(i) = homogeneous(n, parity_add(parity, f.slot(i)), scale, 2);
    return k;
  }

  // Coefficient vector of an even superqubit: (even, even, odd).
  std::vector<GrassmannElement> superqubit_vector(int n, double scale = 1.0) {
    return {homogeneous(n, Parity::even, scale, 2), homogeneous(n, Parity::even, scale, 2),
            homogeneous(n, Parity::odd, scale, 2)};
  }

  // Element of the orthosymplectic algebra: K^sT E + E K = 0, i.e.
  // traceless sp(2) block A, odd column B, row C tied to B, zero corner.
  SuperMatrix osp_algebra_element(int n, double scale = 0.5) {
    SuperMatrix k(SuperFormat{2, 1}, Parity::even, n);
    const GrassmannElement a = homogeneous(n, Parity::even, scale, 2, scale);
    const GrassmannElement b = homogeneous(n, Parity::even, scale, 2, scale);
    const GrassmannElement c = homogeneous(n, Parity::even, scale, 2, scale);
    k.at(0, 0) = a;
    k.at(0, 1) = b;
    k.at(1, 0) = c;
    k.at(1, 1) = -a;
    const GrassmannElement beta1 = homogeneous(n, Parity::odd, scale, 2);
    const GrassmannElement beta2 = homogeneous(n, Parity::odd, scale, 2);
    k.at(0, 2) = beta1;
    k.at(1, 2) = beta2;
    k.at(2, 0) = -beta2;
    k.at(2, 1) = beta1;
    return k;
  }

  // Body-only 2x2 with determinant 1.
  SuperMatrix sl2_matrix(int n = 0) {
    for (;;) {
      const cplx a = complex(), b = complex(), c = complex(), d = complex();
      const cplx det = a * d - b * c;
      if (std::abs(det) < 0.2) continue;
      const cplx root = std::sqrt(det);
      SuperMatrix m(SuperFormat{2, 0}, Parity::even, n);
      m.at(0, 0) = GrassmannElement::scalar(n, a / root);
      m.at(0, 1) = GrassmannElement::scalar(n, b / root);
      m.at(1, 0) = GrassmannElement::scalar(n, c / root);
      m.at(1, 1) = GrassmannElement::scalar(n, d / root);
      return m;
    }
  }

  std::vector<cplx> unit_amps(int d) {
    std::vector<cplx> v(d);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (cplx& a : v) {
        a = complex();
        n2 += std::norm(a);
      }
    } while (n2 < 1e-4);
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : v) a *= inv;
    return v;
  }

 private:
  std::mt19937_64 g_;
};

// Stable per-suite seed derivation.
inline std::uint64_t derive_seed(std::uint64_t base, const std::string& tag) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return base ^ h;
}

}  // namespace superq
