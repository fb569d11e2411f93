#pragma once

// Exact arithmetic in the complex Grassmann algebra on N anticommuting
// generators theta_1..theta_N. Elements are sparse maps from canonical
// monomials (bit sets over generator indices) to complex coefficients.
// Everything is immutable-after-construction and safe to share across
// threads.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "superq/error.hpp"

namespace superq {

using cplx = std::complex<double>;

// Coefficients below this magnitude are dropped after every operation,
// keeping the sparse form canonical under float round-off.
inline constexpr double kCoeffZeroThreshold = 1e-14;

inline constexpr int kMaxGenerators = 62;

enum class Parity : int { even = 0, odd = 1 };

constexpr Parity parity_add(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}

constexpr int parity_int(Parity p) { return static_cast<int>(p); }

// (-1)^p
constexpr double parity_sign(Parity p) { return p == Parity::even ? 1.0 : -1.0; }

constexpr Parity parity_of_popcount(std::uint64_t mask) {
  return static_cast<Parity>(std::popcount(mask) & 1);
}

inline Parity parity_from_int(int v) {
  if (v != 0 && v != 1) throw parse_error("parity must be 0 or 1");
  return static_cast<Parity>(v);
}

// Sign of the permutation that merges two ascending generator sequences,
// i.e. the parity of the number of pairs (i in a, j in b) with i > j.
inline int merge_sign(std::uint64_t a, std::uint64_t b) {
  int swaps = 0;
  a >>= 1;
  while (a) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

class GrassmannElement {
 public:
  using term_map = std::map<std::uint64_t, cplx>;

  explicit GrassmannElement(int generator_count) : n_(check_n(generator_count)) {}

  static GrassmannElement scalar(int n, cplx value) {
    GrassmannElement z(n);
    z.add_term(0, value);
    return z;
  }

  // theta_index, 1-based.
  static GrassmannElement generator(int n, int index) {
    GrassmannElement z(n);
    if (index < 1 || index > n) throw format_error("generator index out of range");
    z.add_term(std::uint64_t{1} << (index - 1), cplx{1.0, 0.0});
    return z;
  }

  // coeff * theta_{g1} theta_{g2} ... with g strictly increasing.
  static GrassmannElement monomial(int n, std::span<const int> gens, cplx coeff) {
    GrassmannElement z(n);
    std::uint64_t mask = 0;
    int prev = 0;
    for (int g : gens) {
      if (g < 1 || g > n) throw format_error("generator index out of range");
      if (g <= prev) throw format_error("monomial generators must be strictly increasing");
      mask |= std::uint64_t{1} << (g - 1);
      prev = g;
    }
    z.add_term(mask, coeff);
    return z;
  }

  static GrassmannElement monomial(int n, std::initializer_list<int> gens, cplx coeff) {
    return monomial(n, std::span<const int>(gens.begin(), gens.size()), coeff);
  }

  static GrassmannElement from_terms(int n, term_map terms) {
    GrassmannElement z(n);
    const std::uint64_t limit = (n >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    for (auto& [mask, c] : terms) {
      if (mask & ~limit) throw format_error("monomial uses a generator beyond the algebra");
      z.add_term(mask, c);
    }
    return z;
  }

  int generators() const { return n_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx body() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? cplx{} : it->second;
  }

  GrassmannElement soul() const {
    GrassmannElement z(n_);
    for (auto& [m, c] : terms_)
      if (m != 0) z.terms_.emplace(m, c);
    return z;
  }

  GrassmannElement even_part() const { return parity_filter(Parity::even); }
  GrassmannElement odd_part() const { return parity_filter(Parity::odd); }

  // Defined parity of a homogeneous element; zero counts as even.
  // Mixed generator-count parities report nullopt.
  std::optional<Parity> parity() const {
    Parity p = Parity::even;
    bool first = true;
    for (auto& [m, c] : terms_) {
      const Parity mp = parity_of_popcount(m);
      if (first) {
        p = mp;
        first = false;
      } else if (mp != p) {
        return std::nullopt;
      }
    }
    return p;
  }

  bool is_homogeneous(Parity p) const {
    for (auto& [m, c] : terms_)
      if (parity_of_popcount(m) != p) return false;
    return true;
  }

  bool invertible() const { return std::abs(body()) > kCoeffZeroThreshold; }

  // l1 norm over the canonical monomial coefficients.
  double norm_r() const {
    double s = 0.0;
    for (auto& [m, c] : terms_) s += std::abs(c);
    return s;
  }

  cplx coeff(std::uint64_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? cplx{} : it->second;
  }

  cplx coeff(std::initializer_list<int> gens) const {
    std::uint64_t mask = 0;
    for (int g : gens) mask |= std::uint64_t{1} << (g - 1);
    return coeff(mask);
  }

  GrassmannElement& operator+=(const GrassmannElement& o) {
    require_same_algebra(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  GrassmannElement& operator-=(const GrassmannElement& o) {
    require_same_algebra(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) {
    a += b;
    return a;
  }

  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) {
    a -= b;
    return a;
  }

  friend GrassmannElement operator-(const GrassmannElement& a) {
    GrassmannElement z(a.n_);
    for (auto& [m, c] : a.terms_) z.terms_.emplace(m, normalize_zero(-c));
    return z;
  }

  // Bilinear product; merging monomials carries the sorting sign and a
  // repeated generator annihilates the term.
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    a.require_same_algebra(b);
    GrassmannElement z(a.n_);
    for (auto& [ma, ca] : a.terms_) {
      for (auto& [mb, cb] : b.terms_) {
        if (ma & mb) continue;  // nilpotence
        const double s = merge_sign(ma, mb);
        z.add_term(ma | mb, s * ca * cb);
      }
    }
    return z;
  }

  friend GrassmannElement operator*(const GrassmannElement& a, cplx s) {
    GrassmannElement z(a.n_);
    for (auto& [m, c] : a.terms_) z.add_term(m, c * s);
    return z;
  }

  friend GrassmannElement operator*(cplx s, const GrassmannElement& a) { return a * s; }
  friend GrassmannElement operator*(const GrassmannElement& a, double s) { return a * cplx{s, 0.0}; }
  friend GrassmannElement operator*(double s, const GrassmannElement& a) { return a * cplx{s, 0.0}; }

  bool operator==(const GrassmannElement& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      for (int i = 0; i < n_; ++i)
        if (m & (std::uint64_t{1} << i)) os << "*t" << (i + 1);
    }
    return os.str();
  }

 private:
  static int check_n(int n) {
    if (n < 0 || n > kMaxGenerators) throw format_error("generator count out of range");
    return n;
  }

  void require_same_algebra(const GrassmannElement& o) const {
    if (n_ != o.n_) throw format_error("elements live in different Grassmann algebras");
  }

  GrassmannElement parity_filter(Parity p) const {
    GrassmannElement z(n_);
    for (auto& [m, c] : terms_)
      if (parity_of_popcount(m) == p) z.terms_.emplace(m, c);
    return z;
  }

  // Canonical form: negative zeros are normalized so arithmetic that
  // returns to a value reproduces its bytes on serialization.
  static cplx normalize_zero(cplx c) {
    if (c.real() == 0.0) c = cplx{0.0, c.imag()};
    if (c.imag() == 0.0) c = cplx{c.real(), 0.0};
    return c;
  }

  void add_term(std::uint64_t mask, cplx c) {
    auto [it, inserted] = terms_.try_emplace(mask, normalize_zero(c));
    if (!inserted) it->second = normalize_zero(it->second + c);
    if (std::abs(it->second) < kCoeffZeroThreshold) terms_.erase(it);
  }

  int n_;
  term_map terms_;
};

// Max coefficient distance over the union of stored monomials.
inline double max_coeff_diff(const GrassmannElement& a, const GrassmannElement& b) {
  double worst = 0.0;
  for (auto& [m, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coeff(m)));
  for (auto& [m, c] : b.terms()) worst = std::max(worst, std::abs(c - a.coeff(m)));
  return worst;
}

struct Decomposition {
  cplx body;
  GrassmannElement soul;
  GrassmannElement even;
  GrassmannElement odd;
  bool invertible;
};

inline Decomposition decompose(const GrassmannElement& z) {
  return {z.body(), z.soul(), z.even_part(), z.odd_part(), z.invertible()};
}

// Graded commutator yz - (-1)^{deg y deg z} zy; requires homogeneous input.
inline GrassmannElement supercommutator(const GrassmannElement& y, const GrassmannElement& z) {
  const auto py = y.parity();
  const auto pz = z.parity();
  if (!py || !pz) throw parity_error("supercommutator requires homogeneous arguments");
  const double s = (parity_int(*py) & parity_int(*pz)) != 0 ? -1.0 : 1.0;
  return y * z - (z * y) * s;
}

// Ordinary involution: antilinear antiautomorphism fixing each generator.
// On a length-k monomial the order reversal contributes (-1)^{k(k-1)/2}.
inline GrassmannElement star(const GrassmannElement& z) {
  GrassmannElement::term_map out;
  for (auto& [m, c] : z.terms()) {
    const int k = std::popcount(m);
    const double s = ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0;
    out.emplace(m, s * std::conj(c));
  }
  return GrassmannElement::from_terms(z.generators(), std::move(out));
}

// Grade involution (superstar): antilinear automorphism pairing
// theta_{2k-1} -> theta_{2k}, theta_{2k} -> -theta_{2k-1}, so that
// applying it twice gives (-1)^{deg}. Requires an even generator count.
inline GrassmannElement superstar(const GrassmannElement& z) {
  const int n = z.generators();
  if (n & 1) throw convention_error("superstar requires an even generator count");
  GrassmannElement::term_map out;
  for (auto& [m, c] : z.terms()) {
    // Map each generator, then sort the image, tracking both signs.
    double sign = 1.0;
    std::vector<int> mapped;
    mapped.reserve(std::popcount(m));
    for (int i = 1; i <= n; ++i) {
      if (!(m & (std::uint64_t{1} << (i - 1)))) continue;
      if (i & 1) {
        mapped.push_back(i + 1);
      } else {
        mapped.push_back(i - 1);
        sign = -sign;
      }
    }
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < mapped.size(); ++j) {
      for (std::size_t k = j + 1; k < mapped.size(); ++k)
        if (mapped[j] > mapped[k]) sign = -sign;
      mask |= std::uint64_t{1} << (mapped[j] - 1);
    }
    out.emplace(mask, sign * std::conj(c));
  }
  return GrassmannElement::from_terms(n, std::move(out));
}

// Inverse of an element with nonzero body: body^{-1} sum_k (-soul/body)^k,
// a finite sum because the soul is nilpotent.
inline GrassmannElement inverse(const GrassmannElement& z) {
  if (!z.invertible()) throw noninvertible_error("element has zero body, not invertible");
  const cplx b = z.body();
  const GrassmannElement s = z.soul();
  const int n = z.generators();
  GrassmannElement acc = GrassmannElement::scalar(n, 1.0 / b);
  GrassmannElement power = GrassmannElement::scalar(n, 1.0);
  cplx bk = 1.0;
  for (int k = 1; k <= n; ++k) {
    power = power * s;
    if (power.is_zero()) break;
    bk *= -b;
    acc += power * (1.0 / (b * bk));
  }
  return acc;
}

// exp(body) * sum_k soul^k / k!; the soul series terminates by nilpotence.
inline GrassmannElement exp(const GrassmannElement& z) {
  const int n = z.generators();
  const GrassmannElement s = z.soul();
  GrassmannElement acc = GrassmannElement::scalar(n, 1.0);
  GrassmannElement power = GrassmannElement::scalar(n, 1.0);
  double fact = 1.0;
  for (int k = 1; k <= n; ++k) {
    power = power * s;
    if (power.is_zero()) break;
    fact *= k;
    acc += power * (1.0 / fact);
  }
  return acc * std::exp(z.body());
}

}  // namespace superq
