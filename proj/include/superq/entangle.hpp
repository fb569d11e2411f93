#pragma once

// (Super)qudits, graded tensor products, two-party amplitude tables,
// separability witnesses and the entanglement measures built on them.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superq/error.hpp"
#include "superq/grassmann.hpp"
#include "superq/supermatrix.hpp"
#include "superq/superstate.hpp"

namespace superq {

inline constexpr double kNormalizationTolerance = 1e-9;

struct Qudit {
  int d = 0;
  std::vector<cplx> amps;
};

inline double squared_norm(const std::vector<cplx>& amps) {
  double s = 0.0;
  for (const cplx& a : amps) s += std::norm(a);
  return s;
}

// Validates sum |x_i|^2 = 1; flags unnormalized input instead of silently
// renormalizing.
inline Qudit make_qudit(std::vector<cplx> amps, bool force = false) {
  if (amps.empty()) throw format_error("qudit needs at least one amplitude");
  const double n2 = squared_norm(amps);
  if (!force && std::abs(n2 - 1.0) > kNormalizationTolerance)
    throw not_normalized_error("qudit amplitudes are not normalized");
  return Qudit{static_cast<int>(amps.size()), std::move(amps)};
}

struct SuperQudit {
  SuperKet ket;
  // True when the even normalization identity was verified; odd states have
  // no normalization procedure and stay unchecked.
  bool normalization_checked = false;
};

// Even states must satisfy sum x_i# x_i - sum ae_a# ae_a = 1 as an exact
// Grassmann identity (within tolerance).
inline SuperQudit make_superqudit(SuperKet ket, bool force = false) {
  if (!ket.is_homogeneous()) throw parity_error("superqudit requires a homogeneous state");
  if (ket.parity() == Parity::odd) return SuperQudit{std::move(ket), false};
  const GrassmannElement norm = inner(ket, ket);
  const GrassmannElement unit = GrassmannElement::scalar(ket.generators(), 1.0);
  const double dev = (norm - unit).norm_r();
  if (!force && dev > kNormalizationTolerance)
    throw not_normalized_error("superqudit does not satisfy the normalization identity");
  return SuperQudit{std::move(ket), true};
}

// n-party amplitude tensor over graded basis labels; every amplitude must be
// homogeneous with parity (total + sum of its basis-slot parities).
class MultiState {
 public:
  MultiState(std::vector<SpaceFormat> formats, Parity total, int generator_count,
             std::map<std::vector<int>, GrassmannElement> amps, bool force = false)
      : formats_(std::move(formats)), parity_(total), n_(generator_count),
        amps_(std::move(amps)) {
    if (formats_.empty()) throw format_error("multistate needs at least one party");
    for (const SpaceFormat& f : formats_) check_space(f);
    bool any_nonzero = false;
    bool all_body = true;
    double body_norm2 = 0.0;
    for (auto& [labels, amp] : amps_) {
      if (labels.size() != formats_.size())
        throw format_error("amplitude label arity does not match the party count");
      Parity basis = Parity::even;
      for (std::size_t k = 0; k < labels.size(); ++k) {
        if (labels[k] < 0 || labels[k] >= formats_[k].dim())
          throw format_error("basis label out of range");
        basis = parity_add(basis, formats_[k].slot(labels[k]));
      }
      if (amp.generators() != n_)
        throw format_error("amplitude over a different Grassmann algebra");
      if (!amp.is_homogeneous(parity_add(parity_, basis)))
        throw parity_error("amplitude parity pattern is inconsistent with the state parity");
      if (!amp.is_zero()) any_nonzero = true;
      if (!amp.soul().is_zero()) all_body = false;
      body_norm2 += std::norm(amp.body());
    }
    if (!any_nonzero) throw format_error("the zero vector is not a state");
    if (all_body && !force && std::abs(body_norm2 - 1.0) > kNormalizationTolerance)
      throw not_normalized_error("ordinary amplitudes are not normalized");
  }

  int parties() const { return static_cast<int>(formats_.size()); }
  const std::vector<SpaceFormat>& formats() const { return formats_; }
  Parity parity() const { return parity_; }
  int generators() const { return n_; }
  const std::map<std::vector<int>, GrassmannElement>& amplitudes() const { return amps_; }

  GrassmannElement amplitude(const std::vector<int>& labels) const {
    auto it = amps_.find(labels);
    return it == amps_.end() ? GrassmannElement(n_) : it->second;
  }

 private:
  std::vector<SpaceFormat> formats_;
  Parity parity_;
  int n_;
  std::map<std::vector<int>, GrassmannElement> amps_;
};

inline MultiState make_multistate(std::vector<SpaceFormat> formats, Parity total,
                                  int generator_count,
                                  std::map<std::vector<int>, GrassmannElement> amps,
                                  bool force = false) {
  return MultiState(std::move(formats), total, generator_count, std::move(amps), force);
}

// Graded tensor product of two kets: the amplitude at (i,j) is the ordered
// right-coordinate product a_i b_j; the product parity adds mod 2.
inline MultiState tensor_states(const SuperKet& a, const SuperKet& b) {
  if (a.generators() != b.generators())
    throw format_error("states live in different Grassmann algebras");
  std::map<std::vector<int>, GrassmannElement> amps;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      GrassmannElement y = a.coord(i) * b.coord(j);
      if (!y.is_zero()) amps.emplace(std::vector<int>{i, j}, std::move(y));
    }
  return MultiState({a.format(), b.format()}, parity_add(a.parity(), b.parity()),
                    a.generators(), std::move(amps), /*force=*/true);
}

inline MultiState tensor_states(const Qudit& a, const Qudit& b) {
  std::map<std::vector<int>, GrassmannElement> amps;
  for (int i = 0; i < a.d; ++i)
    for (int j = 0; j < b.d; ++j) {
      const cplx y = a.amps[i] * b.amps[j];
      if (std::abs(y) >= kCoeffZeroThreshold)
        amps.emplace(std::vector<int>{i, j}, GrassmannElement::scalar(0, y));
    }
  return MultiState({SpaceFormat{a.d, 0}, SpaceFormat{b.d, 0}}, Parity::even, 0,
                    std::move(amps), /*force=*/true);
}

enum class TableKind { qubit, super_even, super_odd };

inline const char* table_kind_name(TableKind k) {
  switch (k) {
    case TableKind::qubit: return "qubit";
    case TableKind::super_even: return "super-even";
    case TableKind::super_odd: return "super-odd";
  }
  return "unknown";
}

inline TableKind table_kind_from_name(const std::string& s) {
  if (s == "qubit") return TableKind::qubit;
  if (s == "super-even") return TableKind::super_even;
  if (s == "super-odd") return TableKind::super_odd;
  throw parse_error("unknown table kind: " + s);
}

// Two-party amplitude table: 2x2 body-only for a qubit pair, 3x3 graded for
// a superqubit pair. Slot (j,k) of a super table carries parity
// (state parity + slot parities), so the even table has five even and four
// odd slots and the odd table the reverse.
class TwoPartyTable {
 public:
  TwoPartyTable(TableKind kind, int generator_count, std::vector<GrassmannElement> slots)
      : kind_(kind), n_(generator_count), y_(std::move(slots)) {
    const int d = dims();
    if (static_cast<int>(y_.size()) != d * d) throw format_error("wrong slot count for table kind");
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const GrassmannElement& e = at(j, k);
        if (e.generators() != n_) throw format_error("slot over a different Grassmann algebra");
        if (kind_ == TableKind::qubit) {
          if (!e.soul().is_zero()) throw parity_error("qubit table slots must be body-only");
        } else if (!e.is_homogeneous(slot_parity(j, k))) {
          throw parity_error("table slot parity pattern violated");
        }
      }
  }

  TableKind kind() const { return kind_; }
  int generators() const { return n_; }
  int dims() const { return kind_ == TableKind::qubit ? 2 : 3; }
  Parity parity() const {
    return kind_ == TableKind::super_odd ? Parity::odd : Parity::even;
  }

  Parity slot_parity(int j, int k) const {
    const Parity basis = parity_add(j == 2 ? Parity::odd : Parity::even,
                                    k == 2 ? Parity::odd : Parity::even);
    return parity_add(parity(), basis);
  }

  const GrassmannElement& at(int j, int k) const { return y_[static_cast<std::size_t>(j) * dims() + k]; }

 private:
  TableKind kind_;
  int n_;
  std::vector<GrassmannElement> y_;
};

inline TwoPartyTable tensor_table(const SuperKet& a, const SuperKet& b) {
  if (a.format() != SpaceFormat{2, 1} || b.format() != SpaceFormat{2, 1})
    throw format_error("superqubit tables need two (2|1) states");
  if (a.generators() != b.generators())
    throw format_error("states live in different Grassmann algebras");
  if (!a.is_homogeneous() || !b.is_homogeneous())
    throw parity_error("tensor table requires homogeneous states");
  std::vector<GrassmannElement> slots;
  slots.reserve(9);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) slots.push_back(a.coord(j) * b.coord(k));
  const TableKind kind = parity_add(a.parity(), b.parity()) == Parity::even
                             ? TableKind::super_even
                             : TableKind::super_odd;
  return TwoPartyTable(kind, a.generators(), std::move(slots));
}

inline TwoPartyTable tensor_table(const Qudit& a, const Qudit& b) {
  if (a.d != 2 || b.d != 2) throw format_error("qubit tables need two 2-dimensional states");
  std::vector<GrassmannElement> slots;
  slots.reserve(4);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      slots.push_back(GrassmannElement::scalar(0, a.amps[j] * b.amps[k]));
  return TwoPartyTable(TableKind::qubit, 0, std::move(slots));
}

// Separability witness. Qubit tables: f = det x_{jk}. Super tables:
//   even: f = det_{2x2}( x_{ij} x_{22} - ae_{i2} ae_{2j} )
//   odd:  f = det_{2x2}( ae_{ij} ae_{22} - x_{i2} x_{2j} )
// Both vanish exactly on every factorized table.
inline GrassmannElement witness_f(const TwoPartyTable& t) {
  if (t.kind() == TableKind::qubit)
    return t.at(0, 0) * t.at(1, 1) - t.at(0, 1) * t.at(1, 0);
  std::vector<GrassmannElement> m;
  m.reserve(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.push_back(t.at(i, j) * t.at(2, 2) - t.at(i, 2) * t.at(2, j));
  return det_even(m, 2);
}

// 2x2 body corner of a super-even table (the ordinary-limit amplitudes).
inline std::array<cplx, 4> body_table(const TwoPartyTable& t) {
  if (t.kind() == TableKind::super_odd)
    throw parity_error("body table is defined for even tables only");
  return {t.at(0, 0).body(), t.at(0, 1).body(), t.at(1, 0).body(), t.at(1, 1).body()};
}

struct SeparabilityReport {
  bool separable;
  double witness_norm;
  // The super verdict is witness-based: necessary conditions only.
  bool necessary_conditions_only;
};

inline SeparabilityReport is_separable(const TwoPartyTable& t, double tol) {
  const double w = witness_f(t).norm_r();
  if (t.kind() == TableKind::qubit) return {w <= tol, w, false};
  if (t.kind() == TableKind::super_even) {
    const auto b = body_table(t);
    const double minor = std::abs(b[0] * b[3] - b[1] * b[2]);
    return {w <= tol && minor <= tol, std::max(w, minor), true};
  }
  return {w <= tol, w, true};
}

namespace detail {

inline void require_normalized_qubit_table(const TwoPartyTable& t, bool force) {
  double n2 = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) n2 += std::norm(t.at(j, k).body());
  if (!force && std::abs(n2 - 1.0) > kNormalizationTolerance)
    throw not_normalized_error("two-qubit table is not normalized");
}

}  // namespace detail

// C_2 = 2 |det x_{jk}| for a normalized two-qubit table.
inline double concurrence(const TwoPartyTable& t, bool force = false) {
  if (t.kind() != TableKind::qubit) throw parity_error("concurrence expects an ordinary qubit table");
  detail::require_normalized_qubit_table(t, force);
  return 2.0 * witness_f(t).norm_r();
}

// 2 || f ||_R for a super table of the stated parity.
inline double superconcurrence(const TwoPartyTable& t, Parity parity) {
  if (t.kind() == TableKind::qubit)
    throw parity_error("superconcurrence expects a super table");
  if (t.parity() != parity) throw parity_error("table parity does not match the requested measure");
  return 2.0 * witness_f(t).norm_r();
}

// tau = 4 f conj(f) = C^2 for ordinary tables.
inline double tangle(const TwoPartyTable& t, bool force = false) {
  if (t.kind() != TableKind::qubit) throw parity_error("tangle expects an ordinary qubit table");
  detail::require_normalized_qubit_table(t, force);
  const double f = witness_f(t).norm_r();
  return 4.0 * f * f;
}

struct SupertangleReport {
  bool solved;                 // false: implicit relation only
  GrassmannElement value;      // tau when solved, zero otherwise
  GrassmannElement lhs_factor; // x22 x22# (even) or ae22 ae22# (odd)
  GrassmannElement rhs;        // 4 f f#
};

// Even tables: solve tau * x22 x22# = 4 f f# by Grassmann division when the
// factor has a nonzero body. Odd tables: the factor ae22 ae22# is body-free,
// never invertible; both sides of the relation are reported instead.
inline SupertangleReport supertangle(const TwoPartyTable& t, Parity parity) {
  if (t.kind() == TableKind::qubit) throw parity_error("supertangle expects a super table");
  if (t.parity() != parity) throw parity_error("table parity does not match the requested measure");
  const GrassmannElement f = witness_f(t);
  const GrassmannElement rhs = f * superstar(f) * 4.0;
  const GrassmannElement corner = t.at(2, 2);
  const GrassmannElement factor = corner * superstar(corner);
  if (t.kind() == TableKind::super_odd)
    return {false, GrassmannElement(t.generators()), factor, rhs};
  if (!factor.invertible())
    throw noninvertible_error(
        "even supertangle undefined: x22 x22# has zero body (relation sides: lhs factor " +
        factor.str() + ", rhs " + rhs.str() + ")");
  return {true, rhs * inverse(factor), factor, rhs};
}

struct CrossQutrit {
  Qudit state;     // unnormalized
  double norm_sq;  // attached squared norm
};

// Component i = sum_{jk} eps_{ijk} x_j x'_k; the Lagrange identity ties the
// squared norm to ||a||^2 ||b||^2 - |<a|b>|^2.
inline CrossQutrit cross_qutrit(const Qudit& a, const Qudit& b) {
  if (a.d != 3 || b.d != 3) throw format_error("cross product needs two qutrits");
  std::vector<cplx> amps(3);
  amps[0] = a.amps[1] * b.amps[2] - a.amps[2] * b.amps[1];
  amps[1] = a.amps[2] * b.amps[0] - a.amps[0] * b.amps[2];
  amps[2] = a.amps[0] * b.amps[1] - a.amps[1] * b.amps[0];
  const double n2 = squared_norm(amps);
  return {Qudit{3, std::move(amps)}, n2};
}

// Grassmannless limit of an even multi-party state: bodies of the
// even-basis amplitudes; slots with an odd basis label drop. The result may
// be the zero table (pure-soul input), so it is returned as a plain
// amplitude map rather than a MultiState.
inline std::map<std::vector<int>, cplx> body_state(const MultiState& s) {
  if (s.parity() != Parity::even)
    throw parity_error("body map is defined for parity-0 states only");
  std::map<std::vector<int>, cplx> amps;
  for (auto& [labels, amp] : s.amplitudes()) {
    bool even_basis = true;
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (s.formats()[k].slot(labels[k]) == Parity::odd) {
        even_basis = false;
        break;
      }
    if (!even_basis) continue;
    const cplx bdy = amp.body();
    if (std::abs(bdy) >= kCoeffZeroThreshold) amps.emplace(labels, bdy);
  }
  return amps;
}

struct MeasureReport {
  std::string measure;
  double value = 0.0;
  std::string calibration;  // pinned sdTr arrangement when relevant
  std::string status = "ok";
};

}  // namespace superq
