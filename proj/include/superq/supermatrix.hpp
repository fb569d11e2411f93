#pragma once

// Parity-aware (p|q) block matrices over a Grassmann algebra: products,
// supertranspose, supertrace, Berezinian, sdTr, exponential, superadjoint
// and group membership predicates.
//
// The total parity of a matrix is a stored label. Scalar multiplication is
// the Lambda-module action and keeps the label, which is exactly what makes
// (a*M)^sT == a*(M^sT) hold for odd scalars too.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "superq/error.hpp"
#include "superq/grassmann.hpp"

namespace superq {

struct SuperFormat {
  int p = 0;
  int q = 0;

  int dim() const { return p + q; }
  // Slot parity: the first p basis slots are even, the rest odd.
  Parity slot(int i) const { return i < p ? Parity::even : Parity::odd; }
  bool operator==(const SuperFormat&) const = default;
};

inline void check_format(SuperFormat f) {
  if (f.p < 0 || f.q < 0 || f.p + f.q < 1) throw format_error("invalid (p|q) format");
}

class SuperMatrix {
 public:
  SuperMatrix(SuperFormat fmt, Parity parity, int generator_count)
      : fmt_(fmt),
        parity_(parity),
        n_(generator_count),
        e_(static_cast<std::size_t>(fmt.dim()) * fmt.dim(), GrassmannElement(generator_count)) {
    check_format(fmt);
  }

  static SuperMatrix identity(SuperFormat fmt, int n) {
    SuperMatrix m(fmt, Parity::even, n);
    for (int i = 0; i < fmt.dim(); ++i) m.at(i, i) = GrassmannElement::scalar(n, 1.0);
    return m;
  }

  SuperFormat format() const { return fmt_; }
  Parity parity() const { return parity_; }
  int generators() const { return n_; }
  int dim() const { return fmt_.dim(); }

  GrassmannElement& at(int i, int j) { return e_[static_cast<std::size_t>(i) * dim() + j]; }
  const GrassmannElement& at(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * dim() + j];
  }

  // Expected Grassmann parity of entry (i,j) for a block-consistent matrix.
  Parity entry_parity(int i, int j) const {
    return parity_add(parity_, parity_add(fmt_.slot(i), fmt_.slot(j)));
  }

  SuperMatrix with_parity(Parity p) const {
    SuperMatrix m = *this;
    m.parity_ = p;
    return m;
  }

  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    a.require_same_shape(b);
    SuperMatrix z = a;
    for (std::size_t k = 0; k < z.e_.size(); ++k) z.e_[k] += b.e_[k];
    return z;
  }

  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    a.require_same_shape(b);
    SuperMatrix z = a;
    for (std::size_t k = 0; k < z.e_.size(); ++k) z.e_[k] -= b.e_[k];
    return z;
  }

  // Row-column product; the result parity is the mod-2 sum of the labels.
  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.fmt_ != b.fmt_) throw format_error("supermatrix formats differ");
    if (a.n_ != b.n_) throw format_error("supermatrices live in different Grassmann algebras");
    SuperMatrix z(a.fmt_, parity_add(a.parity_, b.parity_), a.n_);
    const int d = a.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        GrassmannElement acc(a.n_);
        for (int k = 0; k < d; ++k) acc += a.at(i, k) * b.at(k, j);
        z.at(i, j) = acc;
      }
    return z;
  }

  // Lambda-module action: entrywise product, parity label unchanged.
  friend SuperMatrix operator*(const GrassmannElement& s, const SuperMatrix& m) {
    SuperMatrix z = m;
    for (auto& e : z.e_) e = s * e;
    return z;
  }

  friend SuperMatrix operator*(const SuperMatrix& m, cplx s) {
    SuperMatrix z = m;
    for (auto& e : z.e_) e = e * s;
    return z;
  }

  friend SuperMatrix operator*(cplx s, const SuperMatrix& m) { return m * s; }

  bool operator==(const SuperMatrix&) const = default;

 private:
  void require_same_shape(const SuperMatrix& o) const {
    if (fmt_ != o.fmt_) throw format_error("supermatrix formats differ");
    if (n_ != o.n_) throw format_error("supermatrices live in different Grassmann algebras");
    if (parity_ != o.parity_) throw parity_error("supermatrix parities differ");
  }

  SuperFormat fmt_;
  Parity parity_;
  int n_;
  std::vector<GrassmannElement> e_;
};

// Max over entries of the l1 coefficient norm.
inline double matrix_norm(const SuperMatrix& m) {
  double worst = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) worst = std::max(worst, m.at(i, j).norm_r());
  return worst;
}

inline double max_coeff_diff(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.format() != b.format()) throw format_error("supermatrix formats differ");
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      worst = std::max(worst, max_coeff_diff(a.at(i, j), b.at(i, j)));
  return worst;
}

struct BlockViolation {
  int row;
  int col;
  Parity expected;
};

// Diagnostic check of block-parity consistency: entry (i,j) of a matrix with
// total parity d must be homogeneous of parity d + slot(i) + slot(j).
inline std::vector<BlockViolation> validate(const SuperMatrix& m) {
  std::vector<BlockViolation> out;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      const Parity want = m.entry_parity(i, j);
      if (!m.at(i, j).is_homogeneous(want)) out.push_back({i, j, want});
    }
  return out;
}

struct MatrixSplit {
  SuperMatrix body;       // unit-monomial coefficients in the parity-allowed blocks
  SuperMatrix soul;       // m - body
  SuperMatrix even_part;  // diagonal-block mask
  SuperMatrix odd_part;   // off-diagonal-block mask
};

inline MatrixSplit split(const SuperMatrix& m) {
  const int d = m.dim();
  SuperMatrix body(m.format(), m.parity(), m.generators());
  SuperMatrix even(m.format(), m.parity(), m.generators());
  SuperMatrix odd(m.format(), m.parity(), m.generators());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const bool diagonal_block = m.format().slot(i) == m.format().slot(j);
      // The body of a parity-0 matrix sits in the diagonal blocks, of a
      // parity-1 matrix in the off-diagonal ones.
      const bool body_block = (m.parity() == Parity::even) ? diagonal_block : !diagonal_block;
      if (body_block) {
        const cplx b = m.at(i, j).body();
        if (std::abs(b) >= kCoeffZeroThreshold)
          body.at(i, j) = GrassmannElement::scalar(m.generators(), b);
      }
      if (diagonal_block)
        even.at(i, j) = m.at(i, j);
      else
        odd.at(i, j) = m.at(i, j);
    }
  return {body, m - body, even, odd};
}

namespace detail {

// The supertranspose branch selected by `branch`: the off-diagonal block that
// picks up the minus sign swaps between the two branches.
inline SuperMatrix supertranspose_branch(const SuperMatrix& m, Parity branch) {
  SuperMatrix z(m.format(), m.parity(), m.generators());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      const Parity bi = m.format().slot(i);
      const Parity bj = m.format().slot(j);
      double s = 1.0;
      if (branch == Parity::even) {
        if (bi == Parity::odd && bj == Parity::even) s = -1.0;
      } else {
        if (bi == Parity::even && bj == Parity::odd) s = -1.0;
      }
      z.at(i, j) = m.at(j, i) * s;
    }
  return z;
}

}  // namespace detail

// Parity-dependent transpose of order four:
//   parity 0: [[A,B],[C,D]] -> [[A^T, C^T], [-B^T, D^T]]
//   parity 1: [[A,B],[C,D]] -> [[A^T, -C^T], [B^T, D^T]]
inline SuperMatrix supertranspose(const SuperMatrix& m) {
  return detail::supertranspose_branch(m, m.parity());
}

// The inverse of the supertranspose (its third power).
inline SuperMatrix supertranspose_inverse(const SuperMatrix& m) {
  return detail::supertranspose_branch(m, parity_add(m.parity(), Parity::odd));
}

// tr A - tr D for parity 0, tr A + tr D for parity 1.
inline GrassmannElement supertrace(const SuperMatrix& m) {
  GrassmannElement acc(m.generators());
  const double d_sign = (m.parity() == Parity::even) ? -1.0 : 1.0;
  for (int i = 0; i < m.dim(); ++i) {
    if (m.format().slot(i) == Parity::even)
      acc += m.at(i, i);
    else
      acc += m.at(i, i) * d_sign;
  }
  return acc;
}

inline constexpr int kDetSizeCap = 6;

// Leibniz determinant over the commutative even subalgebra. `a` is a
// row-major size*size array; every entry must be even.
inline GrassmannElement det_even(const std::vector<GrassmannElement>& a, int size) {
  if (size < 1 || static_cast<std::size_t>(size) * size != a.size())
    throw format_error("det_even needs a square array");
  if (size > kDetSizeCap) throw format_error("det_even size cap exceeded");
  int n = a.front().generators();
  for (const auto& e : a) {
    if (e.generators() != n) throw format_error("det_even entries over different algebras");
    if (!e.is_homogeneous(Parity::even)) throw parity_error("det_even requires even entries");
  }
  std::vector<int> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  GrassmannElement acc(n);
  do {
    int inversions = 0;
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        if (perm[i] > perm[j]) ++inversions;
    GrassmannElement prod = GrassmannElement::scalar(n, (inversions & 1) ? -1.0 : 1.0);
    for (int i = 0; i < size; ++i) prod = prod * a[static_cast<std::size_t>(i) * size + perm[i]];
    acc += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

namespace detail {

// Complex Gauss-Jordan inverse with partial pivoting.
inline std::vector<cplx> complex_inverse(std::vector<cplx> a, int d) {
  std::vector<cplx> inv(static_cast<std::size_t>(d) * d, cplx{});
  for (int i = 0; i < d; ++i) inv[static_cast<std::size_t>(i) * d + i] = 1.0;
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col) * d + col]);
    for (int r = col + 1; r < d; ++r) {
      const double v = std::abs(a[static_cast<std::size_t>(r) * d + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < 1e-12) throw noninvertible_error("matrix body is numerically singular");
    if (pivot != col)
      for (int c = 0; c < d; ++c) {
        std::swap(a[static_cast<std::size_t>(pivot) * d + c], a[static_cast<std::size_t>(col) * d + c]);
        std::swap(inv[static_cast<std::size_t>(pivot) * d + c], inv[static_cast<std::size_t>(col) * d + c]);
      }
    const cplx piv = a[static_cast<std::size_t>(col) * d + col];
    for (int c = 0; c < d; ++c) {
      a[static_cast<std::size_t>(col) * d + c] /= piv;
      inv[static_cast<std::size_t>(col) * d + c] /= piv;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      const cplx f = a[static_cast<std::size_t>(r) * d + col];
      if (f == cplx{}) continue;
      for (int c = 0; c < d; ++c) {
        a[static_cast<std::size_t>(r) * d + c] -= f * a[static_cast<std::size_t>(col) * d + c];
        inv[static_cast<std::size_t>(r) * d + c] -= f * inv[static_cast<std::size_t>(col) * d + c];
      }
    }
  }
  return inv;
}

}  // namespace detail

// Inverse of a parity-0 supermatrix with numerically invertible body:
// body inverse followed by the terminating Neumann series
// M^{-1} = sum_k (-B^{-1} S)^k B^{-1} with M = B + S.
inline SuperMatrix inverse(const SuperMatrix& m) {
  if (m.parity() != Parity::even) throw parity_error("inverse requires a parity-0 supermatrix");
  const int d = m.dim();
  const int n = m.generators();
  std::vector<cplx> body(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) body[static_cast<std::size_t>(i) * d + j] = m.at(i, j).body();
  const std::vector<cplx> body_inv = detail::complex_inverse(std::move(body), d);

  SuperMatrix binv(m.format(), Parity::even, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cplx c = body_inv[static_cast<std::size_t>(i) * d + j];
      if (std::abs(c) >= kCoeffZeroThreshold) binv.at(i, j) = GrassmannElement::scalar(n, c);
    }

  SuperMatrix body_part(m.format(), Parity::even, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cplx c = m.at(i, j).body();
      if (std::abs(c) >= kCoeffZeroThreshold) body_part.at(i, j) = GrassmannElement::scalar(n, c);
    }
  const SuperMatrix soul = m - body_part;

  const SuperMatrix step = binv * soul;  // nilpotent
  SuperMatrix acc = binv;
  SuperMatrix power = SuperMatrix::identity(m.format(), n);
  for (int k = 1; k <= n; ++k) {
    power = power * step;
    bool zero = true;
    for (int i = 0; i < d && zero; ++i)
      for (int j = 0; j < d; ++j)
        if (!power.at(i, j).is_zero()) {
          zero = false;
          break;
        }
    if (zero) break;
    acc = acc + ((k & 1) ? (power * binv) * cplx{-1.0, 0.0} : power * binv);
  }
  return acc;
}

// Standard superdeterminant det(A - B D^{-1} C) (det D)^{-1} of a parity-0
// matrix; not defined when the D block's body is singular.
inline GrassmannElement berezinian(const SuperMatrix& m) {
  if (m.parity() != Parity::even) throw parity_error("berezinian requires a parity-0 supermatrix");
  const SuperFormat f = m.format();
  const int n = m.generators();
  if (f.q == 0) {
    std::vector<GrassmannElement> a;
    a.reserve(static_cast<std::size_t>(f.p) * f.p);
    for (int i = 0; i < f.p; ++i)
      for (int j = 0; j < f.p; ++j) a.push_back(m.at(i, j));
    return det_even(a, f.p);
  }

  SuperMatrix dblock(SuperFormat{f.q, 0}, Parity::even, n);
  for (int i = 0; i < f.q; ++i)
    for (int j = 0; j < f.q; ++j) dblock.at(i, j) = m.at(f.p + i, f.p + j);
  SuperMatrix dinv(SuperFormat{f.q, 0}, Parity::even, n);
  try {
    dinv = inverse(dblock);
  } catch (const noninvertible_error&) {
    throw noninvertible_error("berezinian is not defined: D block body is singular");
  }

  // Schur complement A - B D^{-1} C, entrywise over the even subalgebra.
  std::vector<GrassmannElement> schur;
  schur.reserve(static_cast<std::size_t>(f.p) * f.p);
  for (int i = 0; i < f.p; ++i)
    for (int j = 0; j < f.p; ++j) {
      GrassmannElement acc = m.at(i, j);
      for (int k = 0; k < f.q; ++k)
        for (int l = 0; l < f.q; ++l)
          acc -= m.at(i, f.p + k) * dinv.at(k, l) * m.at(f.p + l, j);
      schur.push_back(acc);
    }
  const GrassmannElement num = f.p > 0 ? det_even(schur, f.p) : GrassmannElement::scalar(n, 1.0);

  std::vector<GrassmannElement> dents;
  dents.reserve(static_cast<std::size_t>(f.q) * f.q);
  for (int i = 0; i < f.q; ++i)
    for (int j = 0; j < f.q; ++j) dents.push_back(dblock.at(i, j));
  const GrassmannElement den = det_even(dents, f.q);
  if (!den.invertible())
    throw noninvertible_error("berezinian is not defined: det D has zero body");
  return num * inverse(den);
}

inline constexpr double kExpTermTolerance = 1e-13;
inline constexpr int kExpTermCap = 64;

// sum_k M^k / k! with term-norm stopping for the body and nilpotence
// terminating the soul contributions.
inline SuperMatrix exp(const SuperMatrix& m) {
  if (m.parity() != Parity::even) throw parity_error("exp requires a parity-0 supermatrix");
  SuperMatrix acc = SuperMatrix::identity(m.format(), m.generators());
  SuperMatrix term = acc;
  double prev_norm = 1.0;
  for (int k = 1; k <= kExpTermCap; ++k) {
    term = (term * m) * cplx{1.0 / k, 0.0};
    const double tn = matrix_norm(term);
    if (tn <= kExpTermTolerance) return acc + term;
    acc = acc + term;
    if (k == kExpTermCap && tn > prev_norm)
      throw numeric_error("exp series did not converge within the term cap");
    prev_norm = tn;
  }
  return acc;
}

// Superadjoint: entrywise grade involution followed by the inverse
// supertranspose. With this composition the defining adjoint identity
// <T phi || psi> = (-1)^{pi_phi pi_T} <phi || T^+ psi> holds entrywise,
// and (M^+)^+ = (-1)^{deg M} M.
inline SuperMatrix superadjoint(const SuperMatrix& m) {
  SuperMatrix z(m.format(), m.parity(), m.generators());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) z.at(i, j) = superstar(m.at(i, j));
  return supertranspose_inverse(z);
}

// 2x2 antisymmetric unit form, stored as a (2|0) parity-0 matrix.
inline SuperMatrix e_sl(int n) {
  SuperMatrix e(SuperFormat{2, 0}, Parity::even, n);
  e.at(0, 1) = GrassmannElement::scalar(n, 1.0);
  e.at(1, 0) = GrassmannElement::scalar(n, -1.0);
  return e;
}

// (2|1) orthosymplectic invariant tensor: antisymmetric unit form on the
// even block, unit odd-odd block.
inline SuperMatrix e_osp(int n) {
  SuperMatrix e(SuperFormat{2, 1}, Parity::even, n);
  e.at(0, 1) = GrassmannElement::scalar(n, 1.0);
  e.at(1, 0) = GrassmannElement::scalar(n, -1.0);
  e.at(2, 2) = GrassmannElement::scalar(n, 1.0);
  return e;
}

enum class SdtrArrangement {
  half_str_MEsT_ME,        // +1/2 str((M E)^sT (M E))
  neg_half_str_MEsT_ME,    // -1/2 str((M E)^sT (M E))
  half_str_EMsT_EM,        // +1/2 str((E M^sT)(E M))
  neg_half_str_EMsT_EM,    // -1/2 str((E M^sT)(E M))
  half_str_E_MsT_E_M,      // +1/2 str(E M^sT E M)
  neg_half_str_E_MsT_E_M,  // -1/2 str(E M^sT E M)
};

inline constexpr SdtrArrangement kDefaultSdtrArrangement = SdtrArrangement::neg_half_str_EMsT_EM;

inline const char* sdtr_arrangement_name(SdtrArrangement a) {
  switch (a) {
    case SdtrArrangement::half_str_MEsT_ME: return "half_str_MEsT_ME";
    case SdtrArrangement::neg_half_str_MEsT_ME: return "neg_half_str_MEsT_ME";
    case SdtrArrangement::half_str_EMsT_EM: return "half_str_EMsT_EM";
    case SdtrArrangement::neg_half_str_EMsT_EM: return "neg_half_str_EMsT_EM";
    case SdtrArrangement::half_str_E_MsT_E_M: return "half_str_E_MsT_E_M";
    case SdtrArrangement::neg_half_str_E_MsT_E_M: return "neg_half_str_E_MsT_E_M";
  }
  return "unknown";
}

inline SdtrArrangement sdtr_arrangement_from_name(const std::string& name) {
  for (SdtrArrangement a :
       {SdtrArrangement::half_str_MEsT_ME, SdtrArrangement::neg_half_str_MEsT_ME,
        SdtrArrangement::half_str_EMsT_EM, SdtrArrangement::neg_half_str_EMsT_EM,
        SdtrArrangement::half_str_E_MsT_E_M, SdtrArrangement::neg_half_str_E_MsT_E_M})
    if (name == sdtr_arrangement_name(a)) return a;
  throw calibration_error("uncalibrated sdTr arrangement id: " + name);
}

inline const std::vector<SdtrArrangement>& sdtr_candidates() {
  static const std::vector<SdtrArrangement> all = {
      SdtrArrangement::half_str_MEsT_ME,   SdtrArrangement::neg_half_str_MEsT_ME,
      SdtrArrangement::half_str_EMsT_EM,   SdtrArrangement::neg_half_str_EMsT_EM,
      SdtrArrangement::half_str_E_MsT_E_M, SdtrArrangement::neg_half_str_E_MsT_E_M};
  return all;
}

// Determinant-like functional on (2|1) parity-0 matrices that needs no D
// inverse. The arrangement is a calibration choice; the shipped default is
// the one whose body limit on embedded 2x2 matrices is the ordinary
// determinant and which vanishes on outer-product matrices.
inline GrassmannElement sdtr(const SuperMatrix& m,
                             SdtrArrangement a = kDefaultSdtrArrangement) {
  if (m.format() != SuperFormat{2, 1}) throw format_error("sdtr requires a (2|1) supermatrix");
  if (m.parity() != Parity::even) throw parity_error("sdtr requires a parity-0 supermatrix");
  const SuperMatrix e = e_osp(m.generators());
  GrassmannElement value(m.generators());
  switch (a) {
    case SdtrArrangement::half_str_MEsT_ME:
    case SdtrArrangement::neg_half_str_MEsT_ME: {
      const SuperMatrix p = m * e;
      value = supertrace(supertranspose(p) * p);
      break;
    }
    case SdtrArrangement::half_str_EMsT_EM:
    case SdtrArrangement::neg_half_str_EMsT_EM: {
      value = supertrace((e * supertranspose(m)) * (e * m));
      break;
    }
    case SdtrArrangement::half_str_E_MsT_E_M:
    case SdtrArrangement::neg_half_str_E_MsT_E_M: {
      value = supertrace(e * (supertranspose(m) * (e * m)));
      break;
    }
  }
  const bool negated = a == SdtrArrangement::neg_half_str_MEsT_ME ||
                       a == SdtrArrangement::neg_half_str_EMsT_EM ||
                       a == SdtrArrangement::neg_half_str_E_MsT_E_M;
  return value * (negated ? -0.5 : 0.5);
}

enum class MatrixGroup { sl2, su2, osp21, uosp21 };

inline const char* group_name(MatrixGroup g) {
  switch (g) {
    case MatrixGroup::sl2: return "SL2";
    case MatrixGroup::su2: return "SU2";
    case MatrixGroup::osp21: return "OSP21";
    case MatrixGroup::uosp21: return "UOSP21";
  }
  return "unknown";
}

inline MatrixGroup group_from_name(const std::string& s) {
  if (s == "SL2") return MatrixGroup::sl2;
  if (s == "SU2") return MatrixGroup::su2;
  if (s == "OSP21") return MatrixGroup::osp21;
  if (s == "UOSP21") return MatrixGroup::uosp21;
  throw parse_error("unknown group: " + s);
}

struct GroupCheck {
  bool member;
  double residual;
};

namespace detail {

inline void require_body_only_2x2(const SuperMatrix& m, double tol) {
  if (m.dim() != 2) throw format_error("SL2/SU2 checks require a 2x2 matrix");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (m.at(i, j).soul().norm_r() > tol)
        throw format_error("SL2/SU2 checks require body-only entries");
}

}  // namespace detail

// Membership predicates for the classical and super (S)LOCC groups.
//   SL2:    |det - 1| <= tol on a body-only 2x2 matrix
//   SU2:    SL2 and || M^H M - I || <= tol
//   OSP21:  || M^sT E M - E || <= tol on a (2|1) parity-0 matrix
//   UOSP21: OSP21 and || M^+ M - I || <= tol
inline GroupCheck group_check(const SuperMatrix& m, MatrixGroup g, double tol) {
  switch (g) {
    case MatrixGroup::sl2:
    case MatrixGroup::su2: {
      detail::require_body_only_2x2(m, tol);
      const cplx a = m.at(0, 0).body(), b = m.at(0, 1).body();
      const cplx c = m.at(1, 0).body(), d = m.at(1, 1).body();
      const double det_res = std::abs(a * d - b * c - cplx{1.0, 0.0});
      if (g == MatrixGroup::sl2) return {det_res <= tol, det_res};
      // unitarity residual, max entry of M^H M - I
      double uni = 0.0;
      const cplx mh[2][2] = {{std::conj(a), std::conj(c)}, {std::conj(b), std::conj(d)}};
      const cplx mm[2][2] = {{a, b}, {c, d}};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          cplx acc{};
          for (int k = 0; k < 2; ++k) acc += mh[i][k] * mm[k][j];
          if (i == j) acc -= 1.0;
          uni = std::max(uni, std::abs(acc));
        }
      const double res = std::max(det_res, uni);
      return {res <= tol, res};
    }
    case MatrixGroup::osp21:
    case MatrixGroup::uosp21: {
      if (m.format() != SuperFormat{2, 1})
        throw format_error("OSP21/UOSP21 checks require a (2|1) supermatrix");
      if (m.parity() != Parity::even)
        throw parity_error("OSP21/UOSP21 checks require a parity-0 supermatrix");
      const SuperMatrix e = e_osp(m.generators());
      const double osp_res = matrix_norm(supertranspose(m) * e * m - e);
      if (g == MatrixGroup::osp21) return {osp_res <= tol, osp_res};
      const double uni_res =
          matrix_norm(superadjoint(m) * m - SuperMatrix::identity(m.format(), m.generators()));
      const double res = std::max(osp_res, uni_res);
      return {res <= tol, res};
    }
  }
  throw format_error("unknown group");
}

}  // namespace superq
