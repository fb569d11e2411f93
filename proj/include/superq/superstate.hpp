#pragma once

// Graded kets and bras over an (r|s) super Hilbert space. Kets carry right
// coordinates (the basis vector multiplies the coordinate from the left);
// bras carry left coordinates and are produced only by dualizing. All the
// dagger sign bookkeeping lives in the dual maps, so the component formulas
// for inner products, density matrices and adjoints come out of one place.

#include <complex>
#include <vector>

#include "superq/error.hpp"
#include "superq/grassmann.hpp"
#include "superq/supermatrix.hpp"

namespace superq {

struct SpaceFormat {
  int r = 0;  // even basis slots
  int s = 0;  // odd basis slots

  int dim() const { return r + s; }
  Parity slot(int i) const { return i < r ? Parity::even : Parity::odd; }
  bool operator==(const SpaceFormat&) const = default;
};

inline void check_space(SpaceFormat f) {
  if (f.r < 1 || f.s < 0) throw format_error("invalid (r|s) space format");
}

class SuperKet {
 public:
  SuperKet(SpaceFormat fmt, Parity parity, int generator_count)
      : fmt_(fmt), parity_(parity), n_(generator_count),
        c_(fmt.dim(), GrassmannElement(generator_count)) {
    check_space(fmt);
  }

  SuperKet(SpaceFormat fmt, Parity parity, int generator_count,
           std::vector<GrassmannElement> coords)
      : fmt_(fmt), parity_(parity), n_(generator_count), c_(std::move(coords)) {
    check_space(fmt);
    if (static_cast<int>(c_.size()) != fmt.dim())
      throw format_error("coordinate count does not match the space format");
    for (const auto& z : c_)
      if (z.generators() != n_) throw format_error("coordinates over different Grassmann algebras");
  }

  SpaceFormat format() const { return fmt_; }
  Parity parity() const { return parity_; }
  int generators() const { return n_; }
  int dim() const { return fmt_.dim(); }

  const GrassmannElement& coord(int i) const { return c_[i]; }
  GrassmannElement& coord(int i) { return c_[i]; }

  // A declared-parity ket is homogeneous when coordinate i is homogeneous
  // of parity (declared + slot(i)).
  bool is_homogeneous() const {
    for (int i = 0; i < dim(); ++i)
      if (!c_[i].is_homogeneous(parity_add(parity_, fmt_.slot(i)))) return false;
    return true;
  }

  bool operator==(const SuperKet&) const = default;

 private:
  SpaceFormat fmt_;
  Parity parity_;
  int n_;
  std::vector<GrassmannElement> c_;
};

class SuperBra {
 public:
  SpaceFormat format() const { return fmt_; }
  Parity parity() const { return parity_; }
  int generators() const { return n_; }
  int dim() const { return fmt_.dim(); }
  const GrassmannElement& coord(int i) const { return c_[i]; }

  bool operator==(const SuperBra&) const = default;

 private:
  SuperBra(SpaceFormat fmt, Parity parity, int n, std::vector<GrassmannElement> coords)
      : fmt_(fmt), parity_(parity), n_(n), c_(std::move(coords)) {}

  friend SuperBra dual(const SuperKet&);
  friend SuperBra scale_left(const SuperBra&, const GrassmannElement&);

  SpaceFormat fmt_;
  Parity parity_;
  int n_;
  std::vector<GrassmannElement> c_;
};

// (|e_i> z)^+ = (-1)^{slot(i) deg z} z# <e_i|, extended additively over the
// parity components of each coordinate.
inline SuperBra dual(const SuperKet& k) {
  std::vector<GrassmannElement> w;
  w.reserve(k.dim());
  for (int i = 0; i < k.dim(); ++i) {
    const GrassmannElement even = superstar(k.coord(i).even_part());
    const GrassmannElement odd = superstar(k.coord(i).odd_part());
    w.push_back(k.format().slot(i) == Parity::odd ? even - odd : even + odd);
  }
  return SuperBra(k.format(), k.parity(), k.generators(), std::move(w));
}

// (z <e_i|)^+ = (-1)^{slot(i)(deg z + 1)} |e_i> z#, likewise per component.
inline SuperKet dual(const SuperBra& b) {
  std::vector<GrassmannElement> z;
  z.reserve(b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    const GrassmannElement even = superstar(b.coord(i).even_part());
    const GrassmannElement odd = superstar(b.coord(i).odd_part());
    z.push_back(b.format().slot(i) == Parity::odd ? odd - even : even + odd);
  }
  return SuperKet(b.format(), b.parity(), b.generators(), std::move(z));
}

namespace detail {

inline void require_compatible(const SuperKet& a, const SuperKet& b) {
  if (a.format() != b.format()) throw format_error("state formats differ");
  if (a.generators() != b.generators())
    throw format_error("states live in different Grassmann algebras");
}

}  // namespace detail

// Super inner product <phi || psi>. States of opposite parity are exactly
// orthogonal; equal-parity states contract the dual coordinates of phi with
// the coordinates of psi.
inline GrassmannElement inner(const SuperKet& phi, const SuperKet& psi) {
  detail::require_compatible(phi, psi);
  if (!phi.is_homogeneous() || !psi.is_homogeneous())
    throw parity_error("inner product requires homogeneous states");
  GrassmannElement acc(phi.generators());
  if (phi.parity() != psi.parity()) return acc;
  const SuperBra b = dual(phi);
  for (int i = 0; i < phi.dim(); ++i) acc += b.coord(i) * psi.coord(i);
  return acc;
}

// Bra applied to a ket; zero across parities.
inline GrassmannElement inner(const SuperBra& phi, const SuperKet& psi) {
  if (phi.format() != psi.format()) throw format_error("state formats differ");
  if (phi.generators() != psi.generators())
    throw format_error("states live in different Grassmann algebras");
  GrassmannElement acc(phi.generators());
  if (phi.parity() != psi.parity()) return acc;
  for (int i = 0; i < phi.dim(); ++i) acc += phi.coord(i) * psi.coord(i);
  return acc;
}

enum class Side { left, right };

// Module action on kets. Right scaling multiplies each coordinate from the
// right; left scaling moves z past the basis vector first, so slot i picks
// up (-1)^{deg z * slot(i)}. The declared parity shifts by deg z.
inline SuperKet scale(const SuperKet& k, const GrassmannElement& z, Side side) {
  if (z.generators() != k.generators())
    throw format_error("scalar lives in a different Grassmann algebra");
  const auto pz = z.parity();
  if (!pz) throw parity_error("scaling requires a homogeneous scalar");
  std::vector<GrassmannElement> c;
  c.reserve(k.dim());
  for (int i = 0; i < k.dim(); ++i) {
    if (side == Side::right) {
      c.push_back(k.coord(i) * z);
    } else {
      const double sgn =
          (*pz == Parity::odd && k.format().slot(i) == Parity::odd) ? -1.0 : 1.0;
      c.push_back(z * k.coord(i) * sgn);
    }
  }
  return SuperKet(k.format(), parity_add(k.parity(), *pz), k.generators(), std::move(c));
}

// Left module action on bras (bra coordinates already sit on the left).
inline SuperBra scale_left(const SuperBra& b, const GrassmannElement& z) {
  if (z.generators() != b.generators())
    throw format_error("scalar lives in a different Grassmann algebra");
  const auto pz = z.parity();
  if (!pz) throw parity_error("scaling requires a homogeneous scalar");
  std::vector<GrassmannElement> c;
  c.reserve(b.dim());
  for (int i = 0; i < b.dim(); ++i) c.push_back(z * b.coord(i));
  return SuperBra(b.format(), parity_add(b.parity(), *pz), b.generators(), std::move(c));
}

// Operator on an (r|s) space: a block-consistent supermatrix whose parity is
// the operator's degree.
struct GradedOperator {
  explicit GradedOperator(SuperMatrix matrix) : m(std::move(matrix)) {
    if (!validate(m).empty())
      throw parity_error("graded operator matrix violates block parity consistency");
  }

  SpaceFormat space() const { return SpaceFormat{m.format().p, m.format().q}; }
  Parity parity() const { return m.parity(); }

  SuperMatrix m;
};

// Coordinates map through the matrix; output parity is deg T + deg psi.
inline SuperKet apply(const GradedOperator& t, const SuperKet& psi) {
  if (t.space() != psi.format()) throw format_error("operator/state formats differ");
  if (t.m.generators() != psi.generators())
    throw format_error("operator lives in a different Grassmann algebra");
  SuperKet out(psi.format(), parity_add(t.parity(), psi.parity()), psi.generators());
  for (int i = 0; i < psi.dim(); ++i) {
    GrassmannElement acc(psi.generators());
    for (int j = 0; j < psi.dim(); ++j) acc += t.m.at(i, j) * psi.coord(j);
    out.coord(i) = acc;
  }
  return out;
}

// || <T phi || psi> - (-1)^{pi_phi pi_T} <phi || T^+ psi> ||_R; zero
// certifies the adjoint convention.
inline double superadjoint_residual(const GradedOperator& t, const SuperKet& phi,
                                    const SuperKet& psi) {
  if (!phi.is_homogeneous() || !psi.is_homogeneous())
    throw parity_error("adjoint check requires homogeneous states");
  const GrassmannElement lhs = inner(apply(t, phi), psi);
  const GradedOperator adj(superadjoint(t.m));
  const double sgn =
      (phi.parity() == Parity::odd && t.parity() == Parity::odd) ? -1.0 : 1.0;
  const GrassmannElement rhs = inner(phi, apply(adj, psi)) * sgn;
  return (lhs - rhs).norm_r();
}

// Density supermatrix ||psi><psi||: entry (i,j) is (coordinate j) times
// (dual coordinate i). Parity-0 supermatrix for homogeneous input.
inline SuperMatrix outer(const SuperKet& psi) {
  const SuperBra b = dual(psi);
  SuperMatrix rho(SuperFormat{psi.format().r, psi.format().s}, Parity::even, psi.generators());
  for (int i = 0; i < psi.dim(); ++i)
    for (int j = 0; j < psi.dim(); ++j) rho.at(i, j) = psi.coord(j) * b.coord(i);
  return rho;
}

// Grassmannless limit of an even state: bodies of the even-slot
// coordinates; odd slots drop.
inline std::vector<cplx> body(const SuperKet& psi) {
  if (psi.parity() != Parity::even)
    throw parity_error("body map is defined for parity-0 states only");
  std::vector<cplx> out;
  out.reserve(psi.format().r);
  for (int i = 0; i < psi.format().r; ++i) out.push_back(psi.coord(i).body());
  return out;
}

}  // namespace superq
