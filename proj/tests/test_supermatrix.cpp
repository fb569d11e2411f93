#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "superq/random.hpp"
#include "superq/supermatrix.hpp"
#include "superq/verify.hpp"

using namespace superq;

namespace {

GrassmannElement theta(int n, int i) { return GrassmannElement::generator(n, i); }
GrassmannElement sc(int n, cplx v) { return GrassmannElement::scalar(n, v); }

bool approx_eq(const SuperMatrix& a, const SuperMatrix& b, double tol = 1e-12) {
  return max_coeff_diff(a, b) <= tol;
}

bool approx_eq(const GrassmannElement& a, const GrassmannElement& b, double tol = 1e-12) {
  return max_coeff_diff(a, b) <= tol;
}

// (1|1) matrix [[a, beta], [gamma, d]] with even a,d and odd beta,gamma.
SuperMatrix one_one(int n, GrassmannElement a, GrassmannElement beta, GrassmannElement gamma,
                    GrassmannElement d) {
  SuperMatrix m(SuperFormat{1, 1}, Parity::even, n);
  m.at(0, 0) = std::move(a);
  m.at(0, 1) = std::move(beta);
  m.at(1, 0) = std::move(gamma);
  m.at(1, 1) = std::move(d);
  return m;
}

}  // namespace

TEST_CASE("validate flags block parity violations") {
  const int n = 4;
  SuperMatrix m(SuperFormat{1, 1}, Parity::even, n);
  m.at(0, 0) = theta(n, 1);  // odd element in the even A block
  const auto violations = validate(m);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].row == 0);
  CHECK(violations[0].col == 0);

  CHECK(validate(SuperMatrix::identity(SuperFormat{2, 1}, n)).empty());

  // parity-1 matrix with even off-diagonal blocks is consistent
  SuperMatrix odd(SuperFormat{1, 1}, Parity::odd, n);
  odd.at(0, 1) = sc(n, 2.0);
  odd.at(1, 0) = sc(n, {0.0, 1.0});
  CHECK(validate(odd).empty());
}

TEST_CASE("product basics") {
  const int n = 4;
  const SuperMatrix id = SuperMatrix::identity(SuperFormat{1, 1}, n);
  const SuperMatrix m = one_one(n, sc(n, 1.0), theta(n, 1), theta(n, 2), sc(n, 1.0));
  CHECK(approx_eq(m * id, m));
  CHECK(approx_eq(id * m, m));

  Rng rng(5);
  const SuperMatrix a = rng.matrix(SuperFormat{1, 1}, Parity::odd, n);
  const SuperMatrix b = rng.matrix(SuperFormat{1, 1}, Parity::odd, n);
  CHECK((a * b).parity() == Parity::even);
  CHECK(validate(a * b).empty());

  CHECK_THROWS_AS(m * SuperMatrix::identity(SuperFormat{2, 1}, n), format_error);
}

TEST_CASE("split") {
  const int n = 4;
  const SuperMatrix m = one_one(n, sc(n, 2.0) + GrassmannElement::monomial(n, {1, 2}, 1.0),
                                theta(n, 1), GrassmannElement(n), sc(n, 3.0));
  const MatrixSplit parts = split(m);
  CHECK(approx_eq(parts.body, one_one(n, sc(n, 2.0), GrassmannElement(n), GrassmannElement(n),
                                      sc(n, 3.0))));
  CHECK(approx_eq(parts.body + parts.soul, m));
  CHECK(approx_eq(parts.even_part + parts.odd_part, m));
  // masking: diagonal blocks in even_part, off-diagonal in odd_part
  CHECK(parts.even_part.at(0, 1).is_zero());
  CHECK(parts.odd_part.at(0, 0).is_zero());

  const SuperMatrix zero(SuperFormat{1, 1}, Parity::even, n);
  const MatrixSplit zparts = split(zero);
  CHECK(zparts.body == zero);
  CHECK(zparts.soul == zero);
  CHECK(zparts.even_part == zero);
  CHECK(zparts.odd_part == zero);

  // parity-1 matrix: body sits in the off-diagonal blocks
  SuperMatrix odd(SuperFormat{1, 1}, Parity::odd, n);
  odd.at(0, 1) = sc(n, 2.0) + GrassmannElement::monomial(n, {1, 2}, 1.0);
  odd.at(0, 0) = theta(n, 1);
  const MatrixSplit oparts = split(odd);
  CHECK(approx_eq(oparts.body.at(0, 1), sc(n, 2.0)));
  CHECK(oparts.body.at(0, 0).is_zero());
}

TEST_CASE("supertranspose") {
  const int n = 4;
  const auto a = sc(n, {1.0, 2.0});
  const auto beta = theta(n, 1);
  const auto gamma = theta(n, 2);
  const auto d = sc(n, {3.0, -1.0});
  const SuperMatrix m = one_one(n, a, beta, gamma, d);

  // parity 0: [[a, beta],[gamma, d]] -> [[a, gamma],[-beta, d]]
  const SuperMatrix st = supertranspose(m);
  CHECK(approx_eq(st.at(0, 0), a));
  CHECK(approx_eq(st.at(0, 1), gamma));
  CHECK(approx_eq(st.at(1, 0), -beta));
  CHECK(approx_eq(st.at(1, 1), d));

  CHECK(approx_eq(supertranspose(supertranspose(supertranspose(st))), m));
  CHECK(approx_eq(supertranspose_inverse(st), m));

  // block-diagonal matrices reduce to the ordinary blockwise transpose
  Rng rng(23);
  SuperMatrix bd(SuperFormat{2, 2}, Parity::even, n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      bd.at(i, j) = rng.homogeneous(n, Parity::even);
      bd.at(2 + i, 2 + j) = rng.homogeneous(n, Parity::even);
    }
  const SuperMatrix bdt = supertranspose(bd);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(approx_eq(bdt.at(i, j), bd.at(j, i)));
}

TEST_CASE("supertrace") {
  const int n = 4;
  const auto a = sc(n, {2.0, 1.0}) + GrassmannElement::monomial(n, {1, 2}, 0.5);
  const auto d = sc(n, 1.0);
  CHECK(approx_eq(supertrace(one_one(n, a, theta(n, 1), theta(n, 2), d)), a - d));

  SuperMatrix odd(SuperFormat{1, 1}, Parity::odd, n);
  odd.at(0, 0) = theta(n, 1);
  odd.at(1, 1) = theta(n, 2);
  odd.at(0, 1) = sc(n, 2.0);
  odd.at(1, 0) = sc(n, 3.0);
  CHECK(approx_eq(supertrace(odd), theta(n, 1) + theta(n, 2)));

  CHECK(supertrace(SuperMatrix(SuperFormat{2, 2}, Parity::even, n)).is_zero());
}

TEST_CASE("det_even") {
  const int n = 4;
  const auto a = sc(n, {1.0, 1.0}), b = sc(n, 2.0), c = sc(n, {0.0, -1.0}), d = sc(n, 3.0);
  CHECK(approx_eq(det_even({a, b, c, d}, 2), a * d - b * c));

  const auto top = sc(n, 1.0) + GrassmannElement::monomial(n, {1, 2}, 1.0);
  CHECK(approx_eq(det_even({top, GrassmannElement(n), GrassmannElement(n), sc(n, 1.0)}, 2), top));

  CHECK_THROWS_AS(det_even({theta(n, 1)}, 1), parity_error);

  // det multiplicativity against brute-force expansion of both routes
  Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    std::vector<GrassmannElement> x, y, xy(4, GrassmannElement(n));
    for (int k = 0; k < 4; ++k) {
      x.push_back(rng.homogeneous(n, Parity::even));
      y.push_back(rng.homogeneous(n, Parity::even));
    }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) xy[2 * i + j] += x[2 * i + k] * y[2 * k + j];
    CHECK(approx_eq(det_even(xy, 2), det_even(x, 2) * det_even(y, 2), 1e-11));
  }
}

TEST_CASE("inverse") {
  const int n = 4;
  const SuperMatrix id = SuperMatrix::identity(SuperFormat{1, 1}, n);
  CHECK(approx_eq(inverse(id), id));

  SuperMatrix diag(SuperFormat{1, 1}, Parity::even, n);
  diag.at(0, 0) = sc(n, 2.0);
  diag.at(1, 1) = sc(n, 4.0);
  const SuperMatrix dinv = inverse(diag);
  CHECK(approx_eq(dinv.at(0, 0), sc(n, 0.5)));
  CHECK(approx_eq(dinv.at(1, 1), sc(n, 0.25)));

  // (I + S)^{-1} = I - S + S^2 - ... for soul-only S
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    SuperMatrix s = rng.matrix(SuperFormat{2, 1}, Parity::even, n, 0.8, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.at(i, j) = s.at(i, j).soul();
    const SuperMatrix m = SuperMatrix::identity(SuperFormat{2, 1}, n) + s;
    CHECK(max_coeff_diff(m * inverse(m), SuperMatrix::identity(SuperFormat{2, 1}, n)) <= 1e-9);
  }

  SuperMatrix singular(SuperFormat{1, 1}, Parity::even, n);
  singular.at(0, 0) = GrassmannElement::monomial(n, {1, 2}, 1.0);
  singular.at(1, 1) = sc(n, 1.0);
  CHECK_THROWS_AS(inverse(singular), noninvertible_error);
}

TEST_CASE("berezinian closed form on (1|1)") {
  const int n = 4;
  Rng rng(37);
  for (int t = 0; t < 50; ++t) {
    const auto a = rng.homogeneous(n, Parity::even);
    const auto beta = rng.homogeneous(n, Parity::odd);
    const auto gamma = rng.homogeneous(n, Parity::odd);
    auto d = rng.homogeneous(n, Parity::even);
    if (std::abs(d.body()) < 0.3) d += sc(n, 1.0);
    const SuperMatrix m = one_one(n, a, beta, gamma, d);
    // symbolic expansion: a/d - beta gamma / d^2
    const auto dinv = inverse(d);
    const auto want = a * dinv - beta * gamma * dinv * dinv;
    CHECK(approx_eq(berezinian(m), want));
  }
}

TEST_CASE("berezinian block-diagonal and identity") {
  const int n = 4;
  CHECK(approx_eq(berezinian(SuperMatrix::identity(SuperFormat{2, 2}, n)), sc(n, 1.0)));

  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    SuperMatrix m = rng.invertible_matrix(SuperFormat{2, 2}, n);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        m.at(i, 2 + j) = GrassmannElement(n);
        m.at(2 + i, j) = GrassmannElement(n);
      }
    std::vector<GrassmannElement> a{m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
    std::vector<GrassmannElement> d{m.at(2, 2), m.at(2, 3), m.at(3, 2), m.at(3, 3)};
    CHECK(approx_eq(berezinian(m), det_even(a, 2) * inverse(det_even(d, 2)), 1e-10));
  }
}

TEST_CASE("berezinian rejects singular D body") {
  const int n = 4;
  SuperMatrix m = SuperMatrix::identity(SuperFormat{1, 1}, n);
  m.at(1, 1) = GrassmannElement::monomial(n, {1, 2}, 1.0);  // zero body
  CHECK_THROWS_AS(berezinian(m), noninvertible_error);
}

TEST_CASE("exponential") {
  const int n = 4;
  const SuperFormat f{2, 1};
  CHECK(approx_eq(exp(SuperMatrix(f, Parity::even, n)), SuperMatrix::identity(f, n)));

  // term norms still growing at the cap -> numeric error
  SuperMatrix huge(f, Parity::even, n);
  for (int i = 0; i < 3; ++i) huge.at(i, i) = sc(n, 100.0);
  CHECK_THROWS_AS(exp(huge), numeric_error);

  // Ber(e^M) = e^{str M} on random small matrices
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const SuperMatrix m = rng.small_matrix(f, n);
    CHECK(max_coeff_diff(berezinian(exp(m)), superq::exp(supertrace(m))) <= 1e-8);
  }
}

TEST_CASE("superadjoint") {
  const int n = 4;
  const SuperFormat f{2, 1};
  const SuperMatrix id = SuperMatrix::identity(f, n);
  CHECK(approx_eq(superadjoint(id), id));

  // body-only parity-0 matrices reduce to the blockwise conjugate transpose
  Rng rng(47);
  SuperMatrix body(f, Parity::even, n);
  cplx vals[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if ((i < 2) != (j < 2)) continue;  // off-diagonal blocks have no body
      vals[i][j] = rng.complex();
      body.at(i, j) = sc(n, vals[i][j]);
    }
  const SuperMatrix adj = superadjoint(body);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(adj.at(i, j).body() - std::conj(vals[j][i])) <= 1e-12);

  // applying the superadjoint twice gives (-1)^{deg M} M, constant per parity
  for (int t = 0; t < 40; ++t) {
    const Parity p = rng.parity();
    const SuperMatrix m = rng.matrix(SuperFormat{1, 1}, p, n);
    CHECK(approx_eq(superadjoint(superadjoint(m)), m * cplx{parity_sign(p), 0.0}));
  }
}

TEST_CASE("group membership") {
  const int n = 4;
  const double tol = 1e-9;
  for (MatrixGroup g : {MatrixGroup::sl2, MatrixGroup::su2}) {
    const SuperMatrix id2 = SuperMatrix::identity(SuperFormat{2, 0}, 0);
    CHECK(group_check(id2, g, tol).member);
  }
  for (MatrixGroup g : {MatrixGroup::osp21, MatrixGroup::uosp21}) {
    const SuperMatrix id = SuperMatrix::identity(SuperFormat{2, 1}, n);
    CHECK(group_check(id, g, tol).member);
  }

  SuperMatrix diag(SuperFormat{2, 0}, Parity::even, 0);
  diag.at(0, 0) = sc(0, 2.0);
  diag.at(1, 1) = sc(0, 0.5);
  CHECK(group_check(diag, MatrixGroup::sl2, tol).member);
  CHECK_FALSE(group_check(diag, MatrixGroup::su2, tol).member);

  Rng rng(53);
  for (int t = 0; t < 25; ++t) {
    const SuperMatrix k = rng.osp_algebra_element(n);
    CHECK(group_check(exp(k), MatrixGroup::osp21, 1e-8).member);
  }
}

TEST_CASE("sdtr") {
  const int n = 4;
  Rng rng(59);

  // outer products of even-superqubit coefficient vectors map to zero
  for (int t = 0; t < 50; ++t) {
    const auto a = rng.superqubit_vector(n);
    const auto b = rng.superqubit_vector(n);
    SuperMatrix m(SuperFormat{2, 1}, Parity::even, n);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.at(i, j) = a[i] * b[j];
    CHECK(sdtr(m).norm_r() <= 1e-10);
  }

  CHECK(sdtr(SuperMatrix(SuperFormat{2, 1}, Parity::even, n)).is_zero());

  // embedded body with det 1 maps to 1
  SuperMatrix m(SuperFormat{2, 1}, Parity::even, n);
  m.at(0, 0) = sc(n, 2.0);
  m.at(1, 1) = sc(n, 0.5);
  CHECK(approx_eq(sdtr(m), sc(n, 1.0), 1e-9));

  CHECK_THROWS_AS(sdtr(SuperMatrix(SuperFormat{2, 2}, Parity::even, n)), format_error);
  CHECK_THROWS_AS(sdtr_arrangement_from_name("bogus"), calibration_error);
}

TEST_CASE("module law keeps the parity label") {
  const int n = 4;
  Rng rng(61);
  const SuperMatrix m = rng.matrix(SuperFormat{1, 1}, Parity::even, n);
  const GrassmannElement a = rng.homogeneous(n, Parity::odd);
  const SuperMatrix am = a * m;
  CHECK(am.parity() == m.parity());
  CHECK(approx_eq(supertranspose(am), a * supertranspose(m)));
}

TEST_CASE("property suites pass at pinned tolerances") {
  const std::map<std::string, double> tols = {
      {"supermatrix.supertranspose_order4", 1e-12},
      {"supermatrix.supertranspose_product_rule", 1e-12},
      {"supermatrix.supertranspose_module_rule", 1e-12},
      {"supermatrix.supertrace_transpose_invariance", 1e-12},
      {"supermatrix.supertrace_supercommutativity", 1e-12},
      {"supermatrix.berezinian_transpose_invariance", 1e-10},
      {"supermatrix.berezinian_multiplicative", 1e-10},
      {"supermatrix.berezinian_body", 1e-10},
      {"supermatrix.berezinian_exp_supertrace", 1e-8},
      {"supermatrix.berezinian_singular_d", 1e-12},
      {"supermatrix.parity_closure", 1e-12},
      {"supermatrix.exp_soul_polynomial", 1e-12},
      {"supermatrix.osp_membership", 1e-8},
      {"supermatrix.sdtr_det_body", 1e-9},
      {"supermatrix.sdtr_outer_vanishing", 1e-10},
  };
  for (const auto& suite : verification_suites()) {
    const auto it = tols.find(suite.name);
    if (it == tols.end()) continue;
    const SuiteResult r = suite.run(42, 100, it->second);
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("sdtr calibration finds one survivor class") {
  const SdtrCalibration cal = calibrate_sdtr(42, 50, 1e-9);
  CHECK(cal.status == CalibrationStatus::ok);
  REQUIRE(cal.survivor_classes.size() == 1);
  CHECK(cal.survivor_classes[0].size() == 2);
  CHECK(cal.pinned == SdtrArrangement::neg_half_str_EMsT_EM);
}
