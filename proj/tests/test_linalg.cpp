#include "quadsep/linalg.hpp"

#include <cmath>

#include <doctest.h>

#include "quadsep/errors.hpp"
#include "support/generators.hpp"

using namespace quadsep;
using quadsep::testing::Rng;

namespace {

const Tolerances kTol;

double reconstruction_error(const SymMatrix& m, const EigenDecomposition& d) {
  const std::size_t n = m.size();
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        v += d.vectors(i, k) * d.eigenvalues[k] * d.vectors(j, k);
      err = std::max(err, std::abs(v - m(i, j)));
    }
  return err;
}

double orthogonality_error(const Matrix& q) {
  const Matrix qtq = q.transposed() * q;
  double err = 0.0;
  for (std::size_t i = 0; i < qtq.rows(); ++i)
    for (std::size_t j = 0; j < qtq.cols(); ++j)
      err = std::max(err, std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)));
  return err;
}

double penrose_error(const SymMatrix& m, const SymMatrix& p) {
  const Matrix mm = m.to_matrix();
  const Matrix pm = p.to_matrix();
  const Matrix mp = mm * pm;
  const Matrix pmm = pm * mm;
  double err = 0.0;
  const Matrix r1 = mp * mm;  // M P M = M
  const Matrix r2 = pmm * pm; // P M P = P
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      err = std::max(err, std::abs(r1(i, j) - mm(i, j)));
      err = std::max(err, std::abs(r2(i, j) - pm(i, j)));
      err = std::max(err, std::abs(mp(i, j) - mp(j, i)));
      err = std::max(err, std::abs(pmm(i, j) - pmm(j, i)));
    }
  return err;
}

}  // namespace

TEST_CASE("eigendecomposition on fixed matrices") {
  SUBCASE("already diagonal") {
    const auto d = eig_sym(SymMatrix::diagonal({-1.0, 4.0}));
    CHECK(d.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(d.eigenvalues[1] == doctest::Approx(4.0));
    CHECK(std::abs(d.vectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(d.vectors(1, 1)) == doctest::Approx(1.0));
    CHECK(d.vectors(0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("identity") {
    const auto d = eig_sym(SymMatrix::diagonal({1.0, 1.0, 1.0}));
    for (double ev : d.eigenvalues) CHECK(ev == doctest::Approx(1.0));
  }
  SUBCASE("exchange matrix") {
    // Characteristic polynomial x^2 - 1: eigenvalues -1 and 1 with
    // eigenvectors (1,-1)/sqrt2 and (1,1)/sqrt2.
    const auto d = eig_sym(SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(d.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(d.eigenvalues[1] == doctest::Approx(1.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(d.vectors(0, 0) * d.vectors(1, 0)) ==
          doctest::Approx(inv_sqrt2 * inv_sqrt2));
    CHECK(d.vectors(0, 0) * d.vectors(1, 0) < 0.0);  // opposite signs
    CHECK(d.vectors(0, 1) * d.vectors(1, 1) > 0.0);  // same signs
  }
  SUBCASE("empty matrix") {
    const auto d = eig_sym(SymMatrix());
    CHECK(d.eigenvalues.empty());
    CHECK(d.vectors.rows() == 0);
  }
}

TEST_CASE("inertia on fixed matrices") {
  auto r = inertia(SymMatrix::diagonal({-1.0, 4.0}), kTol);
  CHECK(r.n_neg == 1);
  CHECK(r.n_zero == 0);
  CHECK(r.n_pos == 1);

  r = inertia(SymMatrix(2), kTol);
  CHECK(r.n_neg == 0);
  CHECK(r.n_zero == 2);
  CHECK(r.n_pos == 0);

  // Eigenvalues 0 and 2.
  r = inertia(SymMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}), kTol);
  CHECK(r.n_neg == 0);
  CHECK(r.n_zero == 1);
  CHECK(r.n_pos == 1);
}

TEST_CASE("pseudoinverse on fixed matrices") {
  SUBCASE("diagonal") {
    const auto p = pinv_sym(SymMatrix::diagonal({2.0, 0.0}), kTol);
    CHECK(p(0, 0) == doctest::Approx(0.5));
    CHECK(p(1, 1) == doctest::Approx(0.0));
  }
  SUBCASE("identity") {
    const auto p = pinv_sym(SymMatrix::diagonal({1.0, 1.0}), kTol);
    CHECK(p(0, 0) == doctest::Approx(1.0));
    CHECK(p(0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("rank one") {
    const SymMatrix m = SymMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
    const auto p = pinv_sym(m, kTol);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(p(i, j) == doctest::Approx(0.25));
    CHECK(penrose_error(m, p) < 1e-12);
  }
}

TEST_CASE("range membership") {
  CHECK(range_contains(SymMatrix::diagonal({-1.0, 4.0}), {3.0, 7.0}, kTol));
  CHECK_FALSE(range_contains(SymMatrix::diagonal({1.0, 0.0}), {0.0, 1.0}, kTol));
  CHECK(range_contains(SymMatrix(2), {0.0, 0.0}, kTol));
  CHECK_THROWS_AS(range_contains(SymMatrix(2), {1.0}, kTol), InputError);
}

TEST_CASE("nullspace basis of a covector") {
  SUBCASE("axis aligned") {
    const Matrix v = nullspace_basis_of_covector({1.0, 0.0}, kTol);
    REQUIRE(v.rows() == 2);
    REQUIRE(v.cols() == 1);
    CHECK(std::abs(v(0, 0)) < 1e-15);
    CHECK(std::abs(v(1, 0)) == doctest::Approx(1.0));
  }
  SUBCASE("general covector") {
    const Vector c = {1.0, -5.0};
    const Matrix v = nullspace_basis_of_covector(c, kTol);
    REQUIRE(v.cols() == 1);
    // Column is (5,1)/sqrt(26) up to sign.
    CHECK(std::abs(v(0, 0) * 1.0 + v(1, 0) * -5.0) < 1e-14);
    CHECK(v(0, 0) * v(0, 0) + v(1, 0) * v(1, 0) == doctest::Approx(1.0));
    CHECK(std::abs(v(0, 0)) == doctest::Approx(5.0 / std::sqrt(26.0)));
  }
  SUBCASE("one dimensional") {
    const Matrix v = nullspace_basis_of_covector({-2.0}, kTol);
    CHECK(v.rows() == 1);
    CHECK(v.cols() == 0);
  }
  SUBCASE("zero covector is rejected") {
    CHECK_THROWS_AS(nullspace_basis_of_covector({0.0, 0.0}, kTol), InputError);
  }
}

TEST_CASE("definiteness classification") {
  CHECK(definiteness(SymMatrix::diagonal({1.0, 2.0}), kTol) ==
        Definiteness::PSD);
  CHECK(definiteness(SymMatrix::diagonal({-21.0 / 26.0}), kTol) ==
        Definiteness::NSD);
  CHECK(definiteness(SymMatrix::diagonal({-1.0, 4.0}), kTol) ==
        Definiteness::INDEFINITE);
  CHECK(definiteness(SymMatrix(), kTol) == Definiteness::ZERO);
  CHECK(definiteness(SymMatrix(3), kTol) == Definiteness::ZERO);
  CHECK(definiteness(SymMatrix::diagonal({1.0, 0.0}), kTol) ==
        Definiteness::PSD);
}

TEST_CASE("tolerances must be positive") {
  CHECK_THROWS_AS(Tolerances(0.0, 1e-12), InputError);
  CHECK_THROWS_AS(Tolerances(1e-9, -1.0), InputError);
}

TEST_CASE("eigendecomposition and pseudoinverse over random matrices") {
  Rng rng(20240811);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = trial % 9;  // 0 through 8
    const double scale = testing::log_uniform(rng, -2.0, 2.0);
    const SymMatrix m = testing::random_sym(rng, n, scale);

    const EigenDecomposition d = eig_sym(m);
    CHECK(reconstruction_error(m, d) <= 1e-8 * std::max(1.0, m.max_abs()));
    CHECK(orthogonality_error(d.vectors) <= 1e-10);
    for (std::size_t i = 0; i + 1 < n; ++i)
      CHECK(d.eigenvalues[i] <= d.eigenvalues[i + 1]);

    const SymMatrix p = pinv_sym(m, kTol);
    CHECK(penrose_error(m, p) <= 1e-7 * std::max(1.0, m.max_abs()));

    const Vector x = testing::random_vector(rng, n);
    CHECK(range_contains(m, m * x, kTol));
  }
}

TEST_CASE("inertia is invariant under orthogonal conjugation") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const SymMatrix m = testing::random_sym(rng, n);
    const Matrix r = testing::random_orthogonal(rng, n);
    const SymMatrix conj =
        SymMatrix::from_matrix(r.transposed() * m.to_matrix() * r);
    const InertiaReport a = inertia(m, kTol);
    const InertiaReport b = inertia(conj, kTol);
    CHECK(a.n_neg == b.n_neg);
    CHECK(a.n_zero == b.n_zero);
    CHECK(a.n_pos == b.n_pos);
  }
}
