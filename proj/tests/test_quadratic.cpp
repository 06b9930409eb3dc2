#include "quadsep/quadratic.hpp"

#include <cmath>

#include <doctest.h>

#include "quadsep/errors.hpp"
#include "support/generators.hpp"

using namespace quadsep;
using quadsep::testing::Rng;

namespace {

const Tolerances kTol;

// f(x,y) = -x^2 + 4y^2 - 1
QuadraticFunction hyperbola2d() {
  return {SymMatrix::diagonal({-1.0, 4.0}), {0.0, 0.0}, -1.0};
}

// f(x,y) = -x^2 + 4y^2
QuadraticFunction cone2d() {
  return {SymMatrix::diagonal({-1.0, 4.0}), {0.0, 0.0}, 0.0};
}

double roundtrip_error(const QuadraticFunction& q, const CanonicalForm& cf,
                       Rng& rng) {
  double err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vector z = testing::random_vector(rng, q.dim(), 2.0);
    const double canonical = cf.evaluate(z);
    const double pulled = cf.change.mu * evaluate(q, cf.change.from_canonical(z));
    err = std::max(err, std::abs(pulled - canonical) /
                            std::max(1.0, std::abs(canonical)));
  }
  return err;
}

}  // namespace

TEST_CASE("evaluation uses the 2 a^T x convention") {
  CHECK(evaluate(hyperbola2d(), {0.0, 0.5}) == doctest::Approx(0.0));
  CHECK(evaluate(hyperbola2d(), {0.0, 0.0}) == doctest::Approx(-1.0));

  const QuadraticFunction f1{SymMatrix::diagonal({1.0}), {0.0}, -1.0};
  CHECK(evaluate(f1, {1.0}) == doctest::Approx(0.0));

  CHECK_THROWS_AS(evaluate(hyperbola2d(), {1.0}), InputError);
}

TEST_CASE("affine and constant detection") {
  const QuadraticFunction line{SymMatrix(2), {0.5, -2.5}, 0.0};
  const auto h = is_affine(line, kTol);
  REQUIRE(h.has_value());
  CHECK(h->c[0] == doctest::Approx(1.0));
  CHECK(h->c[1] == doctest::Approx(-5.0));
  CHECK(h->c0 == doctest::Approx(0.0));
  CHECK_FALSE(is_constant(line, kTol));

  CHECK_FALSE(is_affine(
      QuadraticFunction{SymMatrix::diagonal({1.0, 1.0}), {0.0, 0.0}, 0.0},
      kTol).has_value());
  CHECK(is_constant(QuadraticFunction{SymMatrix(2), {0.0, 0.0}, 3.0}, kTol));
}

TEST_CASE("critical value") {
  CHECK(*critical_value(hyperbola2d(), kTol) == doctest::Approx(-1.0));

  // x^2 - 2x = (x-1)^2 - 1
  const QuadraticFunction q{SymMatrix::diagonal({1.0}), {-1.0}, 0.0};
  CHECK(*critical_value(q, kTol) == doctest::Approx(-1.0));

  const QuadraticFunction degenerate{SymMatrix::diagonal({1.0, 0.0}),
                                     {0.0, 1.0}, 0.0};
  CHECK_FALSE(critical_value(degenerate, kTol).has_value());
}

TEST_CASE("canonical forms of the fixture functions") {
  Rng rng(1);
  SUBCASE("two-sheet hyperbola is F2") {
    const auto cf = canonical_form(hyperbola2d(), kTol);
    CHECK(cf.form_id == FormId::F2);
    CHECK(cf.k == 1);
    CHECK(cf.m == 2);
    CHECK(cf.delta == 1);
    CHECK(roundtrip_error(hyperbola2d(), cf, rng) < 1e-10);
  }
  SUBCASE("cone is F1 with theta 0") {
    const auto cf = canonical_form(cone2d(), kTol);
    CHECK(cf.form_id == FormId::F1);
    CHECK(cf.k == 1);
    CHECK(cf.m == 2);
    CHECK(cf.delta == 1);
    CHECK(cf.theta == 0);
    CHECK(roundtrip_error(cone2d(), cf, rng) < 1e-10);
  }
  SUBCASE("affine function is F5") {
    // f = x + 3, i.e. 2a = 1.
    const QuadraticFunction q{SymMatrix::diagonal({0.0}), {0.5}, 3.0};
    const auto cf = canonical_form(q, kTol);
    CHECK(cf.form_id == FormId::F5);
    CHECK(cf.delta == 1);
    CHECK(cf.cprime == doctest::Approx(3.0));
    CHECK(roundtrip_error(q, cf, rng) < 1e-10);
  }
  SUBCASE("paraboloid is F4 with delta 1") {
    const QuadraticFunction q{SymMatrix::diagonal({1.0, 0.0}), {0.0, 1.0},
                              2.0};
    const auto cf = canonical_form(q, kTol);
    CHECK(cf.form_id == FormId::F4);
    CHECK(cf.m == 1);
    CHECK(cf.delta == 1);
    CHECK(roundtrip_error(q, cf, rng) < 1e-10);
  }
  SUBCASE("surviving linear term with a negative square is F3") {
    const QuadraticFunction q{SymMatrix::diagonal({-2.0, 0.0}), {0.0, 1.5},
                              -7.0};
    const auto cf = canonical_form(q, kTol);
    CHECK(cf.form_id == FormId::F3);
    CHECK(cf.k == 1);
    CHECK(cf.m == 1);
    CHECK(cf.delta == 0);
    CHECK(roundtrip_error(q, cf, rng) < 1e-10);
  }
  SUBCASE("constant input is rejected") {
    CHECK_THROWS_AS(
        canonical_form(QuadraticFunction{SymMatrix(2), {0.0, 0.0}, 1.0}, kTol),
        InputError);
  }
}

TEST_CASE("canonical round-trip and inertia counts over random functions") {
  Rng rng(20240812);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const QuadraticFunction q = testing::random_nonconstant(
        rng, n, testing::log_uniform(rng, -1.0, 1.0));
    const CanonicalForm cf = canonical_form(q, kTol);
    CHECK(roundtrip_error(q, cf, rng) < 1e-7);

    // Sylvester: the square counts match the inertia of A.
    const InertiaReport in = inertia(q.A, kTol);
    CHECK(cf.k == in.n_neg);
    CHECK(cf.m - cf.k == in.n_pos);
    if (cf.form_id == FormId::F4 || cf.form_id == FormId::F5)
      CHECK(cf.k == 0);
  }
}

TEST_CASE("linear combinations") {
  const QuadraticFunction f{SymMatrix::diagonal({-1.0, 1.0}), {0.0, 0.0}, 1.0};
  const QuadraticFunction g{SymMatrix::diagonal({-1.0, 1.0}), {1.0, 0.0}, 1.0};

  const QuadraticFunction zero = linear_combination(1.0, f, -1.0, f);
  CHECK(zero.A.max_abs() == 0.0);
  CHECK(max_abs(zero.a) == 0.0);
  CHECK(zero.a0 == 0.0);

  const QuadraticFunction same = linear_combination(0.0, f, 1.0, g);
  CHECK(same.a[0] == doctest::Approx(1.0));

  // g - f has quadratic part zero and linear part 2x.
  const QuadraticFunction diff = linear_combination(-1.0, f, 1.0, g);
  CHECK(diff.A.max_abs() == 0.0);
  CHECK(diff.a[0] == doctest::Approx(1.0));
  CHECK(diff.a0 == doctest::Approx(0.0));

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const QuadraticFunction qa = testing::random_quadratic(rng, n);
    const QuadraticFunction qb = testing::random_quadratic(rng, n);
    const double alpha = testing::uniform(rng, -3.0, 3.0);
    const double beta = testing::uniform(rng, -3.0, 3.0);
    const QuadraticFunction comb = linear_combination(alpha, qa, beta, qb);
    const Vector x = testing::random_vector(rng, n, 2.0);
    const double expected = alpha * evaluate(qa, x) + beta * evaluate(qb, x);
    CHECK(std::abs(evaluate(comb, x) - expected) <=
          1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("scalar multiple recovery") {
  const SymMatrix a = SymMatrix::diagonal({-1.0, 4.0});
  CHECK(*multiple_of(a.scaled(2.0), a, kTol) == doctest::Approx(2.0));
  CHECK(*multiple_of(SymMatrix(2), a, kTol) == doctest::Approx(0.0));
  CHECK_FALSE(multiple_of(SymMatrix::diagonal({1.0, 1.0}), a, kTol).has_value());

  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    SymMatrix base = testing::random_sym(rng, n);
    if (base.max_abs() == 0.0) continue;
    const double lambda =
        (trial % 7 == 0) ? 0.0 : testing::uniform(rng, -4.0, 4.0);
    const auto rec = multiple_of(base.scaled(lambda), base, kTol);
    REQUIRE(rec.has_value());
    CHECK(*rec == doctest::Approx(lambda).epsilon(1e-9));
  }
}
