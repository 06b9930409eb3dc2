#pragma once

#include <cmath>
#include <random>

#include "quadsep/quadratic.hpp"

namespace quadsep::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double pick_sign(Rng& rng) {
  return uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
}

/// Magnitude drawn log-uniformly from 10^lo_exp .. 10^hi_exp.
inline double log_uniform(Rng& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, uniform(rng, lo_exp, hi_exp));
}

inline Vector random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  Vector v(n);
  for (double& x : v) x = scale * uniform(rng, -1.0, 1.0);
  return v;
}

inline SymMatrix random_sym(Rng& rng, std::size_t n, double scale = 1.0) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m.set(i, j, scale * uniform(rng, -1.0, 1.0));
  return m;
}

inline Matrix random_orthogonal(Rng& rng, std::size_t n) {
  return eig_sym(random_sym(rng, n)).vectors;
}

inline SymMatrix conjugated_diagonal(const Matrix& r, const Vector& d) {
  const std::size_t n = d.size();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (d[j] == 0.0) continue;
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        m(i1, i2) += d[j] * r(i1, j) * r(i2, j);
  }
  return SymMatrix::from_matrix(m);
}

inline QuadraticFunction scale_quadratic(const QuadraticFunction& q, double c) {
  return QuadraticFunction{q.A.scaled(c), scaled(q.a, c), c * q.a0};
}

/// Random quadratic exercising the degenerate shapes: affine, rank
/// deficient, kernel-aligned or vanishing linear parts, zero constants.
inline QuadraticFunction random_quadratic(Rng& rng, std::size_t n,
                                          double scale = 1.0) {
  QuadraticFunction q;
  const double kind = uniform(rng, 0.0, 1.0);
  if (kind < 0.12) {
    q.A = SymMatrix(n);
  } else if (kind < 0.45) {
    Vector d(n);
    for (double& x : d)
      x = (uniform(rng, 0.0, 1.0) < 0.4) ? 0.0 : uniform(rng, -1.0, 1.0);
    q.A = conjugated_diagonal(random_orthogonal(rng, n), d);
  } else {
    q.A = random_sym(rng, n);
  }
  q.a = (uniform(rng, 0.0, 1.0) < 0.18) ? Vector(n, 0.0)
                                        : random_vector(rng, n);
  q.a0 = (uniform(rng, 0.0, 1.0) < 0.22) ? 0.0 : uniform(rng, -1.0, 1.0);
  return scale_quadratic(q, scale);
}

inline QuadraticFunction random_nonconstant(Rng& rng, std::size_t n,
                                            double scale = 1.0) {
  for (;;) {
    QuadraticFunction q = random_quadratic(rng, n, scale);
    if (!is_constant(q, Tolerances())) return q;
  }
}

/// A pair built so the analytic criterion certifies {g=0} separates {f=0}:
/// f has a two-sheet zero set with a healthy gap, h is a hyperplane through
/// the gap, and g = lambda f + s h.
struct SeparatedPair {
  QuadraticFunction f;
  QuadraticFunction g;
  double lambda = 0.0;
  AffineFunction h;
};

inline SeparatedPair make_separated_pair(Rng& rng, std::size_t n,
                                         bool affine_g = false) {
  Vector d(n);
  d[0] = -uniform(rng, 0.3, 2.0);
  for (std::size_t i = 1; i < n; ++i) d[i] = uniform(rng, 0.3, 2.0);
  const Matrix r = random_orthogonal(rng, n);
  const SymMatrix a = conjugated_diagonal(r, d);
  const Vector center = random_vector(rng, n, 2.0);
  const double v = uniform(rng, 0.5, 4.0);

  SeparatedPair pair;
  pair.f.A = a;
  pair.f.a = scaled(a * center, -1.0);
  pair.f.a0 = dot(center, a * center) + v;
  if (uniform(rng, 0.0, 1.0) < 0.5) pair.f = pair.f.negated();

  Vector u1(n);
  for (std::size_t i = 0; i < n; ++i) u1[i] = r(i, 0);
  const double gap = uniform(rng, -0.6, 0.6) * std::sqrt(v / -d[0]);
  const double cscale = uniform(rng, 0.5, 2.0) * pick_sign(rng);
  pair.h.c = scaled(u1, cscale);
  pair.h.c0 = -cscale * (dot(u1, center) + gap);

  pair.lambda = affine_g ? 0.0
                         : uniform(rng, 0.3, 3.0) * pick_sign(rng);
  const double s = uniform(rng, 0.5, 2.0) * pick_sign(rng);
  pair.g.A = pair.f.A.scaled(pair.lambda);
  pair.g.a = add(scaled(pair.f.a, pair.lambda), scaled(pair.h.c, 0.5 * s));
  pair.g.a0 = pair.lambda * pair.f.a0 + s * pair.h.c0;
  return pair;
}

}  // namespace quadsep::testing
