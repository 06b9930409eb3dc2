#pragma once

#include <cstddef>
#include <optional>

#include "quadsep/linalg.hpp"

namespace quadsep {

/// x |-> x^T A x + 2 a^T x + a0.  Note the factor 2 on the linear term.
struct QuadraticFunction {
  SymMatrix A;
  Vector a;
  double a0 = 0.0;

  std::size_t dim() const { return a.size(); }
  QuadraticFunction negated() const;

  /// max(|A|_max, |a|_inf, |a0|); the scale every tolerance is relative to.
  double coefficient_scale() const;
};

double evaluate(const QuadraticFunction& q, const Vector& x);

/// h(x) = c^T x + c0.
struct AffineFunction {
  Vector c;
  double c0 = 0.0;
};

double evaluate(const AffineFunction& h, const Vector& x);

/// Invertible substitution z = S x + s together with a positive scale mu
/// applied to the function value: canonical(z) = mu * f(S^{-1}(z - s)).
struct AffineChange {
  Matrix S;
  Vector s;
  double mu = 1.0;

  Vector to_canonical(const Vector& x) const;
  Vector from_canonical(const Vector& z) const;
};

/// The five normal shapes a non-constant quadratic reduces to under an
/// invertible affine substitution and positive function scaling:
///   F1: -z_1^2-...-z_k^2 + delta(z_{k+1}^2+...+z_m^2) + theta
///   F2: -z_1^2-...-z_k^2 + delta(z_{k+1}^2+...+z_m^2) - 1
///   F3: -z_1^2-...-z_k^2 + delta(z_{k+1}^2+...+z_m^2) + z_{m+1}
///   F4:  z_1^2+...+z_m^2 + delta z_{m+1} + c'
///   F5:  delta z_1 + c'                       (delta = 1)
/// with delta, theta in {0, 1} and k >= 1 for F1-F3.
enum class FormId { F1, F2, F3, F4, F5 };
const char* to_string(FormId id);

struct CanonicalForm {
  FormId form_id = FormId::F1;
  int k = 0;          // number of -1 squares
  int m = 0;          // index of the last square term
  int delta = 0;
  int theta = 0;      // F1 only
  double cprime = 0;  // F4/F5 only
  AffineChange change;
  std::size_t dim = 0;

  /// The canonical expression evaluated at a point in canonical coordinates.
  double evaluate(const Vector& z) const;
};

/// tol_rel * max(1, coefficient scale) + tol_abs; the band inside which the
/// critical constant counts as zero.
double constant_threshold(const QuadraticFunction& q, const Tolerances& t);

bool is_constant(const QuadraticFunction& q, const Tolerances& t);

/// Present iff the quadratic part vanishes under tolerance; c = 2a.
std::optional<AffineFunction> is_affine(const QuadraticFunction& q,
                                        const Tolerances& t);

/// Value of f on its stationary set, a0 - a^T A^+ a, present iff a lies in
/// the range of A.
std::optional<double> critical_value(const QuadraticFunction& q,
                                     const Tolerances& t);

CanonicalForm canonical_form(const QuadraticFunction& q, const Tolerances& t);

/// alpha * f + beta * g, componentwise.
QuadraticFunction linear_combination(double alpha, const QuadraticFunction& f,
                                     double beta, const QuadraticFunction& g);

/// The scalar lambda with B = lambda A, when one exists.  Uses the Frobenius
/// projection <A,B>/<A,A> and a max-norm residual test.
std::optional<double> multiple_of(const SymMatrix& B, const SymMatrix& A,
                                  const Tolerances& t);

}  // namespace quadsep
