#pragma once

#include <optional>
#include <utility>

#include "quadsep/connectivity.hpp"
#include "quadsep/quadratic.hpp"

namespace quadsep {

/// UNPRIMED certifies the restriction of f to the hyperplane is positive;
/// PRIMED certifies the same for -f.
enum class Branch { UNPRIMED, PRIMED };
const char* to_string(Branch b);

enum class FailureReason {
  B_NOT_MULTIPLE,
  LEVEL_SET_CONNECTED,
  LEVEL_SET_EMPTY,
  REDUCTION_CONSTANT,
  CRITERION_FAILED,
};
const char* to_string(FailureReason r);

/// Machine-checkable evidence that {h=0} misses {f=0} entirely: the foot
/// point x0 = -c0 c / (c^T c), an orthonormal basis V of the hyperplane
/// direction space, w = V^T (A x0 + a), and the margin
/// min over {h=0} of f = f(x0) - w^T (V^T A V)^+ w (of -f on PRIMED).
struct AffineSeparationCertificate {
  Branch branch = Branch::UNPRIMED;
  Vector x0;
  Matrix V;
  Vector w;
  double margin = 0.0;
};

struct WitnessValue {
  Vector point;
  double g_value = 0.0;
};

struct SeparationVerdict {
  bool separated = false;
  std::optional<double> lambda;              // the B = lambda A multiplier
  std::optional<AffineFunction> reduction;   // h = g - lambda f
  std::optional<AffineSeparationCertificate> certificate;
  /// (u_minus, u_plus): one point per sheet of {f=0}, with the separator's
  /// value recorded; the two values have strictly opposite signs.
  std::optional<std::pair<WitnessValue, WitnessValue>> witnesses;
  std::optional<FailureReason> failure;
  /// Margin landed inside the tolerance band: too close to zero to accept.
  bool borderline = false;
};

/// Does the hyperplane {h=0} separate {f=0}?
SeparationVerdict separates_affine_level(const AffineFunction& h,
                                         const QuadraticFunction& f,
                                         const Tolerances& t);

/// Does {g=0} separate {f=0}?  Reduces to the affine case through the
/// multiplier lambda with B = lambda A and h = g - lambda f.
SeparationVerdict separates_level(const QuadraticFunction& g,
                                  const QuadraticFunction& f,
                                  const Tolerances& t);

struct MutualReport {
  SeparationVerdict g_separates_f;
  SeparationVerdict f_separates_g;
  /// False when g is affine: a hyperplane is connected and cannot be
  /// separated, so the converse direction is not applicable.
  bool backward_applicable = true;
};

/// Both directions.  Throws InternalError if one direction separates, both
/// functions have a genuine quadratic part, and the converse fails.
MutualReport check_mutual(const QuadraticFunction& f,
                          const QuadraticFunction& g, const Tolerances& t);

/// Does {gamma f + delta g = 0} separate {alpha f + beta g = 0}?
/// Requires alpha*delta - beta*gamma != 0.
SeparationVerdict combined_separation(double alpha, double beta, double gamma,
                                      double delta, const QuadraticFunction& f,
                                      const QuadraticFunction& g,
                                      const Tolerances& t);

}  // namespace quadsep
