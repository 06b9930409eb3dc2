#include "quadsep/separation.hpp"

#include <algorithm>
#include <cmath>

#include "quadsep/errors.hpp"

namespace quadsep {

const char* to_string(Branch b) {
  return b == Branch::UNPRIMED ? "UNPRIMED" : "PRIMED";
}

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::B_NOT_MULTIPLE: return "B_NOT_MULTIPLE";
    case FailureReason::LEVEL_SET_CONNECTED: return "LEVEL_SET_CONNECTED";
    case FailureReason::LEVEL_SET_EMPTY: return "LEVEL_SET_EMPTY";
    case FailureReason::REDUCTION_CONSTANT: return "REDUCTION_CONSTANT";
    case FailureReason::CRITERION_FAILED: return "CRITERION_FAILED";
  }
  return "?";
}

namespace {

struct BranchAttempt {
  bool passed = false;
  bool inertia_gate = false;  // one negative eigenvalue and a in range(A)
  bool borderline = false;
  AffineSeparationCertificate cert;
};

/// Runs conditions (a)-(c) against q (f for UNPRIMED, -f for PRIMED):
/// one negative eigenvalue with a in range(A); c in range(A); restricted
/// Hessian V^T A V positive semidefinite, w in its range, and the
/// restricted minimum f(x0) - w^T (V^T A V)^+ w beyond the tolerance band.
BranchAttempt attempt_branch(const QuadraticFunction& q,
                             const AffineFunction& h, const Vector& x0,
                             const Matrix& V, Branch label,
                             const Tolerances& t) {
  BranchAttempt r;
  const InertiaReport in = inertia(q.A, t);
  r.inertia_gate = (in.n_neg == 1) && range_contains(q.A, q.a, t);
  if (!r.inertia_gate) return r;
  if (!range_contains(q.A, h.c, t)) return r;

  const SymMatrix vav =
      SymMatrix::from_matrix(V.transposed() * q.A.to_matrix() * V);
  const Definiteness d = definiteness(vav, t);
  if (d != Definiteness::PSD && d != Definiteness::ZERO) return r;

  const Vector w = V.transposed() * add(q.A * x0, q.a);
  if (!range_contains(vav, w, t)) return r;

  const SymMatrix pinv = pinv_sym(vav, t);
  const double correction = dot(w, pinv * w);
  const double fx0 = evaluate(q, x0);
  const double value = fx0 - correction;
  const double band =
      t.tol_rel * std::max({1.0, std::abs(fx0),
                            dot(w, w) * pinv.max_abs()}) +
      t.tol_abs;
  if (value > band) {
    r.passed = true;
    r.cert = AffineSeparationCertificate{label, x0, V, w, value};
  } else if (value > 0.0) {
    r.borderline = true;
  }
  return r;
}

void attach_level_witnesses(SeparationVerdict& v, const QuadraticFunction& f,
                            const QuadraticFunction* value_source_quadratic,
                            const AffineFunction* value_source_affine,
                            const Tolerances& t) {
  const ComponentReport cr = components_level(f, t);
  if (cr.count != 2 || cr.witnesses.size() != 2)
    throw InternalError(
        "separation certificate accepted but {f=0} is not two-sheeted");
  auto value_at = [&](const Vector& x) {
    return value_source_quadratic ? evaluate(*value_source_quadratic, x)
                                  : evaluate(*value_source_affine, x);
  };
  WitnessValue minus{cr.witnesses[0].point, value_at(cr.witnesses[0].point)};
  WitnessValue plus{cr.witnesses[1].point, value_at(cr.witnesses[1].point)};
  if (cr.witnesses[0].side != Side::MINUS) std::swap(minus, plus);
  if (!(minus.g_value * plus.g_value < 0.0))
    throw InternalError(
        "separation certificate accepted but the separator does not change "
        "sign across the sheets");
  v.witnesses = std::make_pair(minus, plus);
}

}  // namespace

SeparationVerdict separates_affine_level(const AffineFunction& h,
                                         const QuadraticFunction& f,
                                         const Tolerances& t) {
  if (h.c.size() != f.dim())
    throw InputError("separator dimension mismatch");
  if (norm2(h.c) <= t.tol_abs)
    throw InputError("separator must be a non-constant affine function");
  if (is_constant(f, t))
    throw InputError("separation target must be non-constant");

  const Vector x0 = scaled(h.c, -h.c0 / dot(h.c, h.c));
  const Matrix V = nullspace_basis_of_covector(h.c, t);

  SeparationVerdict v;
  BranchAttempt un = attempt_branch(f, h, x0, V, Branch::UNPRIMED, t);
  BranchAttempt pr;
  if (un.passed) {
    v.separated = true;
    v.certificate = un.cert;
  } else {
    pr = attempt_branch(f.negated(), h, x0, V, Branch::PRIMED, t);
    if (pr.passed) {
      // Report w for f itself; the attempt computed V^T(-A x0 - a) = -w.
      pr.cert.w = scaled(pr.cert.w, -1.0);
      v.separated = true;
      v.certificate = pr.cert;
    }
  }

  if (v.separated) {
    attach_level_witnesses(v, f, nullptr, &h, t);
    return v;
  }

  v.borderline = un.borderline || pr.borderline;
  if (!un.inertia_gate && !pr.inertia_gate) {
    const ComponentReport cr = components_level(f, t);
    v.failure = (cr.count == 0) ? FailureReason::LEVEL_SET_EMPTY
                                : FailureReason::LEVEL_SET_CONNECTED;
  } else {
    v.failure = FailureReason::CRITERION_FAILED;
  }
  return v;
}

SeparationVerdict separates_level(const QuadraticFunction& g,
                                  const QuadraticFunction& f,
                                  const Tolerances& t) {
  if (f.dim() != g.dim()) throw InputError("separation dimension mismatch");
  if (is_constant(f, t) || is_constant(g, t))
    throw InputError("separation requires non-constant functions");

  const auto lambda = multiple_of(g.A, f.A, t);
  if (!lambda) {
    SeparationVerdict v;
    v.failure = FailureReason::B_NOT_MULTIPLE;
    return v;
  }

  const QuadraticFunction hq = linear_combination(-*lambda, f, 1.0, g);
  const AffineFunction h{scaled(hq.a, 2.0), hq.a0};
  const double c_threshold =
      t.tol_rel * std::max({1.0, g.coefficient_scale(),
                            std::abs(*lambda) * f.coefficient_scale()}) +
      t.tol_abs;
  if (max_abs(h.c) <= c_threshold) {
    SeparationVerdict v;
    v.lambda = lambda;
    v.failure = FailureReason::REDUCTION_CONSTANT;
    return v;
  }

  SeparationVerdict v = separates_affine_level(h, f, t);
  v.lambda = lambda;
  v.reduction = h;
  if (v.separated) {
    // Re-evaluate the witnesses under g itself so the verdict is checkable
    // without knowledge of lambda; on {f=0}, g and h agree.
    attach_level_witnesses(v, f, &g, nullptr, t);
  }
  return v;
}

MutualReport check_mutual(const QuadraticFunction& f,
                          const QuadraticFunction& g, const Tolerances& t) {
  MutualReport rep;
  rep.g_separates_f = separates_level(g, f, t);
  rep.f_separates_g = separates_level(f, g, t);

  const bool g_quadratic = g.A.max_abs() > t.tol_abs;
  const bool f_quadratic = f.A.max_abs() > t.tol_abs;
  rep.backward_applicable = g_quadratic;

  if (rep.g_separates_f.separated && g_quadratic &&
      !rep.f_separates_g.separated)
    throw InternalError(
        "mutual separation law violated: {g=0} separates {f=0} but not "
        "conversely");
  if (rep.f_separates_g.separated && f_quadratic &&
      !rep.g_separates_f.separated)
    throw InternalError(
        "mutual separation law violated: {f=0} separates {g=0} but not "
        "conversely");
  return rep;
}

SeparationVerdict combined_separation(double alpha, double beta, double gamma,
                                      double delta, const QuadraticFunction& f,
                                      const QuadraticFunction& g,
                                      const Tolerances& t) {
  const double det = alpha * delta - beta * gamma;
  const double bound =
      t.tol_rel * std::max({1.0, std::abs(alpha * delta),
                            std::abs(beta * gamma)}) +
      t.tol_abs;
  if (std::abs(det) <= bound)
    throw InputError("combination coefficients are singular");
  return separates_level(linear_combination(gamma, f, delta, g),
                         linear_combination(alpha, f, beta, g), t);
}

}  // namespace quadsep
