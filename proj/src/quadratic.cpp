#include "quadsep/quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "quadsep/errors.hpp"

namespace quadsep {

QuadraticFunction QuadraticFunction::negated() const {
  return {A.scaled(-1.0), quadsep::scaled(a, -1.0), -a0};
}

double QuadraticFunction::coefficient_scale() const {
  return std::max({A.max_abs(), quadsep::max_abs(a), std::abs(a0)});
}

double evaluate(const QuadraticFunction& q, const Vector& x) {
  if (x.size() != q.dim() || q.A.size() != q.dim())
    throw InputError("evaluation point dimension mismatch");
  return dot(x, q.A * x) + 2.0 * dot(q.a, x) + q.a0;
}

double evaluate(const AffineFunction& h, const Vector& x) {
  if (x.size() != h.c.size())
    throw InputError("evaluation point dimension mismatch");
  return dot(h.c, x) + h.c0;
}

Vector AffineChange::to_canonical(const Vector& x) const {
  return add(S * x, s);
}

Vector AffineChange::from_canonical(const Vector& z) const {
  return lu_factor(S).solve(sub(z, s));
}

const char* to_string(FormId id) {
  switch (id) {
    case FormId::F1: return "F1";
    case FormId::F2: return "F2";
    case FormId::F3: return "F3";
    case FormId::F4: return "F4";
    case FormId::F5: return "F5";
  }
  return "?";
}

double CanonicalForm::evaluate(const Vector& z) const {
  if (z.size() != dim) throw InputError("canonical point dimension mismatch");
  double v = 0.0;
  switch (form_id) {
    case FormId::F1:
    case FormId::F2:
    case FormId::F3:
      for (int i = 0; i < k; ++i) v -= z[i] * z[i];
      for (int i = k; i < m; ++i) v += z[i] * z[i];
      if (form_id == FormId::F1) v += theta;
      if (form_id == FormId::F2) v -= 1.0;
      if (form_id == FormId::F3) v += z[m];
      return v;
    case FormId::F4:
      for (int i = 0; i < m; ++i) v += z[i] * z[i];
      if (delta) v += z[m];
      return v + cprime;
    case FormId::F5:
      return z[0] + cprime;
  }
  return v;
}

double constant_threshold(const QuadraticFunction& q, const Tolerances& t) {
  return t.tol_rel * std::max(1.0, q.coefficient_scale()) + t.tol_abs;
}

bool is_constant(const QuadraticFunction& q, const Tolerances& t) {
  const double thr = constant_threshold(q, t);
  return q.A.max_abs() <= thr && max_abs(q.a) <= thr;
}

std::optional<AffineFunction> is_affine(const QuadraticFunction& q,
                                        const Tolerances& t) {
  if (q.A.max_abs() > constant_threshold(q, t)) return std::nullopt;
  return AffineFunction{scaled(q.a, 2.0), q.a0};
}

namespace {

/// The eigen view every classification shares: eigenpairs of A reordered to
/// [negatives asc | positives asc | zeros], the rotated linear coefficients,
/// and the critical constant gamma0 = a0 - sum over nonzero directions of
/// abar_i^2 / lambda_i (summed in the reordered sequence, so that every
/// caller sees bit-identical values).
struct SpectralSplit {
  EigenDecomposition eig;
  std::vector<std::size_t> order;
  int k = 0;
  int npos = 0;
  Vector abar;      // Q^T a, in original eigen order
  double gamma0 = 0.0;
  bool a_in_range = false;
};

SpectralSplit split_quadratic(const QuadraticFunction& q, const Tolerances& t) {
  SpectralSplit sp;
  sp.eig = eig_sym(q.A);
  const Vector& ev = sp.eig.eigenvalues;
  const double thr = zero_eigen_threshold(ev, t);

  std::vector<std::size_t> neg, pos, zer;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= thr)
      zer.push_back(i);
    else if (ev[i] < 0.0)
      neg.push_back(i);
    else
      pos.push_back(i);
  }
  sp.order = neg;
  sp.order.insert(sp.order.end(), pos.begin(), pos.end());
  sp.order.insert(sp.order.end(), zer.begin(), zer.end());
  sp.k = static_cast<int>(neg.size());
  sp.npos = static_cast<int>(pos.size());

  sp.abar = sp.eig.vectors.transposed() * q.a;

  sp.gamma0 = q.a0;
  for (int r = 0; r < sp.k + sp.npos; ++r) {
    const std::size_t i = sp.order[r];
    sp.gamma0 -= sp.abar[i] * sp.abar[i] / ev[i];
  }

  // With no zero eigenvalues the range is all of R^n; skipping the residual
  // test avoids a false negative on ill-conditioned full-rank matrices.
  sp.a_in_range = zer.empty() || range_contains(q.A, q.a, t);
  return sp;
}

}  // namespace

std::optional<double> critical_value(const QuadraticFunction& q,
                                     const Tolerances& t) {
  const SpectralSplit sp = split_quadratic(q, t);
  if (!sp.a_in_range) return std::nullopt;
  return sp.gamma0;
}

CanonicalForm canonical_form(const QuadraticFunction& q, const Tolerances& t) {
  if (is_constant(q, t))
    throw InputError("constant function has no canonical form");

  const std::size_t n = q.dim();
  const SpectralSplit sp = split_quadratic(q, t);
  const int m = sp.k + sp.npos;
  const int nzero = static_cast<int>(n) - m;
  const bool has_linear = !sp.a_in_range;
  const double gamma = sp.gamma0;

  CanonicalForm cf;
  cf.dim = n;
  cf.k = sp.k;
  cf.m = m;

  double mu = 1.0;
  if (sp.k > 0) {
    cf.delta = sp.npos > 0 ? 1 : 0;
    if (has_linear) {
      cf.form_id = FormId::F3;
    } else {
      const double cth = constant_threshold(q, t);
      if (gamma > cth) {
        cf.form_id = FormId::F1;
        cf.theta = 1;
        mu = 1.0 / gamma;
      } else if (gamma < -cth) {
        cf.form_id = FormId::F2;
        mu = -1.0 / gamma;
      } else {
        cf.form_id = FormId::F1;
        cf.theta = 0;
      }
    }
  } else if (m > 0) {
    cf.form_id = FormId::F4;
    cf.delta = has_linear ? 1 : 0;
    cf.cprime = gamma;
  } else {
    // Quadratic part numerically zero; non-constant means the linear part
    // survives, so the residual-rotation below produces delta = 1.
    cf.form_id = FormId::F5;
    cf.delta = 1;
    cf.cprime = gamma;
  }

  // Rows of S start as the reordered rows of Q^T (i.e. eigvec columns).
  Matrix S(n, n);
  Vector offset(n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t cidx = 0; cidx < n; ++cidx)
      S(r, cidx) = sp.eig.vectors(cidx, sp.order[r]);

  // Squares: z_r = sqrt(mu |lambda|) (y_r + abar/lambda).
  for (int r = 0; r < m; ++r) {
    const std::size_t i = sp.order[r];
    const double lam = sp.eig.eigenvalues[i];
    const double scale = std::sqrt(mu * std::abs(lam));
    for (std::size_t cidx = 0; cidx < n; ++cidx) S(r, cidx) *= scale;
    offset[r] = scale * (sp.abar[i] / lam);
  }

  if (has_linear && nzero > 0) {
    // Rotate the kernel block so the surviving linear term rides on a single
    // coordinate, then scale that coordinate to coefficient one.
    Vector nu(nzero);
    for (int j = 0; j < nzero; ++j) nu[j] = sp.abar[sp.order[m + j]];
    const double nu_norm = norm2(nu);
    if (nu_norm == 0.0)
      throw InternalError("range test negative but kernel residual vanished");
    const double rho = 2.0 * nu_norm;
    const Vector u = scaled(nu, 1.0 / nu_norm);

    Matrix rotated(nzero, n);
    if (nzero == 1) {
      for (std::size_t cidx = 0; cidx < n; ++cidx)
        rotated(0, cidx) = u[0] * S(m, cidx);
    } else {
      const Matrix h = householder_full(u);
      // Row 0 of the rotation is u^T; rows 1.. are rows of the reflector.
      for (std::size_t cidx = 0; cidx < n; ++cidx) {
        double acc = 0.0;
        for (int j = 0; j < nzero; ++j) acc += u[j] * S(m + j, cidx);
        rotated(0, cidx) = acc;
      }
      for (int rr = 1; rr < nzero; ++rr)
        for (std::size_t cidx = 0; cidx < n; ++cidx) {
          double acc = 0.0;
          for (int j = 0; j < nzero; ++j) acc += h(rr, j) * S(m + j, cidx);
          rotated(rr, cidx) = acc;
        }
    }
    for (int rr = 0; rr < nzero; ++rr)
      for (std::size_t cidx = 0; cidx < n; ++cidx)
        S(m + rr, cidx) = rotated(rr, cidx);

    // mu is 1 on every path with a surviving linear term.
    for (std::size_t cidx = 0; cidx < n; ++cidx) S(m, cidx) *= rho;
    if (cf.form_id == FormId::F3) offset[m] = gamma;  // F3 has no constant
  }

  cf.change = AffineChange{std::move(S), std::move(offset), mu};
  return cf;
}

QuadraticFunction linear_combination(double alpha, const QuadraticFunction& f,
                                     double beta, const QuadraticFunction& g) {
  if (f.dim() != g.dim())
    throw InputError("linear combination dimension mismatch");
  QuadraticFunction r;
  r.A = add_scaled(alpha, f.A, beta, g.A);
  r.a.resize(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i)
    r.a[i] = alpha * f.a[i] + beta * g.a[i];
  r.a0 = alpha * f.a0 + beta * g.a0;
  return r;
}

std::optional<double> multiple_of(const SymMatrix& B, const SymMatrix& A,
                                  const Tolerances& t) {
  if (B.size() != A.size())
    throw InputError("multiple test dimension mismatch");
  if (A.max_abs() <= t.tol_abs) {
    if (B.max_abs() <= t.tol_abs) return 0.0;
    return std::nullopt;
  }
  const double lambda = A.frobenius_inner(B) / A.frobenius_inner(A);
  const double residual = add_scaled(1.0, B, -lambda, A).max_abs();
  const double bound =
      t.tol_rel * std::max({1.0, B.max_abs(), A.max_abs()});
  if (residual <= bound) return lambda;
  return std::nullopt;
}

}  // namespace quadsep
