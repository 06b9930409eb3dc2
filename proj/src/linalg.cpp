#include "quadsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quadsep/errors.hpp"

namespace quadsep {

double dot(const Vector& x, const Vector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

double max_abs(const Vector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

Vector scaled(const Vector& x, double c) {
  Vector r = x;
  for (double& v : r) v *= c;
  return r;
}

Vector add(const Vector& x, const Vector& y) {
  Vector r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vector sub(const Vector& x, const Vector& y) {
  Vector r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Tolerances::Tolerances(double rel, double abs) : tol_rel(rel), tol_abs(abs) {
  if (!(rel > 0.0) || !(abs > 0.0))
    throw InputError("tolerances must be strictly positive");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix product dimension mismatch");
  Matrix r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double v = (*this)(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += v * rhs(k, j);
    }
  return r;
}

Vector Matrix::operator*(const Vector& x) const {
  if (cols_ != x.size()) throw InputError("matrix-vector dimension mismatch");
  Vector r(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols())
    throw InputError("symmetric matrix requires square data");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

SymMatrix SymMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size())
      throw InputError("symmetric matrix requires square data");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return from_matrix(m);
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

Matrix SymMatrix::to_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

Vector SymMatrix::operator*(const Vector& x) const {
  if (n_ != x.size()) throw InputError("matrix-vector dimension mismatch");
  Vector r(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

SymMatrix SymMatrix::scaled(double c) const {
  SymMatrix r = *this;
  for (double& v : r.data_) v *= c;
  return r;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius_inner(const SymMatrix& other) const {
  double s = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) s += data_[i] * other.data_[i];
  return s;
}

SymMatrix add_scaled(double alpha, const SymMatrix& a, double beta,
                     const SymMatrix& b) {
  if (a.size() != b.size()) throw InputError("matrix sum dimension mismatch");
  SymMatrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      r.set(i, j, alpha * a(i, j) + beta * b(i, j));
  return r;
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::ZERO: return "ZERO";
    case Definiteness::PSD: return "PSD";
    case Definiteness::NSD: return "NSD";
    case Definiteness::INDEFINITE: return "INDEFINITE";
  }
  return "?";
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_sym(const SymMatrix& m) {
  const std::size_t n = m.size();
  Matrix a = m.to_matrix();
  Matrix q = Matrix::identity(n);

  constexpr int kMaxSweeps = 100;
  const double frob = a.frobenius_norm();
  const double target = 1e-14 * frob;

  if (n > 1 && frob > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
      if (off_diagonal_norm(a) <= target) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t r = p + 1; r < n; ++r) {
          const double apq = a(p, r);
          if (apq == 0.0) continue;
          const double theta = (a(r, r) - a(p, p)) / (2.0 * apq);
          const double t = (theta >= 0.0)
                               ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                               : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          const double h = t * apq;
          a(p, p) -= h;
          a(r, r) += h;
          a(p, r) = 0.0;
          a(r, p) = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            if (i != p && i != r) {
              const double aip = a(i, p);
              const double air = a(i, r);
              a(i, p) = aip - s * (air + tau * aip);
              a(p, i) = a(i, p);
              a(i, r) = air + s * (aip - tau * air);
              a(r, i) = a(i, r);
            }
            const double qip = q(i, p);
            const double qir = q(i, r);
            q(i, p) = qip - s * (qir + tau * qip);
            q(i, r) = qir + s * (qip - tau * qir);
          }
        }
      }
    }
    if (!converged && off_diagonal_norm(a) > target) {
      throw NumericalError("jacobi eigensolver did not converge",
                           off_diagonal_norm(a));
    }
  }

  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition d;
  d.eigenvalues.resize(n);
  d.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    d.eigenvalues[j] = a(idx[j], idx[j]);
    for (std::size_t i = 0; i < n; ++i) d.vectors(i, j) = q(i, idx[j]);
  }
  return d;
}

double zero_eigen_threshold(const Vector& eigenvalues, const Tolerances& t) {
  double radius = 0.0;
  for (double v : eigenvalues) radius = std::max(radius, std::abs(v));
  return t.tol_rel * std::max(1.0, radius) + t.tol_abs;
}

InertiaReport inertia_of(const Vector& eigenvalues, const Tolerances& t) {
  const double thr = zero_eigen_threshold(eigenvalues, t);
  InertiaReport r;
  for (double v : eigenvalues) {
    if (std::abs(v) <= thr)
      ++r.n_zero;
    else if (v < 0.0)
      ++r.n_neg;
    else
      ++r.n_pos;
  }
  return r;
}

InertiaReport inertia(const SymMatrix& m, const Tolerances& t) {
  return inertia_of(eig_sym(m).eigenvalues, t);
}

SymMatrix pinv_sym(const SymMatrix& m, const Tolerances& t) {
  const EigenDecomposition d = eig_sym(m);
  const double thr = zero_eigen_threshold(d.eigenvalues, t);
  const std::size_t n = m.size();
  Matrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lam = d.eigenvalues[j];
    if (std::abs(lam) <= thr) continue;
    const double inv = 1.0 / lam;
    for (std::size_t r = 0; r < n; ++r) {
      const double qrj = d.vectors(r, j) * inv;
      if (qrj == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) p(r, c) += qrj * d.vectors(c, j);
    }
  }
  return SymMatrix::from_matrix(p);
}

bool range_contains(const SymMatrix& m, const Vector& v, const Tolerances& t) {
  if (m.size() != v.size())
    throw InputError("range membership dimension mismatch");
  const SymMatrix p = pinv_sym(m, t);
  const Vector residual = sub(v, m * (p * v));
  return norm2(residual) <= t.tol_rel * std::max(1.0, norm2(v)) + t.tol_abs;
}

Matrix householder_full(const Vector& unit_u) {
  const std::size_t n = unit_u.size();
  Vector w = unit_u;
  w[0] += (unit_u[0] >= 0.0) ? 1.0 : -1.0;
  const double wtw = dot(w, w);
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = ((i == j) ? 1.0 : 0.0) - 2.0 * w[i] * w[j] / wtw;
  }
  return h;
}

Matrix nullspace_basis_of_covector(const Vector& c, const Tolerances& t) {
  const std::size_t n = c.size();
  const double nrm = norm2(c);
  if (nrm <= t.tol_abs)
    throw InputError("covector is numerically zero");
  if (n == 1) return Matrix(1, 0);

  const Matrix h = householder_full(scaled(c, 1.0 / nrm));
  Matrix basis(n, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) basis(i, j - 1) = h(i, j);
  return basis;
}

Definiteness definiteness(const SymMatrix& m, const Tolerances& t) {
  const InertiaReport r = inertia(m, t);
  if (r.n_neg == 0 && r.n_pos == 0) return Definiteness::ZERO;
  if (r.n_neg == 0) return Definiteness::PSD;
  if (r.n_pos == 0) return Definiteness::NSD;
  return Definiteness::INDEFINITE;
}

LuDecomposition lu_factor(const Matrix& a) {
  if (a.rows() != a.cols()) throw InputError("lu requires a square matrix");
  const std::size_t n = a.rows();
  LuDecomposition f;
  f.lu = a;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), 0);
  f.det = 1.0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.det = -f.det;
    }
    const double d = f.lu(k, k);
    f.det *= d;
    if (d == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = f.lu(i, k) / d;
      f.lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= factor * f.lu(k, j);
    }
  }
  return f;
}

Vector LuDecomposition::solve(const Vector& b) const {
  const std::size_t n = lu.rows();
  if (b.size() != n) throw InputError("lu solve dimension mismatch");
  if (det == 0.0) throw NumericalError("singular matrix in lu solve", 0.0);
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

}  // namespace quadsep
