#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace quadsep {

using Vector = std::vector<double>;

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
double max_abs(const Vector& x);
Vector scaled(const Vector& x, double c);
Vector add(const Vector& x, const Vector& y);
Vector sub(const Vector& x, const Vector& y);

/// Relative/absolute thresholds used by every rank, sign and membership
/// decision in the library.  Both must be strictly positive.
struct Tolerances {
  double tol_rel = 1e-9;
  double tol_abs = 1e-12;

  Tolerances() = default;
  Tolerances(double rel, double abs);
};

/// Dense row-major matrix, possibly with zero rows or columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  Vector operator*(const Vector& x) const;

  double max_abs() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix; entries (i,j) and (j,i) are identical by construction.
/// The 0x0 matrix is a legal value.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  /// Builds from arbitrary square data, averaging (i,j) with (j,i).
  static SymMatrix from_matrix(const Matrix& m);
  static SymMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);
  static SymMatrix diagonal(const Vector& d);

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  Matrix to_matrix() const;
  Vector operator*(const Vector& x) const;
  SymMatrix scaled(double c) const;

  double max_abs() const;
  double frobenius_inner(const SymMatrix& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

SymMatrix add_scaled(double alpha, const SymMatrix& a, double beta,
                     const SymMatrix& b);

/// Spectral factorization M = Q diag(eigenvalues) Q^T with Q orthogonal.
/// Eigenvalues are ascending; column i of `vectors` pairs with eigenvalue i.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix vectors;
};

struct InertiaReport {
  int n_neg = 0;
  int n_zero = 0;
  int n_pos = 0;
};

enum class Definiteness { ZERO, PSD, NSD, INDEFINITE };
const char* to_string(Definiteness d);

/// Cyclic Jacobi eigensolver for dense symmetric matrices.  Throws
/// NumericalError if the off-diagonal norm has not collapsed after the
/// sweep cap (100 sweeps).
EigenDecomposition eig_sym(const SymMatrix& m);

/// Threshold below which an eigenvalue counts as zero:
/// tol_rel * max(1, max_i |lambda_i|) + tol_abs.
double zero_eigen_threshold(const Vector& eigenvalues, const Tolerances& t);

InertiaReport inertia_of(const Vector& eigenvalues, const Tolerances& t);
InertiaReport inertia(const SymMatrix& m, const Tolerances& t);

/// Moore-Penrose pseudoinverse; inverts exactly the eigenvalues that
/// `inertia` does not count as zero.
SymMatrix pinv_sym(const SymMatrix& m, const Tolerances& t);

/// True iff ||v - M M^+ v|| <= tol_rel * max(1, ||v||) + tol_abs.
bool range_contains(const SymMatrix& m, const Vector& v, const Tolerances& t);

/// Orthonormal basis of the hyperplane {x : c^T x = 0} as an n x (n-1)
/// matrix, built from the Householder reflector that maps c/||c|| onto the
/// first coordinate axis.  n == 1 yields the empty 1x0 matrix.
Matrix nullspace_basis_of_covector(const Vector& c, const Tolerances& t);

/// Full n x n Householder reflector for a unit vector u; symmetric,
/// orthogonal, column 0 is -sign(u_0) * u.
Matrix householder_full(const Vector& unit_u);

Definiteness definiteness(const SymMatrix& m, const Tolerances& t);

/// LU with partial pivoting, for the small dense solves behind affine
/// changes of variables.
struct LuDecomposition {
  Matrix lu;
  std::vector<std::size_t> perm;
  double det = 0.0;

  Vector solve(const Vector& b) const;
};

LuDecomposition lu_factor(const Matrix& a);

}  // namespace quadsep
