#pragma once

// Dense spectral layer: real eigenvalues with multiplicities, kernel and
// adjoint-kernel bases, the orthogonal projections onto them, the inverse of
// (A - lambda I) restricted to the complement of its kernel, and the
// positive/negative-part primitives used by the piecewise-linear problem.

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace fucik {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Square matrix with finite entries and n >= 1. Immutable after construction.
class RealMatrix {
 public:
  explicit RealMatrix(Matrix entries);

  static RealMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int n() const { return static_cast<int>(a_.rows()); }
  const Matrix& entries() const { return a_; }
  double operator()(int i, int j) const { return a_(i, j); }

  /// Spectral norm (largest singular value).
  double norm() const { return norm_; }

  bool is_symmetric(double tol = 0.0) const;

 private:
  Matrix a_;
  double norm_ = 0.0;
};

/// Numerical cutoffs. All cutoffs are relative to unit-norm vectors unless
/// noted otherwise.
struct Tolerances {
  double tol_rank = 1e-9;      // relative singular-value cutoff
  double tol_residual = 1e-10; // equation residual bound
  double tol_sign = 1e-8;      // |x| below this counts as a zero component
  double tol_dedup = 1e-6;     // distance under which two solutions merge

  /// Throws ErrorKind::invalid_input unless all fields are positive and
  /// tol_sign >= tol_residual.
  void validate() const;
};

/// One real eigenvalue and the subspaces attached to it.
struct Eigenspace {
  double lambda = 0.0;
  int algebraic_mult = 0;
  int geometric_mult = 0;
  Matrix kernel_basis;          // n x p, orthonormal columns spanning Ker(A - lambda I)
  Matrix adjoint_kernel_basis;  // n x p, orthonormal columns spanning Ker(A^t - lambda I)

  int dimension() const { return static_cast<int>(kernel_basis.cols()); }
};

struct SpectralData {
  std::vector<Eigenspace> eigenvalues;  // ascending in lambda

  /// Entry whose eigenvalue lies within `tol` of `lambda`, if any.
  const Eigenspace* find(double lambda, double tol) const;
};

/// Real spectrum of `a`. Complex eigenvalues are discarded; eigenvalues that
/// split numerically around a defective (Jordan) eigenvalue are merged back
/// into one entry whose algebraic multiplicity is the cluster size.
SpectralData spectral_data(const RealMatrix& a, const Tolerances& tol = {});

/// Kernel and adjoint kernel of (A - lambda I) for the given lambda.
/// Multiplicity fields: geometric from the kernel, algebraic left at the
/// geometric value (use spectral_data for the algebraic count).
/// Throws ErrorKind::not_an_eigenvalue when the kernel is trivial.
Eigenspace eigenspace_at(const RealMatrix& a, double lambda, const Tolerances& tol = {});

/// Orthogonal projection of x onto the span of the orthonormal columns of `basis`.
Vector project_onto(const Matrix& basis, const Vector& x);

/// The x with (A - lambda I) x = y and x orthogonal to Ker(A - lambda I).
/// Throws ErrorKind::out_of_range when y has a component along the adjoint
/// kernel larger than tol_sign * max(1, |y|).
Vector restricted_solve(const RealMatrix& a, double lambda, const Vector& y,
                        const Tolerances& tol = {});

struct PosNegParts {
  Vector plus;
  Vector minus;
};

PosNegParts pos_neg_parts(const Vector& u);

/// Diagonals of the sign matrix Xi(u) (entries -1, 0, +1) and of the
/// zero-characteristic matrix Xi0(u) (entries 0, 1).
struct SignMatrices {
  Vector xi;
  Vector xi0;
};

SignMatrices sign_matrices(const Vector& u, const Tolerances& tol = {});

/// Orthonormal basis of the orthogonal complement of `x` inside R^k (k x (k-1)).
Matrix orthogonal_complement(const Vector& x);

/// Orthonormal basis of the null space of `m` using a relative singular-value
/// cutoff `rel_tol * max(1, sigma_max)`.
Matrix null_space(const Matrix& m, double rel_tol);

}  // namespace fucik
