#pragma once

#include "lowrank/matrix.hpp"

#include <span>
#include <vector>

namespace lowrank {

/// d_r(A, A^*) = rank(A - A^*) / n.
Fraction selfadjoint_defect(const ComplexMatrix& a, double tol = kDefaultTol);

/// (A + A^*) / 2; rank(A - S) = rank(A - A^*).
ComplexMatrix nearest_selfadjoint(const ComplexMatrix& a);

/// d_r(A^* A, E).
Fraction unitary_defect(const ComplexMatrix& a, double tol = kDefaultTol);

struct NearestUnitary {
  ComplexMatrix u;
  /// dim of the subspace where A^* A = E (within the band).
  int isometric_dim = 0;
  /// rank(A^* A - E) at the same band.
  int defect_rank = 0;
  /// arithmetic_distance(A, U).
  int rank = 0;
  /// max |Y^* Y - E| for Y = A restricted to the isometric subspace.
  double isometry_residual = 0.0;
  /// max |U^* U - E|.
  double unitarity_residual = 0.0;
};

/// Unitary U that agrees with A on X = {A^* A = E} (eigenvalues of A^* A
/// within tol * max(1, |A|^2) of 1) and sends an orthonormal basis of X-perp
/// to one of (A X)-perp in index order, so rank(A - U) <= rank(A^* A - E).
/// Throws IsometryCheckFailed when A is not an isometry on X within 10 times
/// the band.
NearestUnitary nearest_unitary_rank(const ComplexMatrix& a, double tol = kDefaultTol);

struct CauchyDeterminant {
  /// log|det| and arg(det); log_abs is -inf for a singular matrix.
  double log_abs = 0.0;
  double arg = 0.0;
  /// Same quantities from 50-digit Gaussian elimination.
  double elim_log_abs = 0.0;
  double elim_arg = 0.0;
  /// |det_elim / det_formula - 1|, or 0 when both vanish.
  double relative_disagreement = 0.0;
  bool nonsingular = false;

  /// det as a number; may over- or underflow for large n.
  Complex value() const;
};

/// det [1 / (a_i - b_j)] = prod_{i<j} (a_j - a_i)(b_i - b_j) / prod_{i,j} (a_i - b_j),
/// cross-checked against elimination. Throws NodeCollision if some a_i = b_j,
/// DimensionMismatch if the lengths differ.
CauchyDeterminant cauchy_nonsingular(std::span<const Complex> a, std::span<const Complex> b);

/// Solution of sum_j x_j / (a_i - b_j) = r_i from the partial-fraction
/// (Lagrange interpolation) form of the inverse. Throws NodeCollision,
/// DuplicateNode.
ComplexVector cauchy_solve(std::span<const Complex> a, std::span<const Complex> b,
                           const ComplexVector& rhs);

struct WitnessCertificate {
  /// 1-based row and column indices of the Cauchy submatrix of X - B.
  std::vector<int> rows;
  std::vector<int> cols;
  CauchyDeterminant determinant;
  /// rank(X - B) >= lower_bound for every diagonal B.
  int lower_bound = 0;
};

struct CommutingWitness {
  ComplexVector lambdas;
  ComplexMatrix x;
  int commutator_rank = 0;
  /// d_r(AX, XA) for A = diag(lambda).
  Fraction commutator_distance;
  /// max |(AX - XA)_ij - c_ij|.
  double checkerboard_residual = 0.0;
  WitnessCertificate certificate;
};

/// x_ij = c_ij / (lambda_i - lambda_j) with c_ij = (i + j) mod 2 (1-based),
/// zero diagonal. Keeping the odd rows and even columns of X - B leaves the
/// Cauchy matrix 1 / (lambda_{2i-1} - lambda_{2j}) whatever the diagonal B.
/// Throws TooSmall (n < 4), DuplicateEigenvalue, CertificateFailed.
CommutingWitness checkerboard_witness(std::span<const Complex> lambdas, double tol = kDefaultTol);

}  // namespace lowrank
