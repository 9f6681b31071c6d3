#pragma once

#include "lowrank/matrix.hpp"
#include "lowrank/multiset.hpp"

#include <span>
#include <vector>

namespace lowrank {

/// Coefficients of P_B = P_A - sum_alpha x_alpha P_{A \ alpha}, where P_S is
/// the monic polynomial with roots S.
struct InterpolationCoeffs {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> x;  // x[i] belongs to alphas[i]
  /// max coefficient error of the identity, relative to the largest
  /// coefficient of P_B.
  double residual = 0.0;
};

/// x_alpha = -P_B(alpha) / P_{A \ alpha}(alpha). Throws DuplicateNode unless
/// all 2n values are distinct, DimensionMismatch unless |A| = |B|.
InterpolationCoeffs interpolation_coeffs(std::span<const double> alphas,
                                         std::span<const double> betas);

enum class SignPattern { Positive, Negative, Mixed };

const char* sign_pattern_name(SignPattern s);

/// Strict sign classification of the coefficients. Throws ZeroCoefficient.
SignPattern sign_uniform(const InterpolationCoeffs& c);

/// Unitary X with diag(alpha) X - X diag(beta) = y z^T, so that
/// B = X diag(beta) X^* has spectrum beta and diag(alpha) - B = R X^* has
/// rank one.
struct Rank1Update {
  std::vector<double> alphas;
  std::vector<double> betas;
  RealVector y;
  RealVector z;
  int c = 1;
  ComplexMatrix x;
  ComplexMatrix b;
  ComplexMatrix r;
  /// max |X^* X - E|
  double unitarity_residual = 0.0;
};

/// Requires strictly alternating, disjoint, equal-size sorted inputs (throws
/// NotInterlacing, also when two nodes are closer than 1e-10 of the scale).
/// |y_i|^2 = c P_B(alpha_i) / P_{A \ alpha_i}(alpha_i) with the sign c that
/// makes these positive, |z_j|^2 = (sum_i |y_i|^2 / (alpha_i - beta_j)^2)^{-1},
/// x_ij = y_i z_j / (alpha_i - beta_j). Throws NumericalLossOfUnitarity when
/// |X^* X - E| exceeds 1e-7.
Rank1Update hermitian_rank1_update(std::span<const double> alphas, std::span<const double> betas);

/// A curve together with a Moebius map carrying it onto the real line.
struct CurveSpec {
  Curve curve;
  MobiusMap map;
};

/// Picks the pole on the curve as far as possible from `support`: the
/// midpoint of the widest angular gap on a circle, the point at infinity
/// (an affine map) on a line.
CurveSpec make_curve_spec(const Curve& curve, std::span<const Complex> support);

struct AssignOptions {
  double tol = kDefaultTol;
  /// Identification tolerance for eigenvalues and targets, relative to the
  /// problem scale.
  double merge_rel_tol = 1e-8;
};

struct AssignCertificate {
  /// tilde-dc between sp(A) and the target along the curve.
  int dc = 0;
  /// arithmetic_distance(A, B).
  int rank = 0;
  int steps = 0;
  /// Worst |X^* X - E| over the rank-one steps.
  double unitarity_residual = 0.0;
  /// Largest deviation of sp(B) from the target, matched along the curve.
  double spectrum_error = 0.0;
  /// sigma_{rank+1}(A - B) / sigma_1(A - B); 0 if there is none.
  double rank_gap = 0.0;
};

struct AssignResult {
  ComplexMatrix matrix;
  AssignCertificate cert;
};

/// Hermitian B with sp(B) = target and rank(A - B) = dc(sp(A), target): strip
/// the common part, walk the multiset geodesic on the real line, and realize
/// each step by a rank-one update in the current eigenbasis. Throws
/// NotHermitian, TargetNotReal, DimensionMismatch.
AssignResult hermitian_assign_spectrum(const ComplexMatrix& a, const ComplexMultiset& target,
                                       const AssignOptions& opts = {});

/// Normal A with spectrum on a line or circle: carry A and the target to the
/// real line with a Moebius map, assign there, and map the perturbation back.
/// Throws NotNormal, NotOnCurve, PoleOnSpectrum.
AssignResult normal_on_curve_assign_spectrum(const ComplexMatrix& a, const ComplexMultiset& target,
                                             const Curve& curve, const AssignOptions& opts = {});

/// Unitary U and a target on the unit circle.
AssignResult unitary_assign_spectrum(const ComplexMatrix& u, const ComplexMultiset& target,
                                     const AssignOptions& opts = {});

/// Largest distance between eigenvalues and target values after sorting both
/// along the curve (best cyclic shift on a circle).
double spectrum_match_error(std::span<const Complex> eigs, std::span<const Complex> target,
                            const Curve& curve);

}  // namespace lowrank
