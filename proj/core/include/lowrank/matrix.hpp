#pragma once

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace lowrank {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default relative threshold for numeric rank decisions.
inline constexpr double kDefaultTol = 1e-9;

// Structural predicates. Tolerances are relative to the largest entry
// except for `is_unitary`, which compares A*A against E directly.
bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol);
bool is_unitary(const ComplexMatrix& a, double tol = kDefaultTol);
bool is_normal(const ComplexMatrix& a, double tol = kDefaultTol);

RealVector singular_values(const ComplexMatrix& a);
double spectral_norm(const ComplexMatrix& a);

/// Number of singular values above tol * sigma_max. The zero matrix has
/// rank 0.
int numeric_rank(const ComplexMatrix& a, double tol = kDefaultTol);

/// Same count, with the threshold tol * max(scale, sigma_max). Used when the
/// matrix is a difference and its own norm is not the right reference.
int numeric_rank(const ComplexMatrix& a, double tol, double scale);

/// rank(A - B), thresholded relative to max(|A|, |B|, |A - B|) in the
/// spectral norm so that rounding noise in A - B does not count as rank.
int arithmetic_distance(const ComplexMatrix& a, const ComplexMatrix& b,
                        double tol = kDefaultTol);

/// Exact nonnegative rational p/q in lowest terms.
class Fraction {
 public:
  Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& x, const Fraction& y) {
    return x.num_ * y.den_ <=> y.num_ * x.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// rank(A - B) / n for square n x n operands.
Fraction normalized_distance(const ComplexMatrix& a, const ComplexMatrix& b,
                             double tol = kDefaultTol);

/// The map x -> (a x + b)^{-1} (c x + d). The same coefficients act on
/// scalars, multisets and matrices, so a scalar pole sits at -b/a.
class MobiusMap {
 public:
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  static MobiusMap identity() { return {0.0, 1.0, 1.0, 0.0}; }

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }

  /// False when a == 0, i.e. the map is affine and the pole is at infinity.
  bool has_finite_pole() const noexcept { return a_ != Complex(0.0); }
  Complex pole() const;

  Complex operator()(Complex x) const;
  MobiusMap inverse() const;

 private:
  Complex a_, b_, c_, d_;
};

/// (aA + bE)^{-1}(cA + dE). Throws PoleOnSpectrum if aA + bE is singular at
/// tolerance `tol`.
ComplexMatrix mobius_apply_matrix(const MobiusMap& m, const ComplexMatrix& a,
                                  double tol = kDefaultTol);

/// Geodesic A = C_0, ..., C_k = B with rank(C_i - C_{i+1}) = 1 and
/// k = rank(B - A). Rank-1 terms are added in descending magnitude. When
/// both endpoints are Hermitian the terms come from the eigendecomposition of
/// B - A, so every C_i is Hermitian.
std::vector<ComplexMatrix> rank1_chain(const ComplexMatrix& a, const ComplexMatrix& b,
                                       double tol = kDefaultTol);

/// Geodesic through unitary matrices: diagonalize U1^{-1} U2 = V diag(l) V*
/// and switch the eigenvalues on one at a time.
std::vector<ComplexMatrix> unitary_chain(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                         double tol = kDefaultTol);

/// Unitary eigendecomposition of a normal matrix, A = vectors * diag(values)
/// * vectors^*, read off the complex Schur form.
struct NormalEigen {
  ComplexMatrix vectors;
  ComplexVector values;
};

NormalEigen normal_eigen(const ComplexMatrix& a);

/// Eigenvalues of an arbitrary square matrix.
ComplexVector eigenvalues(const ComplexMatrix& a);

void require_square(const ComplexMatrix& a, const char* what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

}  // namespace lowrank
