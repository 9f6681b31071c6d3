#include "lowrank/matrix.hpp"

#include "lowrank/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lowrank {

namespace {

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// Indices sorted by descending key, ties by index.
std::vector<int> order_descending(const std::vector<double>& key) {
  std::vector<int> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return key[i] > key[j]; });
  return idx;
}

}  // namespace

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    fail(Errc::NotSquare, std::string(what) + ": expected a square matrix, got " +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(Errc::DimensionMismatch,
         std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
             " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol * max_abs(a);
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const ComplexMatrix gram = a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols());
  return max_abs(gram) <= tol;
}

bool is_normal(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double m = max_abs(a);
  const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
  return max_abs(comm) <= tol * m * m;
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

double spectral_norm(const ComplexMatrix& a) {
  const RealVector s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(0);
}

int numeric_rank(const ComplexMatrix& a, double tol) { return numeric_rank(a, tol, 0.0); }

int numeric_rank(const ComplexMatrix& a, double tol, double scale) {
  if (tol < 0.0) fail(Errc::InvalidArgument, "numeric_rank: tol must be nonnegative");
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double threshold = tol * std::max(scale, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++r;
  }
  return r;
}

int arithmetic_distance(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_same_shape(a, b, "arithmetic_distance");
  const double scale = std::max(spectral_norm(a), spectral_norm(b));
  return numeric_rank(a - b, tol, scale);
}

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0) fail(Errc::InvalidArgument, "Fraction: denominator must be positive");
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

std::string Fraction::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction normalized_distance(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_square(a, "normalized_distance");
  require_same_shape(a, b, "normalized_distance");
  return Fraction(arithmetic_distance(a, b, tol), a.rows());
}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  const double det = std::abs(a * d - b * c);
  const double ref = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
  if (!(det > 1e-14 * ref)) {
    fail(Errc::DegenerateMobius, "MobiusMap: ad - bc vanishes");
  }
}

Complex MobiusMap::pole() const {
  if (!has_finite_pole()) fail(Errc::InvalidArgument, "MobiusMap::pole: affine map");
  return -b_ / a_;
}

Complex MobiusMap::operator()(Complex x) const {
  const Complex den = a_ * x + b_;
  if (den == Complex(0.0)) fail(Errc::PoleOnSupport, "MobiusMap: evaluated at the pole");
  return (c_ * x + d_) / den;
}

MobiusMap MobiusMap::inverse() const {
  // y (a x + b) = c x + d  =>  x = (a y - c)^{-1} (d - b y)
  return {a_, -c_, -b_, d_};
}

ComplexMatrix mobius_apply_matrix(const MobiusMap& m, const ComplexMatrix& a, double tol) {
  require_square(a, "mobius_apply_matrix");
  const auto n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix den = m.a() * a + m.b() * id;
  const ComplexMatrix num = m.c() * a + m.d() * id;
  const double scale = std::abs(m.a()) * spectral_norm(a) + std::abs(m.b());
  if (numeric_rank(den, tol, scale) < n) {
    fail(Errc::PoleOnSpectrum, "mobius_apply_matrix: aA + bE is singular");
  }
  // den and num are polynomials in A and commute, so the order is immaterial.
  return den.partialPivLu().solve(num);
}

std::vector<ComplexMatrix> rank1_chain(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_same_shape(a, b, "rank1_chain");
  const int k = arithmetic_distance(a, b, tol);
  std::vector<ComplexMatrix> chain{a};
  if (k == 0) return chain;

  const ComplexMatrix diff = b - a;
  std::vector<ComplexMatrix> terms;
  terms.reserve(k);
  if (is_hermitian(a, tol) && is_hermitian(b, tol)) {
    const ComplexMatrix h = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    const RealVector& lam = eig.eigenvalues();
    std::vector<double> mag(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) mag[i] = std::abs(lam(i));
    const auto order = order_descending(mag);
    for (int t = 0; t < k; ++t) {
      const int i = order[t];
      const ComplexVector v = eig.eigenvectors().col(i);
      terms.push_back(lam(i) * v * v.adjoint());
    }
  } else {
    Eigen::JacobiSVD<ComplexMatrix> svd(diff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    for (int t = 0; t < k; ++t) {
      terms.push_back(svd.singularValues()(t) * svd.matrixU().col(t) *
                      svd.matrixV().col(t).adjoint());
    }
  }
  ComplexMatrix current = a;
  for (int t = 0; t + 1 < k; ++t) {
    current += terms[t];
    chain.push_back(current);
  }
  chain.push_back(b);
  return chain;
}

std::vector<ComplexMatrix> unitary_chain(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                         double tol) {
  require_same_shape(u1, u2, "unitary_chain");
  require_square(u1, "unitary_chain");
  if (!is_unitary(u1, tol) || !is_unitary(u2, tol)) {
    fail(Errc::NotUnitary, "unitary_chain: endpoints must be unitary");
  }
  const int k = arithmetic_distance(u1, u2, tol);
  std::vector<ComplexMatrix> chain{u1};
  if (k == 0) return chain;

  const NormalEigen w = normal_eigen(u1.adjoint() * u2);
  const auto n = u1.rows();
  std::vector<double> dist(n);
  ComplexVector lam(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lam(i) = w.values(i) / std::abs(w.values(i));
    dist[i] = std::abs(lam(i) - 1.0);
  }
  const auto order = order_descending(dist);
  ComplexVector partial = ComplexVector::Ones(n);
  for (int t = 0; t + 1 < k; ++t) {
    partial(order[t]) = lam(order[t]);
    chain.push_back(u1 * w.vectors * partial.asDiagonal() * w.vectors.adjoint());
  }
  chain.push_back(u2);
  return chain;
}

NormalEigen normal_eigen(const ComplexMatrix& a) {
  require_square(a, "normal_eigen");
  if (a.rows() == 0) return {};
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  return {schur.matrixU(), schur.matrixT().diagonal()};
}

ComplexVector eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues");
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(a, false);
  return eig.eigenvalues();
}

}  // namespace lowrank
