#include "lowrank/almost.hpp"

#include "lowrank/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lowrank {

namespace {

namespace mp = boost::multiprecision;
using Real50 = mp::cpp_bin_float_50;
using Complex50 = mp::cpp_complex_50;

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double wrap_angle(double t) { return std::remainder(t, 2.0 * std::numbers::pi); }

void require_disjoint(std::span<const Complex> a, std::span<const Complex> b) {
  for (const Complex x : a) {
    for (const Complex y : b) {
      if (x == y) fail(Errc::NodeCollision, "Cauchy nodes: a value occurs in both node sets");
    }
  }
}

// log|det| and arg(det) of [1/(a_i - b_j)] by partial-pivot elimination in 50
// digits.
std::pair<double, double> elimination_log_det(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = a.size();
  std::vector<std::vector<Complex50>> m(n, std::vector<Complex50>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex50 d = Complex50(Real50(a[i].real()), Real50(a[i].imag())) -
                          Complex50(Real50(b[j].real()), Real50(b[j].imag()));
      m[i][j] = Complex50(1) / d;
    }
  }
  Real50 log_abs = 0;
  Real50 arg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    Real50 best = mp::abs(m[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real50 v = mp::abs(m[i][k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) return {-std::numeric_limits<double>::infinity(), 0.0};
    if (piv != k) {
      std::swap(m[piv], m[k]);
      arg += boost::math::constants::pi<Real50>();
    }
    log_abs += mp::log(best);
    arg += mp::arg(m[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex50 f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return {static_cast<double>(log_abs),
          wrap_angle(static_cast<double>(mp::fmod(arg, 2 * boost::math::constants::pi<Real50>())))};
}

// prod_k (x - p_k) / prod_{l != skip} (x - q_l), interleaved to stay in range.
Complex ratio_product(Complex x, std::span<const Complex> p, std::span<const Complex> q,
                      std::size_t skip) {
  Complex r = 1.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    r *= x - p[k];
    if (k < q.size() && k != skip) r /= x - q[k];
  }
  return r;
}

}  // namespace

Fraction selfadjoint_defect(const ComplexMatrix& a, double tol) {
  require_square(a, "selfadjoint_defect");
  return normalized_distance(a, a.adjoint(), tol);
}

ComplexMatrix nearest_selfadjoint(const ComplexMatrix& a) {
  require_square(a, "nearest_selfadjoint");
  return 0.5 * (a + a.adjoint());
}

Fraction unitary_defect(const ComplexMatrix& a, double tol) {
  require_square(a, "unitary_defect");
  const auto n = a.rows();
  return normalized_distance(a.adjoint() * a, ComplexMatrix::Identity(n, n), tol);
}

NearestUnitary nearest_unitary_rank(const ComplexMatrix& a, double tol) {
  require_square(a, "nearest_unitary_rank");
  const auto n = a.rows();
  NearestUnitary out;
  if (n == 0) return out;
  const ComplexMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (gram + gram.adjoint()));
  const double norm = spectral_norm(a);
  const double band = tol * std::max(1.0, norm * norm);

  std::vector<Eigen::Index> in, out_idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    (std::abs(eig.eigenvalues()(i) - 1.0) <= band ? in : out_idx).push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(in.size());
  ComplexMatrix vx(n, m), vc(n, n - m);
  for (Eigen::Index j = 0; j < m; ++j) vx.col(j) = eig.eigenvectors().col(in[j]);
  for (Eigen::Index j = 0; j < n - m; ++j) vc.col(j) = eig.eigenvectors().col(out_idx[j]);
  out.isometric_dim = static_cast<int>(m);
  out.defect_rank = static_cast<int>(n - m);

  ComplexMatrix y_orth(n, m);
  if (m > 0) {
    const ComplexMatrix y = a * vx;
    out.isometry_residual = max_abs(y.adjoint() * y - ComplexMatrix::Identity(m, m));
    // Orthonormal factor of the polar decomposition, the closest isometry.
    Eigen::JacobiSVD<ComplexMatrix> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    y_orth = svd.matrixU() * svd.matrixV().adjoint();
    const double back = max_abs(a.adjoint() * y_orth - vx);
    if (out.isometry_residual > 10.0 * band || back > 10.0 * band * std::max(1.0, norm)) {
      std::ostringstream msg;
      msg << "nearest_unitary_rank: A is not an isometry on the selected subspace (residual "
          << out.isometry_residual << ")";
      fail(Errc::IsometryCheckFailed, msg.str());
    }
  }
  // Orthonormal basis of (AX)-perp from a full QR of the isometric image.
  ComplexMatrix y_perp(n, n - m);
  if (m == 0) {
    y_perp = ComplexMatrix::Identity(n, n);
  } else if (m < n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(y_orth);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    y_perp = q.rightCols(n - m);
  }
  out.u = y_orth * vx.adjoint() + y_perp * vc.adjoint();
  out.unitarity_residual = max_abs(out.u.adjoint() * out.u - ComplexMatrix::Identity(n, n));
  out.rank = arithmetic_distance(a, out.u, tol);
  return out;
}

Complex CauchyDeterminant::value() const {
  if (!nonsingular) return 0.0;
  return std::polar(std::exp(log_abs), arg);
}

CauchyDeterminant cauchy_nonsingular(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) fail(Errc::DimensionMismatch, "cauchy_nonsingular: |a| != |b|");
  require_disjoint(a, b);
  const std::size_t n = a.size();
  CauchyDeterminant d;
  double log_abs = 0.0;
  double arg = 0.0;
  bool zero = false;
  auto add = [&](Complex f, double sign) {
    if (f == Complex(0.0)) {
      zero = true;
      return;
    }
    log_abs += sign * std::log(std::abs(f));
    arg += sign * std::arg(f);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      add(a[j] - a[i], 1.0);
      add(b[i] - b[j], 1.0);
    }
    for (std::size_t j = 0; j < n; ++j) add(a[i] - b[j], -1.0);
  }
  d.log_abs = zero ? -std::numeric_limits<double>::infinity() : log_abs;
  d.arg = zero ? 0.0 : wrap_angle(arg);
  d.nonsingular = !zero;

  const auto [elog, earg] = elimination_log_det(a, b);
  d.elim_log_abs = elog;
  d.elim_arg = earg;
  const bool elim_zero = std::isinf(elog);
  if (zero || elim_zero) {
    d.relative_disagreement = zero == elim_zero ? 0.0 : 1.0;
  } else {
    d.relative_disagreement =
        std::abs(std::exp(Complex(elog - d.log_abs, wrap_angle(earg - d.arg))) - 1.0);
  }
  return d;
}

ComplexVector cauchy_solve(std::span<const Complex> a, std::span<const Complex> b,
                           const ComplexVector& rhs) {
  const std::size_t n = a.size();
  if (b.size() != n || static_cast<std::size_t>(rhs.size()) != n) {
    fail(Errc::DimensionMismatch, "cauchy_solve: sizes differ");
  }
  require_disjoint(a, b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[i] == a[j] || b[i] == b[j]) fail(Errc::DuplicateNode, "cauchy_solve: repeated node");
    }
  }
  // Inverse entries: (C^{-1})_{ji} = u_i v_j / (b_j - a_i) with
  // u_i = P_b(a_i) / P'_a(a_i), v_j = P_a(b_j) / P'_b(b_j).
  std::vector<Complex> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = ratio_product(a[i], b, a, i);
  for (std::size_t j = 0; j < n; ++j) v[j] = ratio_product(b[j], a, b, j);
  ComplexVector x = ComplexVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += u[i] * rhs(static_cast<Eigen::Index>(i)) / (b[j] - a[i]);
    x(static_cast<Eigen::Index>(j)) = v[j] * s;
  }
  return x;
}

CommutingWitness checkerboard_witness(std::span<const Complex> lambdas, double tol) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  if (n < 4) fail(Errc::TooSmall, "checkerboard_witness: need n >= 4, got " + std::to_string(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (lambdas[i] == lambdas[j]) {
        fail(Errc::DuplicateEigenvalue, "checkerboard_witness: lambda_" + std::to_string(i + 1) +
                                            " = lambda_" + std::to_string(j + 1));
      }
    }
  }
  CommutingWitness w;
  w.lambdas = Eigen::Map<const ComplexVector>(lambdas.data(), n);
  w.x = ComplexMatrix::Zero(n, n);
  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // 1-based parity: (i + 1) + (j + 1) has the parity of i + j.
      if (i != j && (i + j) % 2 == 1) {
        c(i, j) = 1.0;
        w.x(i, j) = 1.0 / (lambdas[i] - lambdas[j]);
      }
    }
  }
  const ComplexMatrix comm = w.lambdas.asDiagonal() * w.x - w.x * w.lambdas.asDiagonal();
  w.checkerboard_residual = max_abs(comm - c);
  w.commutator_rank = numeric_rank(comm, tol);
  w.commutator_distance = Fraction(w.commutator_rank, n);
  if (w.checkerboard_residual > 1e-12 || w.commutator_rank != 2) {
    std::ostringstream msg;
    msg << "checkerboard_witness: commutator has rank " << w.commutator_rank << " and residual "
        << w.checkerboard_residual;
    fail(Errc::CertificateFailed, msg.str());
  }

  const Eigen::Index half = n / 2;
  std::vector<Complex> a, b;
  for (Eigen::Index i = 1; i <= half; ++i) {
    w.certificate.rows.push_back(static_cast<int>(2 * i - 1));
    w.certificate.cols.push_back(static_cast<int>(2 * i));
    a.push_back(lambdas[2 * i - 2]);
    b.push_back(lambdas[2 * i - 1]);
  }
  w.certificate.determinant = cauchy_nonsingular(a, b);
  if (!w.certificate.determinant.nonsingular) {
    fail(Errc::CertificateFailed, "checkerboard_witness: Cauchy submatrix is singular");
  }
  w.certificate.lower_bound = static_cast<int>(half);
  return w;
}

}  // namespace lowrank
