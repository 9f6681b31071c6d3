#include "lowrank/almost.hpp"
#include "lowrank/errors.hpp"
#include "lowrank/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace lowrank {
namespace {

ComplexMatrix lower_shift(Eigen::Index n) {
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) j(i + 1, i) = 1.0;
  return j;
}

TEST(SelfAdjoint, Examples) {
  Rng rng(1);
  const ComplexMatrix h = random_hermitian(4, rng);
  EXPECT_EQ(selfadjoint_defect(h), Fraction(0, 1));
  EXPECT_TRUE(nearest_selfadjoint(h).isApprox(h));

  ComplexMatrix j(2, 2);
  j << 0, 1, 0, 0;
  EXPECT_EQ(selfadjoint_defect(j), Fraction(1, 1));
  ComplexMatrix s(2, 2);
  s << 0, 0.5, 0.5, 0;
  EXPECT_TRUE(nearest_selfadjoint(j).isApprox(s));
  EXPECT_EQ(normalized_distance(j, nearest_selfadjoint(j)), Fraction(1, 1));
}

TEST(SelfAdjoint, NeverWorseThanAdjoint) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = 2 + t % 7;
    ComplexMatrix a = random_hermitian(n, rng);
    for (int k = 0; k < t % 4; ++k) a += random_complex_vector(n, rng) * random_complex_vector(n, rng).adjoint();
    const ComplexMatrix s = nearest_selfadjoint(a);
    EXPECT_TRUE(is_hermitian(s, 1e-14));
    EXPECT_LE(normalized_distance(a, s), selfadjoint_defect(a));
  }
}

TEST(UnitaryDefect, Examples) {
  Rng rng(3);
  EXPECT_EQ(unitary_defect(random_unitary(5, rng)), Fraction(0, 1));
  for (Eigen::Index n = 2; n <= 7; ++n) EXPECT_EQ(unitary_defect(lower_shift(n)), Fraction(1, n));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  EXPECT_EQ(unitary_defect(d), Fraction(1, 2));
}

void check_nearest(const ComplexMatrix& a, const NearestUnitary& r) {
  const Eigen::Index n = a.rows();
  EXPECT_LT((r.u.adjoint() * r.u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-9);
  const int defect = numeric_rank(a.adjoint() * a - ComplexMatrix::Identity(n, n));
  EXPECT_LE(arithmetic_distance(a, r.u), defect);
  EXPECT_EQ(r.rank, arithmetic_distance(a, r.u));
}

TEST(NearestUnitary, Examples) {
  Rng rng(4);
  const ComplexMatrix u = random_unitary(4, rng);
  const NearestUnitary ru = nearest_unitary_rank(u);
  EXPECT_EQ(ru.rank, 0);
  check_nearest(u, ru);

  for (Eigen::Index n = 2; n <= 6; ++n) {
    const NearestUnitary rj = nearest_unitary_rank(lower_shift(n));
    EXPECT_LE(rj.rank, 1);
    check_nearest(lower_shift(n), rj);
  }

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  const NearestUnitary rd = nearest_unitary_rank(d);
  EXPECT_LE(rd.rank, 1);
  EXPECT_EQ(rd.isometric_dim, 1);
}

TEST(NearestUnitary, StructuredRandom) {
  Rng rng(5);
  std::uniform_real_distribution<double> s(0.0, 3.0);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index n = 2 + t % 9;
    const int r = t % static_cast<int>(n + 1);
    ComplexVector sv = ComplexVector::Ones(n);
    for (int i = 0; i < r; ++i) sv(n - 1 - i) = t % 5 == 0 ? 0.0 : s(rng) + 1.2;
    const ComplexMatrix a = random_unitary(n, rng) * sv.asDiagonal() * random_unitary(n, rng);
    const NearestUnitary res = nearest_unitary_rank(a);
    check_nearest(a, res);
    EXPECT_EQ(res.defect_rank, r);
  }
}

TEST(Cauchy, Examples) {
  const std::vector<Complex> a0{0.0}, b0{1.0};
  const CauchyDeterminant d0 = cauchy_nonsingular(a0, b0);
  EXPECT_TRUE(d0.nonsingular);
  EXPECT_LT(std::abs(d0.value() - Complex(-1.0)), 1e-15);

  const std::vector<Complex> a1{1.0, 3.0}, b1{2.0, 4.0};
  const CauchyDeterminant d1 = cauchy_nonsingular(a1, b1);
  const double exact = oracle::exact_cauchy_det({1, 3}, {2, 4}).convert_to<double>();
  EXPECT_NEAR(d1.value().real(), exact, 1e-12);
  EXPECT_LT(d1.relative_disagreement, 1e-12);

  EXPECT_THROW(cauchy_nonsingular(a0, a0), Error);
  EXPECT_THROW(cauchy_nonsingular(a1, b0), Error);
}

TEST(Cauchy, ProductFormulaMatchesExactRational) {
  std::mt19937 rng(6);
  std::uniform_int_distribution<long> u(-60, 60);
  for (int n = 1; n <= 12; ++n) {
    std::vector<long> a, b;
    std::vector<long> used;
    auto fresh = [&]() {
      for (;;) {
        const long v = u(rng);
        if (std::find(used.begin(), used.end(), v) == used.end()) {
          used.push_back(v);
          return v;
        }
      }
    };
    for (int i = 0; i < n; ++i) a.push_back(fresh());
    for (int i = 0; i < n; ++i) b.push_back(fresh());
    const std::vector<Complex> ac(a.begin(), a.end()), bc(b.begin(), b.end());
    const CauchyDeterminant d = cauchy_nonsingular(ac, bc);
    const double exact = oracle::exact_cauchy_det(a, b).convert_to<double>();
    EXPECT_NEAR(d.value().real() / exact, 1.0, 1e-10) << "n=" << n;
    EXPECT_LT(d.relative_disagreement, 1e-10);
  }
}

TEST(Cauchy, SolveInvertsTheMatrix) {
  Rng rng(7);
  for (int n = 1; n <= 10; ++n) {
    std::vector<Complex> a, b;
    for (int i = 0; i < n; ++i) a.push_back(random_complex(rng));
    for (int i = 0; i < n; ++i) b.push_back(random_complex(rng) + 4.0);
    const ComplexVector rhs = random_complex_vector(n, rng);
    const ComplexVector x = cauchy_solve(a, b, rhs);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = 1.0 / (a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(j)]);
    }
    EXPECT_LT((m * x - rhs).norm(), 1e-8 * rhs.norm() * (1.0 + x.norm()));
  }
  const std::vector<Complex> dup{1.0, 1.0}, other{2.0, 3.0};
  EXPECT_THROW(cauchy_solve(dup, other, ComplexVector::Ones(2)), Error);
}

TEST(Witness, FourPointExample) {
  const std::vector<Complex> l{1.0, 2.0, 3.0, 4.0};
  const CommutingWitness w = checkerboard_witness(l);
  EXPECT_EQ(w.commutator_rank, 2);
  EXPECT_EQ(w.commutator_distance, Fraction(1, 2));
  EXPECT_EQ(w.certificate.rows, (std::vector<int>{1, 3}));
  EXPECT_EQ(w.certificate.cols, (std::vector<int>{2, 4}));
  EXPECT_LT(std::abs(w.certificate.determinant.value() - Complex(4.0 / 3.0)), 1e-14);
  EXPECT_EQ(w.certificate.lower_bound, 2);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_EQ(w.x(i, i), Complex(0.0));

  const std::vector<Complex> rep{1.0, 2.0, 2.0, 4.0};
  EXPECT_THROW(checkerboard_witness(rep), Error);
  const std::vector<Complex> small{1.0, 2.0, 3.0};
  EXPECT_THROW(checkerboard_witness(small), Error);
}

TEST(Witness, CommutatorIsCheckerboardForIntegerNodes) {
  // Rational nodes make AX - XA exactly the 0/1 pattern.
  for (int n = 4; n <= 9; ++n) {
    std::vector<Complex> l;
    for (int i = 0; i < n; ++i) l.push_back(static_cast<double>(i * i + 1));
    const CommutingWitness w = checkerboard_witness(l);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const oracle::Rational xij = i == j ? oracle::Rational(0)
                                            : oracle::Rational((i + j) % 2) / oracle::Rational((i * i + 1) - (j * j + 1));
        const oracle::Rational comm = oracle::Rational(i * i + 1) * xij - xij * oracle::Rational(j * j + 1);
        EXPECT_EQ(comm, oracle::Rational(i == j ? 0 : (i + j) % 2));
        EXPECT_NEAR(w.x(i, j).real(), xij.convert_to<double>(), 1e-15);
      }
    }
    EXPECT_LE(w.checkerboard_residual, 1e-12);
    EXPECT_EQ(w.certificate.lower_bound, n / 2);
  }
}

TEST(Witness, CertificateIndependentOfDiagonal) {
  Rng rng(9);
  std::vector<Complex> l;
  for (int i = 0; i < 8; ++i) l.push_back(random_complex(rng));
  const CommutingWitness w = checkerboard_witness(l);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix b = random_complex_vector(8, rng).asDiagonal();
    const ComplexMatrix xb = w.x - b;
    ComplexMatrix sub(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) sub(i, j) = xb(w.certificate.rows[i] - 1, w.certificate.cols[j] - 1);
    }
    EXPECT_LT(std::abs(sub.determinant() - w.certificate.determinant.value()),
              1e-9 * std::abs(w.certificate.determinant.value()));
    EXPECT_GE(numeric_rank(xb), w.certificate.lower_bound);
  }
}

TEST(Witness, LargeRandomNodes) {
  Rng rng(10);
  for (int n : {16, 64}) {
    std::vector<Complex> l;
    for (int i = 0; i < n; ++i) l.push_back(random_complex(rng));
    const CommutingWitness w = checkerboard_witness(l);
    EXPECT_EQ(w.commutator_rank, 2);
    EXPECT_TRUE(w.certificate.determinant.nonsingular);
    EXPECT_LT(w.certificate.determinant.relative_disagreement, 1e-10);
  }
}

}  // namespace
}  // namespace lowrank
