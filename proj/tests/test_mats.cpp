#include "lowrank/errors.hpp"
#include "lowrank/matrix.hpp"
#include "lowrank/random.hpp"

#include <gtest/gtest.h>

namespace lowrank {
namespace {

ComplexMatrix diag(std::initializer_list<Complex> v) {
  ComplexVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Complex x : v) d(i++) = x;
  return d.asDiagonal();
}

TEST(NumericRank, Examples) {
  EXPECT_EQ(numeric_rank(ComplexMatrix::Zero(3, 3)), 0);
  EXPECT_EQ(numeric_rank(ComplexMatrix::Identity(3, 3)), 3);
  EXPECT_EQ(numeric_rank(diag({1.0, 1e-15, 0.0})), 1);
  EXPECT_THROW(numeric_rank(ComplexMatrix::Identity(2, 2), -1.0), Error);
}

TEST(NumericRank, RankPlusNullityIsN) {
  Rng rng(11);
  for (int r = 0; r <= 6; ++r) {
    const Eigen::Index n = 6;
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < r; ++k) m += random_complex_vector(n, rng) * random_complex_vector(n, rng).adjoint();
    // Null space dimension from an independent SVD.
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const RealVector s = svd.singularValues();
    int null_dim = 0;
    for (Eigen::Index i = 0; i < n; ++i) null_dim += s(i) <= 1e-9 * s(0) || s(0) == 0.0 ? 1 : 0;
    EXPECT_EQ(numeric_rank(m), r);
    EXPECT_EQ(numeric_rank(m) + null_dim, n);
  }
}

TEST(ArithmeticDistance, Examples) {
  EXPECT_EQ(arithmetic_distance(diag({1, 2, 3}), diag({1, 2, 3})), 0);
  EXPECT_EQ(arithmetic_distance(diag({1, 2, 3}), diag({1, 2, 4})), 1);
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(arithmetic_distance(ComplexMatrix::Zero(2, 2), swap), 2);
  EXPECT_THROW(arithmetic_distance(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), Error);
}

TEST(ArithmeticDistance, MetricOnRandomTriples) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 5;
    const ComplexMatrix a = random_ginibre(n, rng);
    ComplexMatrix b = a, c = a;
    for (int k = 0; k < t % 4; ++k) b += random_complex_vector(n, rng) * random_complex_vector(n, rng).adjoint();
    for (int k = 0; k < t % 3; ++k) c += random_complex_vector(n, rng) * random_complex_vector(n, rng).adjoint();
    const int ab = arithmetic_distance(a, b), ba = arithmetic_distance(b, a);
    const int bc = arithmetic_distance(b, c), ac = arithmetic_distance(a, c);
    EXPECT_EQ(ab, ba);
    EXPECT_LE(ac, ab + bc);
    EXPECT_EQ(ab, t % 4);
  }
}

TEST(NormalizedDistance, Examples) {
  EXPECT_EQ(normalized_distance(diag({1, 2}), diag({1, 2})), Fraction(0, 1));
  EXPECT_EQ(normalized_distance(diag({1, 2, 3, 4}), diag({0, 0, 3, 4})), Fraction(1, 2));
  EXPECT_EQ(Fraction(2, 8).str(), "1/4");
  EXPECT_LT(Fraction(1, 3), Fraction(1, 2));
}

TEST(Mobius, Examples) {
  const ComplexMatrix a = diag({2.0, 4.0});
  EXPECT_TRUE(mobius_apply_matrix(MobiusMap::identity(), a).isApprox(a));
  EXPECT_TRUE(mobius_apply_matrix(MobiusMap(1, 0, 0, 1), a).isApprox(diag({0.5, 0.25})));
  const ComplexMatrix cayley = mobius_apply_matrix(MobiusMap(1, 1, 1, -1), diag({0.0, 1.0}));
  EXPECT_LT((cayley - diag({-1.0, 0.0})).norm(), 1e-14);
  EXPECT_THROW(mobius_apply_matrix(MobiusMap(1, 0, 0, 1), diag({0.0, 1.0})), Error);
  EXPECT_THROW(MobiusMap(1, 2, 2, 4), Error);
}

TEST(Mobius, ScalarInverseRoundTrip) {
  const MobiusMap m(Complex(1, 2), Complex(0.5, -1), Complex(3, 0), Complex(-1, 1));
  const Complex x(0.3, 0.7);
  EXPECT_LT(std::abs(m.inverse()(m(x)) - x), 1e-14);
  EXPECT_THROW(m(m.pole()), Error);
}

TEST(Mobius, PreservesArithmeticDistance) {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 5;
    const ComplexMatrix a = random_ginibre(n, rng);
    ComplexMatrix b = a;
    for (int k = 0; k < t % 4; ++k) b += random_complex_vector(n, rng) * random_complex_vector(n, rng).adjoint();
    const MobiusMap m(random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng));
    EXPECT_EQ(arithmetic_distance(mobius_apply_matrix(m, a), mobius_apply_matrix(m, b), 1e-8),
              arithmetic_distance(a, b));
  }
}

TEST(MobiusApply, SpectrumMapsPointwise) {
  const ComplexMatrix a = diag({Complex(1, 1), Complex(-2, 0), Complex(0, 3)});
  const MobiusMap m(Complex(1, 0), Complex(5, 0), Complex(2, -1), Complex(0, 1));
  const ComplexMatrix img = mobius_apply_matrix(m, a);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_LT(std::abs(img(i, i) - m(a(i, i))), 1e-14);
}

void expect_unit_steps(const std::vector<ComplexMatrix>& chain, const ComplexMatrix& a,
                       const ComplexMatrix& b) {
  ASSERT_FALSE(chain.empty());
  EXPECT_TRUE(chain.front() == a);
  EXPECT_LT((chain.back() - b).cwiseAbs().maxCoeff(), 1e-8);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    EXPECT_EQ(arithmetic_distance(chain[i], chain[i + 1]), 1) << "step " << i;
  }
  EXPECT_EQ(static_cast<int>(chain.size()) - 1, arithmetic_distance(a, b));
}

TEST(Rank1Chain, Examples) {
  const ComplexMatrix a = diag({1, 2});
  EXPECT_EQ(rank1_chain(a, a).size(), 1u);
  const auto chain = rank1_chain(ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2));
  ASSERT_EQ(chain.size(), 3u);
  expect_unit_steps(chain, ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2));
}

TEST(Rank1Chain, RandomPairsAndHermitianStaysHermitian) {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_ginibre(5, rng);
    const ComplexMatrix b = random_ginibre(5, rng);
    expect_unit_steps(rank1_chain(a, b), a, b);
    const ComplexMatrix h1 = random_hermitian(5, rng);
    const ComplexMatrix h2 = random_hermitian(5, rng);
    const auto chain = rank1_chain(h1, h2);
    expect_unit_steps(chain, h1, h2);
    for (const auto& c : chain) EXPECT_TRUE(is_hermitian(c, 1e-12));
  }
}

TEST(UnitaryChain, Examples) {
  const ComplexMatrix e = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(unitary_chain(e, e).size(), 1u);
  const auto chain = unitary_chain(e, diag({-1.0, -1.0}));
  ASSERT_EQ(chain.size(), 3u);
  expect_unit_steps(chain, e, diag({-1.0, -1.0}));
  EXPECT_LT((chain[1] - diag({-1.0, 1.0})).norm() * (chain[1] - diag({1.0, -1.0})).norm(), 1e-12);
  EXPECT_THROW(unitary_chain(e, diag({2.0, 1.0})), Error);
}

TEST(UnitaryChain, RandomPairs) {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix u1 = random_unitary(6, rng);
    ComplexMatrix u2 = random_unitary(6, rng);
    if (t % 2 == 0) {
      // Differs from u1 on a (t / 4)-dimensional subspace.
      const ComplexMatrix v = random_unitary(6, rng);
      ComplexVector ph = ComplexVector::Ones(6);
      for (int k = 0; k < t / 4; ++k) ph(k) = std::polar(1.0, 1.0 + k);
      u2 = u1 * v * ph.asDiagonal() * v.adjoint();
    }
    const auto chain = unitary_chain(u1, u2);
    expect_unit_steps(chain, u1, u2);
    for (const auto& c : chain) EXPECT_TRUE(is_unitary(c, 1e-8));
  }
}

TEST(Predicates, Basic) {
  ComplexMatrix j(2, 2);
  j << 0, 1, 0, 0;
  EXPECT_FALSE(is_normal(j));
  EXPECT_FALSE(is_hermitian(j));
  EXPECT_TRUE(is_hermitian(j + j.adjoint()));
  EXPECT_TRUE(is_unitary(diag({Complex(0, 1), -1.0})));
  EXPECT_FALSE(is_unitary(ComplexMatrix::Zero(2, 3)));
}

}  // namespace
}  // namespace lowrank
