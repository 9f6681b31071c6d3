#include "lowrank/errors.hpp"
#include "lowrank/interlace.hpp"
#include "lowrank/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace lowrank {
namespace {

using Reals = std::vector<double>;

ComplexMatrix diag(std::initializer_list<Complex> v) {
  ComplexVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Complex x : v) d(i++) = x;
  return d.asDiagonal();
}

ComplexMultiset reals(std::initializer_list<double> v) {
  std::vector<Complex> c(v.begin(), v.end());
  return ComplexMultiset(c, 1e-9);
}

TEST(InterpolationCoeffs, Examples) {
  const Reals a1{0.0}, b1{1.0};
  const auto c1 = interpolation_coeffs(a1, b1);
  ASSERT_EQ(c1.x.size(), 1u);
  EXPECT_DOUBLE_EQ(c1.x[0], 1.0);

  const Reals a2{0.0, 2.0}, b2{1.0, 3.0};
  const auto c2 = interpolation_coeffs(a2, b2);
  EXPECT_NEAR(c2.x[0], 1.5, 1e-15);
  EXPECT_NEAR(c2.x[1], 0.5, 1e-15);

  const Reals b3{-1.0, 1.0};
  EXPECT_LT(interpolation_coeffs(a2, b3).residual, 1e-12);

  const Reals dup{0.0, 1.0};
  EXPECT_THROW(interpolation_coeffs(a2, dup), Error);
  EXPECT_THROW(interpolation_coeffs(a2, b1), Error);
}

TEST(InterpolationCoeffs, IdentityHoldsPointwiseOnRandomNodes) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 16; ++n) {
    const Reals all = random_distinct_reals(2 * n, rng);
    Reals a, b;
    for (std::size_t i = 0; i < 2 * n; ++i) (i % 3 == 0 ? a : b).push_back(all[i]);
    while (a.size() < n) {
      a.push_back(b.back());
      b.pop_back();
    }
    while (b.size() < n) {
      b.push_back(a.back());
      a.pop_back();
    }
    const auto c = interpolation_coeffs(a, b);
    EXPECT_LT(c.residual, 1e-9);
    // Check P_B(t) = P_A(t) - sum x_a P_{A \ a}(t) at a few off-node points.
    for (double t : {-1.3, 0.17, 1.4}) {
      double rhs = oracle::poly_eval_roots(c.alphas, t);
      double mag = std::abs(rhs);
      for (std::size_t i = 0; i < n; ++i) {
        Reals rest = c.alphas;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        rhs -= c.x[i] * oracle::poly_eval_roots(rest, t);
        mag += std::abs(c.x[i] * oracle::poly_eval_roots(rest, t));
      }
      const double lhs = oracle::poly_eval_roots(c.betas, t);
      EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, mag));
    }
  }
}

TEST(SignUniform, Examples) {
  const Reals a{0.0, 2.0}, b{1.0, 3.0};
  EXPECT_EQ(sign_uniform(interpolation_coeffs(a, b)), SignPattern::Positive);
  EXPECT_EQ(sign_uniform(interpolation_coeffs(b, a)), SignPattern::Negative);
  const Reals c{0.0, 3.0}, d{1.0, 2.0};
  EXPECT_EQ(sign_uniform(interpolation_coeffs(c, d)), SignPattern::Mixed);
  EXPECT_STREQ(sign_pattern_name(SignPattern::Mixed), "mixed");
}

TEST(SignUniform, MatchesInterlacingOnRandomPairs) {
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 16;
    if (t % 2 == 0) {
      const InterlacingPair p = random_interlacing_pair(n, rng);
      EXPECT_NE(sign_uniform(interpolation_coeffs(p.alphas, p.betas)), SignPattern::Mixed);
    } else {
      // Random split; non-mixed exactly when the two sets alternate.
      const Reals all = random_distinct_reals(2 * n, rng);
      Reals a, b;
      std::vector<int> side(2 * n, 0);
      std::fill(side.begin() + static_cast<std::ptrdiff_t>(n), side.end(), 1);
      std::shuffle(side.begin(), side.end(), rng);
      for (std::size_t i = 0; i < 2 * n; ++i) (side[i] ? b : a).push_back(all[i]);
      bool alternates = true;
      for (std::size_t i = 0; i + 1 < 2 * n; ++i) alternates = alternates && side[i] != side[i + 1];
      EXPECT_EQ(sign_uniform(interpolation_coeffs(a, b)) != SignPattern::Mixed, alternates);
    }
  }
}

void check_update(const Rank1Update& u, double tol_scale = 1.0) {
  const Eigen::Index n = static_cast<Eigen::Index>(u.alphas.size());
  const ComplexMatrix e = ComplexMatrix::Identity(n, n);
  EXPECT_LT((u.x.adjoint() * u.x - e).cwiseAbs().maxCoeff(), 1e-9 * tol_scale);
  double scale = 0.0;
  for (double v : u.betas) scale = std::max(scale, std::abs(v));
  const Reals sp = oracle::sorted_real_spectrum(u.b);
  for (Eigen::Index i = 0; i < n; ++i) {
    EXPECT_NEAR(sp[static_cast<std::size_t>(i)], u.betas[static_cast<std::size_t>(i)], 1e-8 * std::max(scale, 1e-300));
  }
  ComplexMatrix at = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) at(i, i) = u.alphas[static_cast<std::size_t>(i)];
  const RealVector s = Eigen::JacobiSVD<ComplexMatrix>(at - u.b).singularValues();
  if (n > 1) EXPECT_LT(s(1) / s(0), 1e-9);
}

TEST(HermitianRank1Update, Examples) {
  const Reals a1{0.0}, b1{1.0};
  const Rank1Update u1 = hermitian_rank1_update(a1, b1);
  EXPECT_EQ(u1.c, -1);
  EXPECT_NEAR(u1.y(0), 1.0, 1e-15);
  EXPECT_NEAR(u1.z(0), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(u1.x(0, 0) - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u1.b(0, 0) - Complex(1.0)), 0.0, 1e-15);

  const Reals a2{0.0, 2.0}, b2{1.0, 3.0};
  const Rank1Update u2 = hermitian_rank1_update(a2, b2);
  check_update(u2, 1e-3);
  EXPECT_EQ(numeric_rank(diag({0.0, 2.0}) - u2.b), 1);

  const Reals bad{0.5, 1.0};
  EXPECT_THROW(hermitian_rank1_update(a2, bad), Error);
}

TEST(HermitianRank1Update, SylvesterIdentityOnRandomPairs) {
  Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 11;
    const InterlacingPair p = random_interlacing_pair(n, rng);
    const Rank1Update u = hermitian_rank1_update(p.alphas, p.betas);
    check_update(u);
    ComplexMatrix at = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    ComplexMatrix bt = at;
    for (std::size_t i = 0; i < n; ++i) {
      at(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p.alphas[i];
      bt(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p.betas[i];
    }
    const ComplexMatrix yz = u.y.cast<Complex>() * u.z.cast<Complex>().transpose();
    EXPECT_LT((at * u.x - u.x * bt - yz).cwiseAbs().maxCoeff(), 1e-9);
  }
}

void check_assign(const ComplexMatrix& a, const AssignResult& r, int expected_rank) {
  EXPECT_EQ(r.cert.rank, expected_rank);
  EXPECT_EQ(arithmetic_distance(a, r.matrix), expected_rank);
  EXPECT_LT(r.cert.spectrum_error, 1e-7 * std::max(1.0, spectral_norm(a)));
}

TEST(HermitianAssign, Examples) {
  const ComplexMatrix a = diag({0.0, 2.0});
  const AssignResult same = hermitian_assign_spectrum(a, reals({2.0, 0.0}));
  EXPECT_EQ(same.cert.rank, 0);
  EXPECT_TRUE(same.matrix.isApprox(a));

  const AssignResult one = hermitian_assign_spectrum(a, reals({1.0, 3.0}));
  check_assign(a, one, 1);
  EXPECT_EQ(one.cert.dc, 1);
  const Reals sp = oracle::sorted_real_spectrum(one.matrix);
  EXPECT_NEAR(sp[0], 1.0, 1e-9);
  EXPECT_NEAR(sp[1], 3.0, 1e-9);

  const ComplexMatrix a3 = diag({0.0, 1.0, 2.0});
  const AssignResult three = hermitian_assign_spectrum(a3, reals({5.0, 6.0, 7.0}));
  check_assign(a3, three, 3);
  EXPECT_EQ(three.cert.steps, 3);

  EXPECT_THROW(hermitian_assign_spectrum(a, ComplexMultiset(std::vector<Complex>{Complex(0, 1), 1.0}, 1e-9)), Error);
  ComplexMatrix nh = a;
  nh(0, 1) = 1.0;
  EXPECT_THROW(hermitian_assign_spectrum(nh, reals({1.0, 3.0})), Error);
  EXPECT_THROW(hermitian_assign_spectrum(a, reals({1.0})), Error);
}

TEST(HermitianAssign, RankEqualsIntervalDcOnRandomInputs) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index n = 1 + t % 10;
    const ComplexMatrix a = random_hermitian(n, rng);
    const ComplexVector ea = eigenvalues(a);
    std::vector<Complex> target;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      // Mix in some shared eigenvalues so the common part is exercised.
      target.push_back(i % 3 == 0 && t % 2 == 0 ? Complex(ea(i).real()) : Complex(u(rng)));
    }
    const ComplexMultiset tm(target, 1e-9);
    const AssignResult r = hermitian_assign_spectrum(a, tm);
    const int dc = interval_dc(ComplexMultiset::from_spectrum(ea), tm, Curve::real_line());
    check_assign(a, r, dc);
    EXPECT_TRUE(is_hermitian(r.matrix, 1e-12));
    EXPECT_LE(dc_distance(ComplexMultiset::from_spectrum(eigenvalues(r.matrix)), tm), r.cert.rank);
  }
}

TEST(NormalOnCurveAssign, Examples) {
  const ComplexMatrix a = diag({1.0, -1.0});
  const ComplexMultiset target(std::vector<Complex>{Complex(0, 1), Complex(0, -1)}, 1e-9);
  const AssignResult r = unitary_assign_spectrum(a, target);
  check_assign(a, r, 1);
  EXPECT_EQ(interval_dc(ComplexMultiset::from_spectrum(eigenvalues(a)), target, Curve::unit_circle()), 1);
  EXPECT_TRUE(is_unitary(r.matrix, 1e-8));

  const ComplexMatrix a4 = diag({1.0, Complex(0, 1), -1.0, Complex(0, -1)});
  std::vector<Complex> rot;
  for (int k = 0; k < 4; ++k) rot.push_back(std::polar(1.0, std::numbers::pi / 4 + k * std::numbers::pi / 2));
  const ComplexMultiset rm(rot, 1e-9);
  const AssignResult r4 = unitary_assign_spectrum(a4, rm);
  check_assign(a4, r4, interval_dc(ComplexMultiset::from_spectrum(eigenvalues(a4)), rm, Curve::unit_circle()));

  const AssignResult id = unitary_assign_spectrum(a4, ComplexMultiset::from_spectrum(eigenvalues(a4)));
  EXPECT_EQ(id.cert.rank, 0);
  EXPECT_TRUE(id.matrix.isApprox(a4));
}

TEST(UnitaryAssign, IdentityTargets) {
  const ComplexMatrix e = ComplexMatrix::Identity(2, 2);
  const AssignResult small =
      unitary_assign_spectrum(e, ComplexMultiset(std::vector<Complex>{std::polar(1.0, 0.1), 1.0}, 1e-9));
  check_assign(e, small, 1);
  const AssignResult flip = unitary_assign_spectrum(e, ComplexMultiset(std::vector<Complex>{-1.0, -1.0}, 1e-9));
  check_assign(e, flip, 2);
  EXPECT_THROW(unitary_assign_spectrum(2.0 * e, ComplexMultiset(std::vector<Complex>{1.0, 1.0}, 1e-9)), Error);
  EXPECT_THROW(unitary_assign_spectrum(e, ComplexMultiset(std::vector<Complex>{2.0, 1.0}, 1e-9)), Error);
}

TEST(NormalOnCurveAssign, RandomLinesAndCircles) {
  Rng rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 24; ++t) {
    const Eigen::Index n = 2 + t % 6;
    const Curve curve = t % 2 == 0 ? Curve::circle(Complex(u(rng), u(rng)), 0.5 + std::abs(u(rng)))
                                   : Curve::line(Complex(u(rng), u(rng)), std::polar(1.0, 3.0 * u(rng)));
    ComplexVector d(n);
    std::vector<Complex> target;
    for (Eigen::Index i = 0; i < n; ++i) {
      d(i) = curve.at(curve.kind() == Curve::Kind::Circle ? std::numbers::pi * u(rng) : 2.0 * u(rng));
      target.push_back(i == 0 ? d(0) : curve.at(curve.kind() == Curve::Kind::Circle ? std::numbers::pi * u(rng) : 2.0 * u(rng)));
    }
    const ComplexMatrix v = random_unitary(n, rng);
    const ComplexMatrix a = v * d.asDiagonal() * v.adjoint();
    const ComplexMultiset tm(target, 1e-9);
    const AssignResult r = normal_on_curve_assign_spectrum(a, tm, curve);
    const int dc = interval_dc(ComplexMultiset::from_spectrum(eigenvalues(a)), tm, curve);
    EXPECT_EQ(r.cert.rank, dc);
    EXPECT_EQ(arithmetic_distance(a, r.matrix), dc);
    EXPECT_TRUE(is_normal(r.matrix, 1e-8));
    EXPECT_LT(r.cert.spectrum_error, 1e-7 * std::max(1.0, spectral_norm(a)));
  }
}

TEST(CurveSpec, PoleStaysOffSupport) {
  const std::vector<Complex> pts{1.0, Complex(0, 1), -1.0};
  const CurveSpec c = make_curve_spec(Curve::unit_circle(), pts);
  for (const Complex p : pts) {
    EXPECT_NO_THROW(c.map(p));
    EXPECT_LT(std::abs(c.map(p).imag()), 1e-12);
  }
  const CurveSpec l = make_curve_spec(Curve::line(Complex(0, 1), Complex(1, 1) / std::sqrt(2.0)), pts);
  EXPECT_LT(std::abs(l.map(Complex(1, 2)).imag()), 1e-12);
}

}  // namespace
}  // namespace lowrank
