#include "lowrank/random.hpp"

#include "lowrank/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <numeric>

namespace lowrank {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ index);
}

Complex random_complex(Rng& rng) {
  std::normal_distribution<double> g;
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

ComplexVector random_complex_vector(Eigen::Index n, Rng& rng) {
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = random_complex(rng);
  return v;
}

ComplexMatrix random_ginibre(Eigen::Index n, Rng& rng) {
  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = random_complex(rng);
  }
  return m;
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  if (n == 0) return {};
  const ComplexMatrix g = random_ginibre(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0.0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, rng);
  return 0.5 * (g + g.adjoint());
}

std::vector<double> random_distinct_reals(std::size_t n, Rng& rng, double min_gap) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> out;
  while (out.size() < n) {
    const double v = u(rng);
    const bool close = std::any_of(out.begin(), out.end(),
                                   [&](double w) { return std::abs(v - w) < 2.0 * min_gap; });
    if (!close) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

InterlacingPair random_interlacing_pair(std::size_t n, Rng& rng) {
  const auto all = random_distinct_reals(2 * n, rng);
  InterlacingPair p;
  const bool alpha_first = std::bernoulli_distribution(0.5)(rng);
  for (std::size_t i = 0; i < all.size(); ++i) {
    ((i % 2 == 0) == alpha_first ? p.alphas : p.betas).push_back(all[i]);
  }
  return p;
}

NormalPair random_commuting_normal_pair(Eigen::Index n, int k, bool grid, Rng& rng) {
  if (k < 0 || k > n) fail(Errc::InvalidArgument, "random_commuting_normal_pair: need 0 <= k <= n");
  std::uniform_int_distribution<int> small(-2, 2);
  auto draw = [&]() -> Complex {
    if (grid) {
      const int re = small(rng);
      const int im = small(rng);
      return {static_cast<double>(re), static_cast<double>(im)};
    }
    return random_complex(rng);
  };
  NormalPair p;
  p.da.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) p.da(i) = draw();
  p.db = p.da;
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  for (int t = 0; t < k; ++t) {
    Complex v = draw();
    while (v == p.da(idx[t])) v = draw();
    p.db(idx[t]) = v;
  }
  const ComplexMatrix u = random_unitary(n, rng);
  p.a = u * p.da.asDiagonal() * u.adjoint();
  p.b = u * p.db.asDiagonal() * u.adjoint();
  return p;
}

}  // namespace lowrank
