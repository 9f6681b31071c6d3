#include "lowrank/normalcheck.hpp"

#include "lowrank/errors.hpp"
#include "lowrank/multiset.hpp"
#include "lowrank/random.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace lowrank {

namespace {

void require_normal(const ComplexMatrix& a, double tol, const char* what) {
  require_square(a, what);
  if (!is_normal(a, tol)) fail(Errc::NotNormal, std::string(what) + ": matrix is not normal");
}

std::vector<Complex> spectrum(const ComplexMatrix& a) {
  const ComplexVector e = eigenvalues(a);
  return {e.data(), e.data() + e.size()};
}

}  // namespace

int region_dim(const ComplexMatrix& a, const RegionDimQuery& q, double tol) {
  if (!(q.epsilon >= 0.0)) fail(Errc::InvalidArgument, "region_dim: epsilon must be nonnegative");
  require_normal(a, tol, "region_dim");
  int count = 0;
  for (const Complex x : spectrum(a)) count += std::abs(x - q.lambda) <= q.epsilon ? 1 : 0;
  return count;
}

Th4Report th4_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_same_shape(a, b, "th4_check");
  require_normal(a, tol, "th4_check");
  require_normal(b, tol, "th4_check");
  Th4Report r;
  r.n = static_cast<int>(a.rows());
  r.rank = arithmetic_distance(a, b, tol);
  const auto ea = spectrum(a);
  const auto eb = spectrum(b);
  double scale = 0.0;
  for (const Complex x : ea) scale = std::max(scale, std::abs(x));
  for (const Complex x : eb) scale = std::max(scale, std::abs(x));
  const double eps = 1e-9 * scale;

  std::vector<std::pair<double, int>> dist;
  dist.reserve(ea.size() + eb.size());
  auto sweep = [&](Complex center) {
    dist.clear();
    for (const Complex x : ea) dist.emplace_back(std::abs(x - center), 1);
    for (const Complex x : eb) dist.emplace_back(std::abs(x - center), -1);
    std::sort(dist.begin(), dist.end());
    int diff = 0;
    for (std::size_t i = 0; i < dist.size();) {
      // One group: distances chained within eps; the queried radius sits in
      // the gap after it.
      std::size_t j = i;
      diff += dist[j].second;
      while (j + 1 < dist.size() && dist[j + 1].first - dist[j].first <= eps) diff += dist[++j].second;
      i = j + 1;
      ++r.queries;
      r.max_dim_gap = std::max(r.max_dim_gap, std::abs(diff));
    }
  };
  for (const Complex c : ea) sweep(c);
  for (const Complex c : eb) sweep(c);

  r.dc = dc_distance(ComplexMultiset(ea, eps), ComplexMultiset(eb, eps));
  return r;
}

ProjectionReport projection_bound_check(const ComplexMatrix& n, const ComplexMatrix& basis,
                                        Complex lambda, double epsilon, double a, double tol,
                                        std::uint64_t seed, int samples) {
  if (!(a > 1.0)) fail(Errc::InvalidArgument, "projection_bound_check: need a > 1");
  if (!(epsilon >= 0.0)) fail(Errc::InvalidArgument, "projection_bound_check: need epsilon >= 0");
  require_normal(n, tol, "projection_bound_check");
  if (basis.rows() != n.rows() || basis.cols() == 0) {
    fail(Errc::DimensionMismatch, "projection_bound_check: basis must have n rows and a column");
  }
  const auto dim = n.rows();
  const ComplexMatrix shifted = n - lambda * ComplexMatrix::Identity(dim, dim);

  Eigen::HouseholderQR<ComplexMatrix> qr(basis);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, basis.cols());
  ProjectionReport rep;
  rep.hypothesis_residual = spectral_norm(shifted * q);
  const double slack = tol * std::max(1.0, spectral_norm(n));
  if (rep.hypothesis_residual > epsilon + slack) {
    std::ostringstream msg;
    msg << "projection_bound_check: |(N - lambda) x| reaches " << rep.hypothesis_residual
        << " |x| on the span, above epsilon = " << epsilon;
    fail(Errc::HypothesisViolated, msg.str());
  }

  const NormalEigen eig = normal_eigen(n);
  std::vector<Eigen::Index> inside;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(eig.values(i) - lambda) <= a * epsilon + 1e-12 * std::max(1.0, spectral_norm(n))) {
      inside.push_back(i);
    }
  }
  ComplexMatrix p(dim, static_cast<Eigen::Index>(inside.size()));
  for (std::size_t j = 0; j < inside.size(); ++j) p.col(static_cast<Eigen::Index>(j)) = eig.vectors.col(inside[j]);

  const double bound = std::sqrt(1.0 - 1.0 / (a * a));
  rep.min_margin = std::numeric_limits<double>::infinity();
  auto check = [&](const ComplexVector& x) {
    const double nx = x.norm();
    if (nx == 0.0) return;
    const double px = p.cols() == 0 ? 0.0 : (p.adjoint() * x).norm();
    rep.min_margin = std::min(rep.min_margin, px / nx - bound);
    ++rep.vectors_checked;
  };
  for (Eigen::Index j = 0; j < basis.cols(); ++j) check(basis.col(j));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) check(q * random_complex_vector(q.cols(), rng));
  return rep;
}

Th4HarnessReport th4_harness(const Th4HarnessOptions& opts) {
  if (opts.n_max < 2 || opts.k_max < 0 || opts.trials < 0) {
    fail(Errc::InvalidArgument, "th4_harness: need n_max >= 2, k_max >= 0, trials >= 0");
  }
  Th4HarnessReport rep;
  rep.seed = opts.seed;
  rep.worst_slack = std::numeric_limits<int>::max();
  for (long t = 0; t < opts.trials; ++t) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(t)));
    const int n = std::uniform_int_distribution<int>(2, opts.n_max)(rng);
    const int k = std::uniform_int_distribution<int>(0, std::min(opts.k_max, n))(rng);
    const NormalPair pair = random_commuting_normal_pair(n, k, t % 2 == 1, rng);
    const Th4Report r = th4_check(pair.a, pair.b, opts.tol);
    ++rep.trials;
    rep.dim_violations += r.dim_bound_holds() ? 0 : 1;
    rep.dc_violations += r.dc_bound_holds() ? 0 : 1;
    rep.worst_slack = std::min(rep.worst_slack, r.slack());
    rep.total_queries += r.queries;
    rep.max_rank = std::max(rep.max_rank, r.rank);
  }
  if (rep.trials == 0) rep.worst_slack = 0;
  return rep;
}

}  // namespace lowrank
