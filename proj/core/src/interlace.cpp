#include "lowrank/interlace.hpp"

#include "lowrank/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace lowrank {

namespace {

// Coefficients of prod (x - r), lowest degree first.
std::vector<double> poly_from_roots(std::span<const double> roots) {
  std::vector<double> p{1.0};
  for (double r : roots) {
    p.push_back(0.0);
    for (std::size_t j = p.size() - 1; j >= 1; --j) p[j] = p[j - 1] - r * p[j];
    p[0] = -r * p[0];
  }
  return p;
}

void require_distinct(std::span<const double> alphas, std::span<const double> betas) {
  std::vector<double> all(alphas.begin(), alphas.end());
  all.insert(all.end(), betas.begin(), betas.end());
  for (double v : all) {
    if (!std::isfinite(v)) fail(Errc::InvalidArgument, "node is not finite");
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    fail(Errc::DuplicateNode, "interpolation nodes must be pairwise distinct");
  }
}

// prod_j (alpha_i - beta_j) / prod_{l != i} (alpha_i - alpha_l), accumulated as
// a product of ratios so that it neither overflows nor underflows early.
double node_ratio(std::span<const double> alphas, std::span<const double> betas, std::size_t i) {
  double r = 1.0;
  const std::size_t n = alphas.size();
  for (std::size_t j = 0; j < n; ++j) {
    r *= alphas[i] - betas[j];
    if (j != i) r /= alphas[i] - alphas[j];
  }
  return r;
}

void require_interlacing(std::span<const double> alphas, std::span<const double> betas) {
  const std::size_t n = alphas.size();
  if (betas.size() != n) {
    fail(Errc::NotInterlacing, "hermitian_rank1_update: sizes differ");
  }
  if (n == 0) return;
  std::vector<std::pair<double, int>> merged;
  for (double a : alphas) merged.emplace_back(a, 0);
  for (double b : betas) merged.emplace_back(b, 1);
  std::sort(merged.begin(), merged.end());
  double scale = 0.0;
  for (const auto& [v, s] : merged) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    if (merged[i].second == merged[i + 1].second) {
      fail(Errc::NotInterlacing, "hermitian_rank1_update: values do not alternate");
    }
    if (!(merged[i + 1].first - merged[i].first > 1e-10 * scale)) {
      fail(Errc::NotInterlacing, "hermitian_rank1_update: nodes closer than the resolution");
    }
  }
  if (!std::is_sorted(alphas.begin(), alphas.end()) || !std::is_sorted(betas.begin(), betas.end())) {
    fail(Errc::NotInterlacing, "hermitian_rank1_update: inputs must be sorted");
  }
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Greedy nearest matching: returns for each target value the matched index of
// `current` or -1.
std::vector<int> match_values(const std::vector<double>& current, const std::vector<double>& target,
                              double tol) {
  std::vector<int> match(target.size(), -1);
  std::vector<bool> used(current.size(), false);
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t t = 0; t < target.size(); ++t) {
    for (std::size_t c = 0; c < current.size(); ++c) {
      const double d = std::abs(current[c] - target[t]);
      if (d <= tol) pairs.emplace_back(d, t, c);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [d, t, c] : pairs) {
    if (match[t] == -1 && !used[c]) {
      match[t] = static_cast<int>(c);
      used[c] = true;
    }
  }
  return match;
}

void fill_certificate(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const Complex> target,
                      const Curve& curve, double tol, AssignCertificate& cert) {
  cert.rank = arithmetic_distance(a, b, tol);
  const RealVector s = singular_values(a - b);
  cert.rank_gap = (cert.rank > 0 && cert.rank < s.size()) ? s(cert.rank) / s(0) : 0.0;
  const ComplexVector eig = eigenvalues(b);
  const std::vector<Complex> e(eig.data(), eig.data() + eig.size());
  cert.spectrum_error = spectrum_match_error(e, target, curve);
}

}  // namespace

InterpolationCoeffs interpolation_coeffs(std::span<const double> alphas,
                                         std::span<const double> betas) {
  if (alphas.size() != betas.size()) {
    fail(Errc::DimensionMismatch, "interpolation_coeffs: |A| != |B|");
  }
  require_distinct(alphas, betas);
  const std::size_t n = alphas.size();
  InterpolationCoeffs out;
  out.alphas.assign(alphas.begin(), alphas.end());
  out.betas.assign(betas.begin(), betas.end());
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = -node_ratio(alphas, betas, i);

  // Residual of P_A - sum x_alpha P_{A \ alpha} - P_B, coefficientwise.
  std::vector<double> lhs = poly_from_roots(alphas);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> rest(alphas.begin(), alphas.end());
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    const auto p = poly_from_roots(rest);
    for (std::size_t j = 0; j < p.size(); ++j) lhs[j] -= out.x[i] * p[j];
  }
  const auto pb = poly_from_roots(betas);
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t j = 0; j < pb.size(); ++j) {
    err = std::max(err, std::abs(lhs[j] - pb[j]));
    ref = std::max(ref, std::abs(pb[j]));
  }
  out.residual = ref > 0.0 ? err / ref : err;
  return out;
}

const char* sign_pattern_name(SignPattern s) {
  switch (s) {
    case SignPattern::Positive: return "positive";
    case SignPattern::Negative: return "negative";
    case SignPattern::Mixed: return "mixed";
  }
  return "mixed";
}

SignPattern sign_uniform(const InterpolationCoeffs& c) {
  bool pos = false;
  bool neg = false;
  for (double x : c.x) {
    if (x == 0.0) fail(Errc::ZeroCoefficient, "sign_uniform: a coefficient vanishes");
    (x > 0.0 ? pos : neg) = true;
  }
  if (pos && neg) return SignPattern::Mixed;
  return neg ? SignPattern::Negative : SignPattern::Positive;
}

Rank1Update hermitian_rank1_update(std::span<const double> alphas, std::span<const double> betas) {
  require_interlacing(alphas, betas);
  const auto n = static_cast<Eigen::Index>(alphas.size());
  Rank1Update u;
  u.alphas.assign(alphas.begin(), alphas.end());
  u.betas.assign(betas.begin(), betas.end());
  u.y.resize(n);
  u.z.resize(n);
  if (n == 0) return u;

  RealVector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = node_ratio(alphas, betas, i);
  u.c = w(0) > 0.0 ? 1 : -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double yy = u.c * w(i);
    if (!(yy > 0.0)) {
      fail(Errc::NotInterlacing, "hermitian_rank1_update: |y_i|^2 changes sign");
    }
    u.y(i) = std::sqrt(yy);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = alphas[i] - betas[j];
      s += (u.y(i) / d) * (u.y(i) / d);
    }
    u.z(j) = 1.0 / std::sqrt(s);
  }
  u.x.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) u.x(i, j) = u.y(i) * u.z(j) / (alphas[i] - betas[j]);
  }
  ComplexVector av(n), bv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    av(i) = alphas[i];
    bv(i) = betas[i];
  }
  u.unitarity_residual = max_abs(u.x.adjoint() * u.x - ComplexMatrix::Identity(n, n));
  if (u.unitarity_residual > 1e-7) {
    std::ostringstream msg;
    msg << "hermitian_rank1_update: |X^*X - E| = " << u.unitarity_residual;
    fail(Errc::NumericalLossOfUnitarity, msg.str());
  }
  const ComplexMatrix b = u.x * bv.asDiagonal() * u.x.adjoint();
  u.b = 0.5 * (b + b.adjoint());
  u.r = av.asDiagonal() * u.x - u.x * bv.asDiagonal();
  return u;
}

CurveSpec make_curve_spec(const Curve& curve, std::span<const Complex> support) {
  if (curve.kind() == Curve::Kind::Line) {
    // phi(x) = conj(dir) (x - p) maps the line onto the reals, up to the
    // rounding in the imaginary part.
    const Complex dir = curve.direction();
    return {curve, MobiusMap(0.0, dir, 1.0, -curve.point())};
  }
  std::vector<double> angles;
  for (const Complex x : support) angles.push_back(curve.parameter(x));
  std::sort(angles.begin(), angles.end());
  double pole_angle = 0.0;
  if (!angles.empty()) {
    double best_gap = -1.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double next = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2.0 * std::numbers::pi;
      if (next - angles[i] > best_gap) {
        best_gap = next - angles[i];
        pole_angle = angles[i] + 0.5 * best_gap;
      }
    }
  }
  const Complex zeta = curve.at(pole_angle);
  const Complex i(0.0, 1.0);
  // phi(x) = i (x + zeta - 2c) / (zeta - x) is real on the circle.
  return {curve, MobiusMap(-1.0, zeta, i, i * (zeta - 2.0 * curve.center()))};
}

double spectrum_match_error(std::span<const Complex> eigs, std::span<const Complex> target,
                            const Curve& curve) {
  if (eigs.size() != target.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = eigs.size();
  if (n == 0) return 0.0;
  auto sorted = [&](std::span<const Complex> v) {
    std::vector<Complex> out(v.begin(), v.end());
    std::stable_sort(out.begin(), out.end(), [&](Complex x, Complex y) {
      return curve.parameter(x) < curve.parameter(y);
    });
    return out;
  };
  const auto e = sorted(eigs);
  const auto t = sorted(target);
  const std::size_t shifts = curve.kind() == Curve::Kind::Circle ? n : 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < shifts; ++s) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(e[(k + s) % n] - t[k]));
    best = std::min(best, worst);
  }
  return best;
}

AssignResult hermitian_assign_spectrum(const ComplexMatrix& a, const ComplexMultiset& target,
                                       const AssignOptions& opts) {
  require_square(a, "hermitian_assign_spectrum");
  const auto n = a.rows();
  if (!is_hermitian(a, opts.tol)) fail(Errc::NotHermitian, "hermitian_assign_spectrum: A is not Hermitian");
  if (target.cardinality() != n) {
    fail(Errc::DimensionMismatch, "hermitian_assign_spectrum: target has " +
                                      std::to_string(target.cardinality()) +
                                      " points, matrix size is " + std::to_string(n));
  }
  const ComplexMatrix ah = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ah);
  double scale = n > 0 ? eig.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
  for (const auto& e : target.entries()) scale = std::max(scale, std::abs(e.value));
  for (const auto& e : target.entries()) {
    if (std::abs(e.value.imag()) > opts.tol * std::max(scale, 1.0)) {
      fail(Errc::TargetNotReal, "hermitian_assign_spectrum: target value off the real line");
    }
  }
  const double mtol = std::max(target.merge_tol(), opts.merge_rel_tol * scale);

  std::vector<MultisetEntry> real_target;
  for (const auto& e : target.entries()) real_target.push_back({e.value.real(), e.count});
  const ComplexMultiset tgt(std::move(real_target), mtol);

  // Current matrix = W diag(d) W^*; eigenvalues snapped to their cluster
  // representatives so that the chain's values can be matched exactly.
  std::vector<Complex> raw(n);
  for (Eigen::Index i = 0; i < n; ++i) raw[i] = eig.eigenvalues()(i);
  const ComplexMultiset spec(raw, mtol);
  std::vector<double> d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : spec.entries()) {
      const double dist = std::abs(e.value - raw[i]);
      if (dist < best) {
        best = dist;
        d[i] = e.value.real();
      }
    }
  }
  ComplexMatrix w = eig.eigenvectors();

  const Curve line = Curve::real_line();
  const auto chain = geodesic_chain_on_curve(spec, tgt, line);
  AssignResult out;
  out.cert.dc = static_cast<int>(chain.size()) - 1;
  ComplexMatrix delta = ComplexMatrix::Zero(n, n);
  for (std::size_t p = 1; p < chain.size(); ++p) {
    std::vector<double> next;
    for (const Complex v : chain[p].values()) next.push_back(v.real());
    const auto match = match_values(d, next, mtol);
    std::vector<bool> kept(n, false);
    std::vector<double> betas;
    for (std::size_t t = 0; t < next.size(); ++t) {
      if (match[t] >= 0) {
        kept[match[t]] = true;
      } else {
        betas.push_back(next[t]);
      }
    }
    std::vector<Eigen::Index> moved;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!kept[i]) moved.push_back(i);
    }
    std::sort(moved.begin(), moved.end(), [&](Eigen::Index x, Eigen::Index y) { return d[x] < d[y]; });
    std::sort(betas.begin(), betas.end());
    std::vector<double> alphas;
    for (auto i : moved) alphas.push_back(d[i]);

    const Rank1Update u = hermitian_rank1_update(alphas, betas);
    out.cert.unitarity_residual = std::max(out.cert.unitarity_residual, u.unitarity_residual);
    const auto m = static_cast<Eigen::Index>(moved.size());
    ComplexMatrix ws(n, m);
    for (Eigen::Index j = 0; j < m; ++j) ws.col(j) = w.col(moved[j]);
    ComplexMatrix local = u.b;
    for (Eigen::Index j = 0; j < m; ++j) local(j, j) -= alphas[j];
    delta += ws * local * ws.adjoint();
    const ComplexMatrix rotated = ws * u.x;
    for (Eigen::Index j = 0; j < m; ++j) {
      w.col(moved[j]) = rotated.col(j);
      d[moved[j]] = betas[j];
    }
    ++out.cert.steps;
  }
  out.matrix = a + 0.5 * (delta + delta.adjoint());
  if (out.cert.steps == 0) out.matrix = a;
  fill_certificate(a, out.matrix, tgt.values(), line, opts.tol, out.cert);
  return out;
}

AssignResult normal_on_curve_assign_spectrum(const ComplexMatrix& a, const ComplexMultiset& target,
                                             const Curve& curve, const AssignOptions& opts) {
  require_square(a, "normal_on_curve_assign_spectrum");
  const auto n = a.rows();
  if (!is_normal(a, opts.tol)) fail(Errc::NotNormal, "normal_on_curve_assign_spectrum: A is not normal");
  if (target.cardinality() != n) {
    fail(Errc::DimensionMismatch, "normal_on_curve_assign_spectrum: target has " +
                                      std::to_string(target.cardinality()) +
                                      " points, matrix size is " + std::to_string(n));
  }
  const ComplexVector eig = eigenvalues(a);
  const std::vector<Complex> sp(eig.data(), eig.data() + n);
  const std::vector<Complex> tv = target.values();

  double scale = curve.kind() == Curve::Kind::Circle ? std::abs(curve.center()) + curve.radius()
                                                     : std::abs(curve.point());
  for (const Complex x : sp) scale = std::max(scale, std::abs(x));
  for (const Complex x : tv) scale = std::max(scale, std::abs(x));
  scale = std::max(scale, 1e-300);
  const double curve_tol = std::max(opts.merge_rel_tol * scale, target.merge_tol());
  for (const Complex x : sp) {
    if (!curve.contains(x, curve_tol)) {
      fail(Errc::NotOnCurve, "normal_on_curve_assign_spectrum: an eigenvalue of A is off the curve");
    }
  }
  for (const Complex x : tv) {
    if (!curve.contains(x, curve_tol)) {
      fail(Errc::NotOnCurve, "normal_on_curve_assign_spectrum: a target value is off the curve");
    }
  }

  std::vector<Complex> support = sp;
  support.insert(support.end(), tv.begin(), tv.end());
  const CurveSpec spec = make_curve_spec(curve, support);
  const MobiusMap& phi = spec.map;

  const ComplexMatrix g = mobius_apply_matrix(phi, a, opts.tol);
  const ComplexMatrix gh = 0.5 * (g + g.adjoint());
  std::vector<MultisetEntry> mapped;
  for (const auto& e : target.entries()) mapped.push_back({phi(e.value).real(), e.count});
  double mscale = 0.0;
  for (const auto& e : mapped) mscale = std::max(mscale, std::abs(e.value));
  mscale = std::max(mscale, spectral_norm(gh));
  const ComplexMultiset mapped_target(std::move(mapped), opts.merge_rel_tol * mscale);

  AssignOptions inner = opts;
  const AssignResult h = hermitian_assign_spectrum(gh, mapped_target, inner);

  // psi(H) - psi(G) = (gamma beta - alpha delta) (alpha H + beta)^{-1} (H - G)
  // (alpha G + beta)^{-1} for psi = phi^{-1}; adding this to A keeps the rank
  // of the perturbation exact instead of rounding A through phi and back.
  const MobiusMap psi = phi.inverse();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix diff = h.matrix - gh;
  const ComplexMatrix left = psi.a() * h.matrix + psi.b() * id;
  const ComplexMatrix right = psi.a() * gh + psi.b() * id;
  const Complex kappa = psi.c() * psi.b() - psi.a() * psi.d();
  const ComplexMatrix step = left.partialPivLu().solve(diff);
  const ComplexMatrix pert = kappa * right.transpose().partialPivLu().solve(step.transpose()).transpose();

  AssignResult out;
  out.cert = h.cert;
  out.matrix = h.cert.steps == 0 ? a : ComplexMatrix(a + pert);
  out.cert.dc = interval_dc(ComplexMultiset(sp, curve_tol), target.with_tolerance(curve_tol), curve);
  fill_certificate(a, out.matrix, tv, curve, opts.tol, out.cert);
  return out;
}

AssignResult unitary_assign_spectrum(const ComplexMatrix& u, const ComplexMultiset& target,
                                     const AssignOptions& opts) {
  if (!is_unitary(u, opts.tol)) fail(Errc::NotUnitary, "unitary_assign_spectrum: U is not unitary");
  return normal_on_curve_assign_spectrum(u, target, Curve::unit_circle(), opts);
}

}  // namespace lowrank
