#include "lowrank/weyr.hpp"

#include "lowrank/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace lowrank {

namespace {

bool lex_less(Complex x, Complex y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

int part(const std::vector<int>& parts, int i) {
  return i >= 1 && i <= static_cast<int>(parts.size()) ? parts[i - 1] : 0;
}

// Pairs rows of two tables by eigenvalue; unmatched rows pair with an empty
// partition.
std::vector<std::pair<const PartitionRow*, const PartitionRow*>> align(
    const detail::PartitionTable& x, const detail::PartitionTable& y) {
  const double tol = std::max(x.key_tol(), y.key_tol());
  std::vector<std::pair<const PartitionRow*, const PartitionRow*>> out;
  std::vector<bool> used(y.rows().size(), false);
  for (const auto& r : x.rows()) {
    const PartitionRow* match = nullptr;
    for (std::size_t j = 0; j < y.rows().size(); ++j) {
      if (!used[j] && std::abs(y.rows()[j].lambda - r.lambda) <= tol) {
        used[j] = true;
        match = &y.rows()[j];
        break;
      }
    }
    out.emplace_back(&r, match);
  }
  for (std::size_t j = 0; j < y.rows().size(); ++j) {
    if (!used[j]) out.emplace_back(nullptr, &y.rows()[j]);
  }
  return out;
}

const std::vector<int>& parts_of(const PartitionRow* r) {
  static const std::vector<int> none;
  return r ? r->parts : none;
}

std::vector<PartitionRow> conjugate_rows(const std::vector<PartitionRow>& rows) {
  std::vector<PartitionRow> out;
  for (const auto& r : rows) out.push_back({r.lambda, conjugate_partition(r.parts)});
  return out;
}

// Single-linkage labels of points at threshold t.
std::vector<int> cluster_labels(const std::vector<Complex>& pts, double t) {
  const auto n = pts.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(pts[i] - pts[j]) <= t) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    }
  }
  std::vector<int> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = find(static_cast<int>(i));
  return label;
}

// dim Ker (lambda E - A)^m for m = 1, 2, ... until it stops growing (m <= n).
std::vector<int> kernel_dims(const ComplexMatrix& a, Complex lambda, double tol) {
  const auto n = a.rows();
  const ComplexMatrix m = lambda * ComplexMatrix::Identity(n, n) - a;
  // Scale by a bound on |M| that stays away from zero when M is tiny, e.g. a
  // scalar matrix.
  const double norm = spectral_norm(a) + std::abs(lambda);
  std::vector<int> dims;
  ComplexMatrix power = m;
  double scale = norm;
  for (Eigen::Index k = 1; k <= n; ++k) {
    const int d = static_cast<int>(n) - numeric_rank(power, tol, scale);
    if (!dims.empty() && d == dims.back()) break;
    dims.push_back(d);
    if (d == n) break;
    power = power * m;
    scale *= norm;
  }
  return dims;
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real() == 0.0 ? 0.0 : z.real(),
                z.imag() == 0.0 ? 0.0 : z.imag());
  return buf;
}

}  // namespace

namespace detail {

PartitionTable::PartitionTable(std::vector<PartitionRow> rows, double key_tol) : key_tol_(key_tol) {
  if (!(key_tol >= 0.0) || !std::isfinite(key_tol)) {
    fail(Errc::InvalidArgument, "partition table: key tolerance must be finite and nonnegative");
  }
  for (auto& r : rows) {
    if (!std::isfinite(r.lambda.real()) || !std::isfinite(r.lambda.imag())) {
      fail(Errc::InvalidArgument, "partition table: eigenvalue is not finite");
    }
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
      if (r.parts[i] <= 0) fail(Errc::InvalidArgument, "partition table: parts must be positive");
      if (i > 0 && r.parts[i] > r.parts[i - 1]) {
        fail(Errc::InvalidArgument, "partition table: parts must be nonincreasing");
      }
    }
    if (!r.parts.empty()) rows_.push_back(std::move(r));
  }
  std::sort(rows_.begin(), rows_.end(),
            [](const PartitionRow& x, const PartitionRow& y) { return lex_less(x.lambda, y.lambda); });
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = i + 1; j < rows_.size(); ++j) {
      if (std::abs(rows_[i].lambda - rows_[j].lambda) <= key_tol_) {
        fail(Errc::InvalidArgument, "partition table: duplicate eigenvalue " +
                                        format_complex(rows_[i].lambda));
      }
    }
  }
}

int PartitionTable::size() const noexcept {
  int s = 0;
  for (const auto& r : rows_) s += std::accumulate(r.parts.begin(), r.parts.end(), 0);
  return s;
}

const PartitionRow* PartitionTable::find(Complex lambda, double tol) const {
  for (const auto& r : rows_) {
    if (std::abs(r.lambda - lambda) <= tol) return &r;
  }
  return nullptr;
}

int PartitionTable::at(Complex lambda, int i) const {
  const PartitionRow* r = find(lambda, key_tol_);
  return r ? part(r->parts, i) : 0;
}

}  // namespace detail

std::vector<int> conjugate_partition(std::span<const int> parts) {
  std::vector<int> out;
  if (parts.empty()) return out;
  const int longest = parts.front();
  out.reserve(longest);
  for (int j = 1; j <= longest; ++j) {
    int c = 0;
    for (int p : parts) c += p >= j ? 1 : 0;
    out.push_back(c);
  }
  return out;
}

SegreChar weyr_to_segre(const WeyrChar& w) {
  return SegreChar(conjugate_rows(w.rows()), w.key_tol());
}

WeyrChar segre_to_weyr(const SegreChar& s) {
  return WeyrChar(conjugate_rows(s.rows()), s.key_tol());
}

WeyrChar weyr_from_matrix(const ComplexMatrix& a, const WeyrOptions& opts) {
  require_square(a, "weyr_from_matrix");
  const auto n = a.rows();
  if (n == 0) return {};
  const double norm = spectral_norm(a);
  if (norm == 0.0) return WeyrChar({{0.0, {static_cast<int>(n)}}}, 0.0);

  const ComplexVector eig = eigenvalues(a);
  const std::vector<Complex> pts(eig.data(), eig.data() + n);
  double t = opts.merge_rel_tol * norm;
  for (int attempt = 0; attempt <= opts.max_escalations; ++attempt, t *= 10.0) {
    const auto label = cluster_labels(pts, t);
    double separation = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (label[i] != label[j]) separation = std::min(separation, std::abs(pts[i] - pts[j]));
      }
    }
    if (separation < 10.0 * t) continue;

    std::map<int, std::pair<Complex, int>> clusters;  // label -> (sum, size)
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& c = clusters[label[i]];
      c.first += pts[i];
      c.second += 1;
    }
    std::vector<PartitionRow> rows;
    bool consistent = true;
    for (const auto& [lab, c] : clusters) {
      const Complex lambda = c.first / static_cast<double>(c.second);
      const auto dims = kernel_dims(a, lambda, opts.rank_tol);
      if (dims.empty() || dims.front() < 1 || dims.back() != c.second) {
        consistent = false;
        break;
      }
      std::vector<int> eta;
      int prev = 0;
      for (int d : dims) {
        eta.push_back(d - prev);
        prev = d;
      }
      // Kernel dimension increments of a single operator are nonincreasing
      // in exact arithmetic; anything else means the rank decisions are noise.
      if (!std::is_sorted(eta.rbegin(), eta.rend())) {
        consistent = false;
        break;
      }
      rows.push_back({lambda, std::move(eta)});
    }
    if (consistent) return WeyrChar(std::move(rows), t);
  }
  fail(Errc::IllConditioned,
       "weyr_from_matrix: eigenvalue clusters are not separated from their neighbours");
}

int weyr_distance(const WeyrChar& eta, const WeyrChar& mu) {
  int d = 0;
  for (const auto& [x, y] : align(eta, mu)) {
    const auto& px = parts_of(x);
    const auto& py = parts_of(y);
    const int len = static_cast<int>(std::max(px.size(), py.size()));
    for (int i = 1; i <= len; ++i) d = std::max(d, std::abs(part(px, i) - part(py, i)));
  }
  return d;
}

WeyrStep weyr_geodesic_step(const WeyrChar& eta, const WeyrChar& mu) {
  const int k = weyr_distance(eta, mu);
  if (k < 2) {
    fail(Errc::DistanceTooSmall,
         "weyr_geodesic_step: distance is " + std::to_string(k) + ", need at least 2");
  }
  int plus = 0;
  int minus = 0;
  const auto pairs = align(eta, mu);
  for (const auto& [x, y] : pairs) {
    const auto& px = parts_of(x);
    const auto& py = parts_of(y);
    const int len = static_cast<int>(std::max(px.size(), py.size()));
    for (int i = 1; i <= len; ++i) {
      const int diff = part(px, i) - part(py, i);
      plus += diff == k ? 1 : 0;
      minus += diff == -k ? 1 : 0;
    }
  }
  const bool swapped = plus < minus;

  std::vector<PartitionRow> rows;
  for (const auto& [x, y] : pairs) {
    const auto& src = swapped ? parts_of(y) : parts_of(x);
    const auto& dst = swapped ? parts_of(x) : parts_of(y);
    const int len = static_cast<int>(std::max(src.size(), dst.size()));
    std::vector<int> nu;
    for (int i = 1; i <= len; ++i) {
      const int s = part(src, i);
      const int diff = s - part(dst, i);
      nu.push_back(diff == k ? s - 1 : diff == -k ? s + 1 : s);
    }
    while (!nu.empty() && nu.back() == 0) nu.pop_back();
    if (std::find(nu.begin(), nu.end(), 0) != nu.end() || !std::is_sorted(nu.rbegin(), nu.rend())) {
      fail(Errc::CertificateFailed, "weyr_geodesic_step: step left the space of partitions");
    }
    const Complex lambda = x ? x->lambda : y->lambda;
    rows.push_back({lambda, std::move(nu)});
  }
  WeyrChar nu(std::move(rows), std::max(eta.key_tol(), mu.key_tol()));
  const WeyrChar& from = swapped ? mu : eta;
  const WeyrChar& to = swapped ? eta : mu;
  if (weyr_distance(from, nu) != 1 || weyr_distance(nu, to) != k - 1) {
    fail(Errc::CertificateFailed, "weyr_geodesic_step: distances of the step do not add up");
  }
  return {std::move(nu), swapped};
}

WeyrChar weyr_pad(const WeyrChar& mu, int n) {
  const int m = mu.size();
  if (n < m) {
    fail(Errc::InvalidArgument,
         "weyr_pad: target size " + std::to_string(n) + " is below " + std::to_string(m));
  }
  if (n == m) return mu;
  std::vector<PartitionRow> rows = mu.rows();
  if (rows.empty()) {
    rows.push_back({0.0, std::vector<int>(n, 1)});
    return WeyrChar(std::move(rows), mu.key_tol());
  }
  // Rows are sorted by (Re, Im), so the first maximum is the tie-break winner.
  auto best = rows.begin();
  for (auto it = rows.begin(); it != rows.end(); ++it) {
    if (it->parts.front() > best->parts.front()) best = it;
  }
  best->parts.insert(best->parts.end(), n - m, 1);
  return WeyrChar(std::move(rows), mu.key_tol());
}

std::vector<WeyrChar> weyr_geodesic_chain(const WeyrChar& eta, const WeyrChar& mu) {
  const int n = eta.size();
  if (mu.size() != n) {
    fail(Errc::PreconditionViolated, "weyr_geodesic_chain: endpoints have different sizes");
  }
  std::vector<WeyrChar> front{eta};
  std::vector<WeyrChar> back{mu};
  for (int d = weyr_distance(eta, mu); d >= 2; --d) {
    WeyrStep step = weyr_geodesic_step(front.back(), back.back());
    WeyrChar padded = weyr_pad(step.nu, n);
    const WeyrChar& near = step.from_mu ? back.back() : front.back();
    const WeyrChar& far = step.from_mu ? front.back() : back.back();
    if (weyr_distance(near, padded) != 1 || weyr_distance(padded, far) != d - 1) {
      fail(Errc::CertificateFailed, "weyr_geodesic_chain: padding broke the geodesic");
    }
    (step.from_mu ? back : front).push_back(std::move(padded));
  }
  if (weyr_distance(front.back(), back.back()) == 0) back.pop_back();
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

bool thompson_reachable(const WeyrChar& eta_a, const WeyrChar& eta_b, int k) {
  return eta_a.size() == eta_b.size() && weyr_distance(eta_a, eta_b) <= k;
}

bool segre_interlace_check(const SegreChar& s_a, const SegreChar& s_b) {
  if (s_a.size() != s_b.size()) {
    fail(Errc::PreconditionViolated, "segre_interlace_check: sizes differ");
  }
  for (const auto& [x, y] : align(s_a, s_b)) {
    const auto& qa = parts_of(x);
    const auto& qb = parts_of(y);
    const int len = static_cast<int>(std::max(qa.size(), qb.size())) + 1;
    for (int i = 1; i < len; ++i) {
      if (part(qb, i) < part(qa, i + 1) || part(qa, i) < part(qb, i + 1)) return false;
    }
  }
  return true;
}

Rank1Assignment rank1_assign_spectrum(const ComplexMatrix& a, const ComplexMultiset& target,
                                      const Rank1AssignOptions& opts) {
  require_square(a, "rank1_assign_spectrum");
  const auto n = a.rows();
  if (target.cardinality() != n) {
    fail(Errc::PreconditionViolated, "rank1_assign_spectrum: target has " +
                                         std::to_string(target.cardinality()) +
                                         " points, matrix size is " + std::to_string(n));
  }
  if (n == 0) return {a, 0, 1.0, 0};
  const WeyrChar w = weyr_from_matrix(a, opts.weyr);
  for (const auto& r : w.rows()) {
    if (r.parts.front() > 1) {
      fail(Errc::Derogatory, "rank1_assign_spectrum: eigenvalue " + format_complex(r.lambda) +
                                 " has geometric multiplicity " + std::to_string(r.parts.front()));
    }
  }

  // Work with A / s so that Krylov columns stay bounded.
  double s = spectral_norm(a);
  for (const auto& e : target.entries()) s = std::max(s, std::abs(e.value));
  if (s == 0.0) s = 1.0;
  const ComplexMatrix as = a / s;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  double best_cond = std::numeric_limits<double>::infinity();
  bool full_rank_seen = false;
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    ComplexMatrix t(n, n);
    t.col(0) = v;
    for (Eigen::Index j = 1; j < n; ++j) t.col(j) = as * t.col(j - 1);
    const ComplexVector next = as * t.col(n - 1);

    const RealVector sv = singular_values(t);
    const double smin = sv(n - 1);
    const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (numeric_rank(t, 1e-14) == n) full_rank_seen = true;
    best_cond = std::min(best_cond, cond);
    if (!(cond <= opts.max_krylov_condition)) continue;

    Eigen::PartialPivLU<ComplexMatrix> lu(t);
    const ComplexVector current = lu.solve(next);  // A^n v = T current
    // Coefficients of prod (x - mu / s): x^n + q_{n-1} x^{n-1} + ... + q_0.
    ComplexVector q = ComplexVector::Zero(n + 1);
    q(0) = 1.0;
    Eigen::Index deg = 0;
    for (const Complex mu : target.values()) {
      const Complex root = mu / s;
      ++deg;
      for (Eigen::Index j = deg; j >= 1; --j) q(j) = q(j - 1) - root * q(j);
      q(0) = -root * q(0);
    }
    const ComplexVector wanted = -q.head(n);
    const ComplexVector delta = wanted - current;
    Rank1Assignment out;
    out.krylov_condition = cond;
    out.attempts = attempt;
    if (delta.norm() <= opts.tol * (1.0 + current.norm())) {
      out.matrix = a;
      out.perturbation_rank = 0;
      return out;
    }
    const ComplexMatrix inv = lu.inverse();
    out.matrix = s * (as + (t * delta) * inv.row(n - 1));
    out.perturbation_rank = arithmetic_distance(a, out.matrix, opts.tol);
    return out;
  }
  if (!full_rank_seen) {
    fail(Errc::CyclicVectorFailure, "rank1_assign_spectrum: no cyclic vector found in " +
                                        std::to_string(opts.max_attempts) + " attempts");
  }
  std::ostringstream msg;
  msg << "rank1_assign_spectrum: Krylov basis condition " << best_cond << " exceeds "
      << opts.max_krylov_condition;
  fail(Errc::IllConditionedKrylov, msg.str());
}

std::string ferrers_diagram(const WeyrChar& w) {
  std::ostringstream out;
  for (const auto& r : w.rows()) {
    out << "lambda = " << format_complex(r.lambda) << "  eta = (";
    for (std::size_t i = 0; i < r.parts.size(); ++i) out << (i ? "," : "") << r.parts[i];
    out << ")\n";
    for (int q : conjugate_partition(r.parts)) {
      for (int j = 0; j < q; ++j) out << (j ? " *" : "  *");
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace lowrank
