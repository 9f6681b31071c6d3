#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace lowrank::oracle {

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<Table> all_tables(int n, const std::vector<Complex>& lambdas) {
  std::vector<Table> out;
  Table cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
    if (idx == lambdas.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    // Share 0 for this eigenvalue.
    rec(idx + 1, left);
    for (int share = 1; share <= left; ++share) {
      for (const auto& p : partitions(share)) {
        cur.rows.emplace_back(lambdas[idx], p);
        rec(idx + 1, left - share);
        cur.rows.pop_back();
      }
    }
  };
  rec(0, n);
  return out;
}

int table_distance(const Table& x, const Table& y) {
  auto get = [](const Table& t, Complex l, std::size_t i) {
    for (const auto& [lam, parts] : t.rows) {
      if (lam == l) return i < parts.size() ? parts[i] : 0;
    }
    return 0;
  };
  std::vector<Complex> keys;
  for (const auto& r : x.rows) keys.push_back(r.first);
  for (const auto& r : y.rows) keys.push_back(r.first);
  int d = 0;
  for (const Complex l : keys) {
    for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(get(x, l, i) - get(y, l, i)));
  }
  return d;
}

std::vector<int> ferrers_transpose(const std::vector<int>& p) {
  // Draw the diagram row by row and count the boxes in each column.
  std::vector<std::vector<bool>> grid;
  for (int len : p) grid.emplace_back(static_cast<std::size_t>(len), true);
  std::vector<int> out;
  for (std::size_t col = 0;; ++col) {
    int count = 0;
    for (const auto& row : grid) count += col < row.size() ? 1 : 0;
    if (count == 0) break;
    out.push_back(count);
  }
  return out;
}

int grid_disk_max(const std::vector<std::pair<Complex, int>>& pts, double step, bool with_complements,
                  int directions) {
  if (pts.empty()) return 0;
  int total = 0;
  for (const auto& p : pts) total += p.second;
  double xmin = pts[0].first.real(), xmax = xmin, ymin = pts[0].first.imag(), ymax = ymin;
  for (const auto& [z, w] : pts) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  int best = 0;
  auto consider = [&](int s) {
    best = std::max(best, std::abs(s));
    if (with_complements) best = std::max(best, std::abs(total - s));
  };
  std::vector<std::pair<double, int>> d;
  for (double x = xmin - 1.0; x <= xmax + 1.0 + 1e-12; x += step) {
    for (double y = ymin - 1.0; y <= ymax + 1.0 + 1e-12; y += step) {
      d.clear();
      for (const auto& [z, w] : pts) d.emplace_back(std::abs(z - Complex(x, y)), w);
      std::sort(d.begin(), d.end());
      int s = 0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        s += d[i].second;
        if (i + 1 == d.size() || d[i + 1].first - d[i].first > 1e-9) consider(s);
      }
    }
  }
  if (with_complements) {
    for (int t = 0; t < directions; ++t) {
      const double th = std::numbers::pi * 2.0 * t / directions;
      const Complex u = std::polar(1.0, th);
      d.clear();
      for (const auto& [z, w] : pts) d.emplace_back((std::conj(u) * z).real(), w);
      std::sort(d.begin(), d.end());
      int s = 0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        s += d[i].second;
        if (i + 1 == d.size() || d[i + 1].first - d[i].first > 1e-9) consider(s);
      }
    }
  }
  return best;
}

Rational exact_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

Rational exact_cauchy_det(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<std::vector<Rational>> m(a.size(), std::vector<Rational>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = Rational(1) / Rational(a[i] - b[j]);
  }
  return exact_det(std::move(m));
}

double poly_eval_roots(const std::vector<double>& roots, double x) {
  double p = 1.0;
  for (double r : roots) p *= x - r;
  return p;
}

ComplexMatrix jordan_matrix(const std::vector<std::pair<Complex, int>>& blocks, unsigned seed,
                            bool conjugate) {
  int n = 0;
  for (const auto& b : blocks) n += b.second;
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  int off = 0;
  for (const auto& [lam, size] : blocks) {
    for (int i = 0; i < size; ++i) {
      j(off + i, off + i) = lam;
      if (i + 1 < size) j(off + i, off + i + 1) = 1.0;
    }
    off += size;
  }
  if (!conjugate) return j;
  // Similarity E + 0.3 G / sqrt(n): well conditioned but far from unitary.
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix s = ComplexMatrix::Identity(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double re = g(rng);
      const double im = g(rng);
      s(r, c) += 0.3 * Complex(re, im) / std::sqrt(static_cast<double>(n));
    }
  }
  return s * j * s.inverse();
}

std::vector<double> sorted_real_spectrum(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> e(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> v(e.eigenvalues().data(), e.eigenvalues().data() + e.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace lowrank::oracle
