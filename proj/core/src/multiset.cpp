#include "lowrank/multiset.hpp"

#include "lowrank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace lowrank {

namespace {

bool lex_less(Complex x, Complex y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Index of the entry closest to x within tol, or -1.
int match_entry(const std::vector<MultisetEntry>& entries, Complex x, double tol) {
  int best = -1;
  double best_d = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double d = std::abs(entries[i].value - x);
    if (d <= tol && (best < 0 || d < best_d)) {
      best = static_cast<int>(i);
      best_d = d;
    }
  }
  return best;
}

void require_same_tolerance(const ComplexMultiset& a, const ComplexMultiset& b, const char* what) {
  if (a.merge_tol() != b.merge_tol()) {
    fail(Errc::IncompatibleTolerance, std::string(what) + ": merge tolerances differ");
  }
}

double joint_tol(const ComplexMultiset& a, const ComplexMultiset& b) {
  return std::max(a.merge_tol(), b.merge_tol());
}

}  // namespace

ComplexMultiset::ComplexMultiset(double merge_tol) : merge_tol_(merge_tol) {
  if (!(merge_tol >= 0.0)) fail(Errc::InvalidArgument, "ComplexMultiset: merge_tol must be >= 0");
}

ComplexMultiset::ComplexMultiset(std::span<const Complex> values, double merge_tol)
    : ComplexMultiset(merge_tol) {
  entries_.reserve(values.size());
  for (const Complex& v : values) entries_.push_back({v, 1});
  normalize();
}

ComplexMultiset::ComplexMultiset(std::vector<MultisetEntry> entries, double merge_tol)
    : ComplexMultiset(merge_tol) {
  for (const auto& e : entries) {
    if (e.count < 1) fail(Errc::InvalidArgument, "ComplexMultiset: counts must be positive");
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      fail(Errc::InvalidArgument, "ComplexMultiset: values must be finite");
    }
  }
  entries_ = std::move(entries);
  normalize();
}

ComplexMultiset ComplexMultiset::from_spectrum(const ComplexVector& eigs, double rel_tol) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) scale = std::max(scale, std::abs(eigs(i)));
  std::vector<Complex> values(eigs.data(), eigs.data() + eigs.size());
  return ComplexMultiset(values, rel_tol * scale);
}

void ComplexMultiset::normalize() {
  // Single-linkage clustering; repeat while cluster representatives collide.
  bool merged = true;
  while (merged) {
    merged = false;
    const int n = static_cast<int>(entries_.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (std::abs(entries_[i].value - entries_[j].value) <= merge_tol_) {
          const int ri = find_root(parent, i);
          const int rj = find_root(parent, j);
          if (ri != rj) {
            parent[std::max(ri, rj)] = std::min(ri, rj);
            merged = true;
          }
        }
      }
    }
    if (!merged) break;
    std::vector<MultisetEntry> next;
    std::vector<int> slot(n, -1);
    std::vector<Complex> sums;
    for (int i = 0; i < n; ++i) {
      const int r = find_root(parent, i);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(next.size());
        next.push_back({0.0, 0});
        sums.push_back(0.0);
      }
      next[slot[r]].count += entries_[i].count;
      sums[slot[r]] += entries_[i].value * static_cast<double>(entries_[i].count);
    }
    for (std::size_t k = 0; k < next.size(); ++k) {
      next[k].value = sums[k] / static_cast<double>(next[k].count);
    }
    entries_ = std::move(next);
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const MultisetEntry& x, const MultisetEntry& y) { return lex_less(x.value, y.value); });
}

int ComplexMultiset::cardinality() const noexcept {
  int total = 0;
  for (const auto& e : entries_) total += e.count;
  return total;
}

int ComplexMultiset::multiplicity(Complex x) const {
  const int i = match_entry(entries_, x, merge_tol_);
  return i < 0 ? 0 : entries_[i].count;
}

std::vector<Complex> ComplexMultiset::values() const {
  std::vector<Complex> out;
  out.reserve(cardinality());
  for (const auto& e : entries_) {
    for (int k = 0; k < e.count; ++k) out.push_back(e.value);
  }
  return out;
}

ComplexMultiset ComplexMultiset::with_tolerance(double merge_tol) const {
  return ComplexMultiset(entries_, merge_tol);
}

bool ComplexMultiset::same_as(const ComplexMultiset& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  const double tol = std::max(merge_tol_, other.merge_tol_);
  for (const auto& e : entries_) {
    const int j = match_entry(other.entries_, e.value, tol);
    if (j < 0 || other.entries_[j].count != e.count) return false;
  }
  return true;
}

std::vector<std::pair<Complex, int>> signed_support(const ComplexMultiset& a,
                                                    const ComplexMultiset& b) {
  const double tol = joint_tol(a, b);
  std::vector<MultisetEntry> joint = a.entries();
  for (const auto& e : b.entries()) {
    const int j = match_entry(joint, e.value, tol);
    if (j >= 0) {
      joint[j].count -= e.count;
    } else {
      joint.push_back({e.value, -e.count});
    }
  }
  std::vector<std::pair<Complex, int>> out;
  for (const auto& e : joint) {
    if (e.count != 0) out.emplace_back(e.value, e.count);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });
  return out;
}

ComplexMultiset ms_difference(const ComplexMultiset& a, const ComplexMultiset& b) {
  require_same_tolerance(a, b, "ms_difference");
  std::vector<MultisetEntry> out;
  for (const auto& e : a.entries()) {
    const int rest = e.count - b.multiplicity(e.value);
    if (rest > 0) out.push_back({e.value, rest});
  }
  return ComplexMultiset(std::move(out), a.merge_tol());
}

ComplexMultiset ms_union(const ComplexMultiset& a, const ComplexMultiset& b) {
  std::vector<MultisetEntry> all = a.entries();
  all.insert(all.end(), b.entries().begin(), b.entries().end());
  return ComplexMultiset(std::move(all), joint_tol(a, b));
}

ComplexMultiset ms_common(const ComplexMultiset& a, const ComplexMultiset& b) {
  const double tol = joint_tol(a, b);
  std::vector<MultisetEntry> out;
  for (const auto& e : a.entries()) {
    const int j = match_entry(b.entries(), e.value, tol);
    if (j >= 0) {
      const int c = std::min(e.count, b.entries()[j].count);
      out.push_back({e.value, c});
    }
  }
  return ComplexMultiset(std::move(out), a.merge_tol());
}

Region Region::disk(Complex center, double radius) {
  if (!(radius >= 0.0)) fail(Errc::InvalidArgument, "Region::disk: negative radius");
  return Region(Kind::Disk, center, 0.0, radius);
}

Region Region::disk_complement(Complex center, double radius) {
  if (!(radius >= 0.0)) fail(Errc::InvalidArgument, "Region::disk_complement: negative radius");
  return Region(Kind::DiskComplement, center, 0.0, radius);
}

Region Region::half_plane(Complex a, Complex b) {
  if (a == Complex(0.0)) fail(Errc::InvalidArgument, "Region::half_plane: a must be nonzero");
  return Region(Kind::HalfPlane, a, b, 0.0);
}

bool Region::contains(Complex x, double slack) const {
  switch (kind_) {
    case Kind::Disk:
      return std::abs(x - p_) <= radius_ + slack;
    case Kind::DiskComplement:
      return std::abs(x - p_) >= radius_ - slack;
    case Kind::HalfPlane:
      // Im((x - b) / a) scaled by |a| is the signed distance to the boundary.
      return ((x - q_) / p_).imag() * std::abs(p_) >= -slack;
  }
  return false;
}

ComplexMultiset ms_intersect_region(const ComplexMultiset& a, const Region& s) {
  std::vector<MultisetEntry> out;
  for (const auto& e : a.entries()) {
    if (s.contains(e.value)) out.push_back(e);
  }
  return ComplexMultiset(std::move(out), a.merge_tol());
}

Curve Curve::line(Complex point, Complex direction) {
  if (direction == Complex(0.0)) fail(Errc::InvalidArgument, "Curve::line: zero direction");
  return Curve(Kind::Line, point, direction / std::abs(direction), 0.0);
}

Curve Curve::circle(Complex center, double radius) {
  if (!(radius > 0.0)) fail(Errc::InvalidArgument, "Curve::circle: radius must be positive");
  return Curve(Kind::Circle, center, 1.0, radius);
}

double Curve::distance(Complex x) const {
  if (kind_ == Kind::Line) return std::abs((std::conj(dir_) * (x - p_)).imag());
  return std::abs(std::abs(x - p_) - radius_);
}

double Curve::parameter(Complex x) const {
  if (kind_ == Kind::Line) return (std::conj(dir_) * (x - p_)).real();
  double t = std::arg(x - p_);
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t;
}

Complex Curve::at(double t) const {
  if (kind_ == Kind::Line) return p_ + t * dir_;
  return p_ + std::polar(radius_, t);
}

namespace {

struct SignedPoint {
  Complex z;
  int f;
};

// Candidate enumeration over traces of closed disks. Every nonempty proper
// trace is realized by a circle through three support points (the points on
// that circle taking any cyclically contiguous subset) or by the limit of
// disks toward a line through two support points (one open side plus a
// contiguous run of the points on the line).
int disk_family_max(const std::vector<SignedPoint>& pts, bool with_complements) {
  const int n = static_cast<int>(pts.size());
  int total = 0;
  for (const auto& p : pts) total += p.f;
  int best = std::abs(total);
  if (n == 0) return 0;

  auto consider = [&](int s) {
    best = std::max(best, std::abs(s));
    if (with_complements) best = std::max(best, std::abs(total - s));
  };

  double diam = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) diam = std::max(diam, std::abs(pts[i].z - pts[j].z));
  }
  const double eps = 1e-12 * diam;

  for (const auto& p : pts) consider(p.f);

  std::vector<std::pair<double, int>> boundary;
  std::vector<int> prefix;
  // Sum over every cyclically contiguous run of `boundary` (already sorted),
  // plus `base`. Non-cyclic runs only when `cyclic` is false.
  auto runs = [&](int base, bool cyclic) {
    const int m = static_cast<int>(boundary.size());
    consider(base);
    if (m == 0) return;
    prefix.assign(2 * m + 1, 0);
    for (int i = 0; i < 2 * m; ++i) prefix[i + 1] = prefix[i] + boundary[i % m].second;
    for (int start = 0; start < m; ++start) {
      const int max_len = cyclic ? m : m - start;
      for (int len = 1; len <= max_len; ++len) consider(base + prefix[start + len] - prefix[start]);
    }
  };

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Complex d = pts[j].z - pts[i].z;
      const Complex u = d / std::abs(d);
      int pos = 0;
      int neg = 0;
      boundary.clear();
      for (int m = 0; m < n; ++m) {
        const Complex w = std::conj(u) * (pts[m].z - pts[i].z);
        if (w.imag() > eps) {
          pos += pts[m].f;
        } else if (w.imag() < -eps) {
          neg += pts[m].f;
        } else {
          boundary.emplace_back(w.real(), pts[m].f);
        }
      }
      std::sort(boundary.begin(), boundary.end());
      runs(pos, false);
      runs(neg, false);
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Complex b = pts[j].z - pts[i].z;
        const Complex c = pts[k].z - pts[i].z;
        const double cross = (std::conj(b) * c).imag();
        if (std::abs(cross) <= eps * std::max(std::abs(b), std::abs(c))) continue;
        // Circumcenter relative to pts[i].
        const double b2 = std::norm(b);
        const double c2 = std::norm(c);
        const Complex center_rel =
            Complex(c.imag() * b2 - b.imag() * c2, b.real() * c2 - c.real() * b2) / (2.0 * cross);
        const Complex center = pts[i].z + center_rel;
        const double radius = std::abs(center_rel);
        int inside = 0;
        boundary.clear();
        for (int m = 0; m < n; ++m) {
          const double dist = std::abs(pts[m].z - center);
          if (dist < radius - eps) {
            inside += pts[m].f;
          } else if (dist <= radius + eps) {
            boundary.emplace_back(std::arg(pts[m].z - center), pts[m].f);
          }
        }
        std::sort(boundary.begin(), boundary.end());
        runs(inside, true);
      }
    }
  }
  return best;
}

std::vector<SignedPoint> signed_points(const ComplexMultiset& a, const ComplexMultiset& b) {
  std::vector<SignedPoint> pts;
  for (const auto& [z, f] : signed_support(a, b)) pts.push_back({z, f});
  return pts;
}

// Joint residual support on a curve, sorted by curve parameter.
std::vector<std::pair<double, int>> on_curve(const ComplexMultiset& a, const ComplexMultiset& b,
                                             const Curve& curve) {
  const double tol = std::max(joint_tol(a, b), 1e-12 * (1.0 + curve.radius()));
  for (const auto* ms : {&a, &b}) {
    for (const auto& e : ms->entries()) {
      if (!curve.contains(e.value, tol)) {
        fail(Errc::NotOnCurve, "support point off the curve");
      }
    }
  }
  std::vector<std::pair<double, int>> out;
  for (const auto& [z, f] : signed_support(a, b)) out.emplace_back(curve.parameter(z), f);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int dc_distance(const ComplexMultiset& a, const ComplexMultiset& b) {
  return disk_family_max(signed_points(a, b), false);
}

int tilde_dc_distance(const ComplexMultiset& a, const ComplexMultiset& b) {
  // Half-plane traces are limits of disk traces; disk complements contribute
  // total - (disk sum).
  return disk_family_max(signed_points(a, b), true);
}

int interval_dc(const ComplexMultiset& a, const ComplexMultiset& b, const Curve& curve) {
  const auto pts = on_curve(a, b, curve);
  const int r = static_cast<int>(pts.size());
  int total = 0;
  for (const auto& p : pts) total += p.second;
  int best = std::abs(total);
  const bool circle = curve.kind() == Curve::Kind::Circle;
  for (int start = 0; start < r; ++start) {
    int sum = 0;
    const int max_len = circle ? r : r - start;
    for (int len = 1; len <= max_len; ++len) {
      sum += pts[(start + len - 1) % r].second;
      best = std::max(best, std::abs(sum));
      if (!circle) best = std::max(best, std::abs(total - sum));
    }
  }
  return best;
}

bool interlacing_check(const ComplexMultiset& a, const ComplexMultiset& b, const Curve& curve) {
  if (a.cardinality() != b.cardinality()) {
    fail(Errc::PreconditionViolated, "interlacing_check: sizes differ");
  }
  for (const auto* ms : {&a, &b}) {
    for (const auto& e : ms->entries()) {
      if (e.count != 1) fail(Errc::PreconditionViolated, "interlacing_check: repeated value");
    }
  }
  if (!ms_common(a, b).empty()) {
    fail(Errc::PreconditionViolated, "interlacing_check: supports intersect");
  }
  const auto pts = on_curve(a, b, curve);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].second == pts[i - 1].second) return false;
  }
  return true;
}

ComplexMultiset mobius_apply_multiset(const MobiusMap& m, const ComplexMultiset& a) {
  std::vector<MultisetEntry> out;
  out.reserve(a.support_size());
  for (const auto& e : a.entries()) {
    if (m.has_finite_pole() && std::abs(m.a() * e.value + m.b()) <= 1e-14 * (std::abs(m.a() * e.value) + std::abs(m.b()))) {
      fail(Errc::PoleOnSupport, "mobius_apply_multiset: support point at the pole");
    }
    out.push_back({m(e.value), e.count});
  }
  return ComplexMultiset(std::move(out), a.merge_tol());
}

ComplexMultiset geodesic_step_on_curve(const ComplexMultiset& a, const ComplexMultiset& b,
                                       const Curve& curve) {
  const int k = interval_dc(a, b, curve);
  if (k <= 1) fail(Errc::DistanceTooSmall, "geodesic_step_on_curve: distance must be >= 2");

  const ComplexMultiset common = ms_common(a, b);
  const ComplexMultiset b_same = b.with_tolerance(a.merge_tol());
  const ComplexMultiset a_rest = ms_difference(a, b_same);
  const ComplexMultiset b_rest = ms_difference(b_same, a);

  // Gamma = set(A') + set(B') in cyclic order along the curve.
  struct Node {
    double t;
    Complex z;
    int count_a;
  };
  std::vector<Node> gamma;
  for (const auto& e : a_rest.entries()) gamma.push_back({curve.parameter(e.value), e.value, e.count});
  for (const auto& e : b_rest.entries()) gamma.push_back({curve.parameter(e.value), e.value, 0});
  std::sort(gamma.begin(), gamma.end(), [](const Node& x, const Node& y) { return x.t < y.t; });
  const double tol = a.merge_tol();
  for (std::size_t i = 1; i < gamma.size(); ++i) {
    if (std::abs(gamma[i].z - gamma[i - 1].z) <= tol) {
      fail(Errc::PreconditionViolated, "geodesic_step_on_curve: residual support points coincide");
    }
  }

  const int r = static_cast<int>(gamma.size());
  std::vector<MultisetEntry> c_entries = common.entries();
  for (int i = 0; i < r; ++i) {
    const Node& prev = gamma[(i + r - 1) % r];
    const int count = std::max(0, gamma[i].count_a - 1) + (prev.count_a > 0 ? 1 : 0);
    if (count > 0) c_entries.push_back({gamma[i].z, count});
  }
  ComplexMultiset c(std::move(c_entries), a.merge_tol());

  if (interval_dc(a, c, curve) != 1 || interval_dc(c, b, curve) != k - 1) {
    fail(Errc::CertificateFailed, "geodesic_step_on_curve: step does not split the distance");
  }
  return c;
}

std::vector<ComplexMultiset> geodesic_chain_on_curve(const ComplexMultiset& a,
                                                     const ComplexMultiset& b,
                                                     const Curve& curve) {
  if (a.cardinality() != b.cardinality()) {
    fail(Errc::PreconditionViolated, "geodesic_chain_on_curve: sizes differ");
  }
  std::vector<ComplexMultiset> chain{a};
  int k = interval_dc(a, b, curve);
  while (k >= 2) {
    chain.push_back(geodesic_step_on_curve(chain.back(), b, curve));
    --k;
  }
  if (k == 1) chain.push_back(b);
  return chain;
}

}  // namespace lowrank
