#pragma once

#include "lowrank/matrix.hpp"

#include <span>
#include <utility>
#include <vector>

namespace lowrank {

struct MultisetEntry {
  Complex value;
  int count = 0;

  friend bool operator==(const MultisetEntry&, const MultisetEntry&) = default;
};

/// Finite multiset of complex numbers. Values closer than `merge_tol` are
/// identified (single-linkage clustering, representative = weighted mean), so
/// stored values are pairwise farther apart than `merge_tol`. Entries are kept
/// sorted by (Re, Im).
class ComplexMultiset {
 public:
  explicit ComplexMultiset(double merge_tol = 0.0);
  ComplexMultiset(std::span<const Complex> values, double merge_tol);
  ComplexMultiset(std::vector<MultisetEntry> entries, double merge_tol);

  /// Multiset of eigenvalues with merge_tol = rel_tol * max|lambda|.
  static ComplexMultiset from_spectrum(const ComplexVector& eigs, double rel_tol = 1e-8);

  const std::vector<MultisetEntry>& entries() const noexcept { return entries_; }
  double merge_tol() const noexcept { return merge_tol_; }
  bool empty() const noexcept { return entries_.empty(); }
  int cardinality() const noexcept;
  std::size_t support_size() const noexcept { return entries_.size(); }

  /// Multiplicity of the stored value within merge_tol of x (0 if none).
  int multiplicity(Complex x) const;

  /// Values expanded by multiplicity, in entry order.
  std::vector<Complex> values() const;

  /// Re-cluster under a different identification tolerance.
  ComplexMultiset with_tolerance(double merge_tol) const;

  /// Same support (within the larger merge_tol) and the same counts.
  bool same_as(const ComplexMultiset& other) const;

 private:
  void normalize();

  std::vector<MultisetEntry> entries_;
  double merge_tol_ = 0.0;
};

/// chi_{A\B}(x) = max(0, chi_A(x) - chi_B(x)). Requires equal merge_tol.
ComplexMultiset ms_difference(const ComplexMultiset& a, const ComplexMultiset& b);

/// chi_{A+B}(x) = chi_A(x) + chi_B(x), identified at the larger merge_tol.
ComplexMultiset ms_union(const ComplexMultiset& a, const ComplexMultiset& b);

/// A \ (A \ B): the part shared by both, with multiplicity min(chi_A, chi_B).
ComplexMultiset ms_common(const ComplexMultiset& a, const ComplexMultiset& b);

class Region {
 public:
  enum class Kind { Disk, DiskComplement, HalfPlane };

  /// {x : |x - center| <= radius}
  static Region disk(Complex center, double radius);
  /// {x : |x - center| >= radius}
  static Region disk_complement(Complex center, double radius);
  /// {x : Im((x - b) / a) >= 0}
  static Region half_plane(Complex a, Complex b);

  Kind kind() const noexcept { return kind_; }
  /// Closed-region membership; `slack` widens the boundary.
  bool contains(Complex x, double slack = 0.0) const;

 private:
  Region(Kind kind, Complex p, Complex q, double radius) : kind_(kind), p_(p), q_(q), radius_(radius) {}

  Kind kind_;
  Complex p_;  // center, or a for half-planes
  Complex q_;  // b for half-planes
  double radius_;
};

ComplexMultiset ms_intersect_region(const ComplexMultiset& a, const Region& s);

/// A straight line {point + t * direction} or a circle |x - center| = radius.
class Curve {
 public:
  enum class Kind { Line, Circle };

  static Curve line(Complex point, Complex direction);
  static Curve circle(Complex center, double radius);
  static Curve real_line() { return line(0.0, 1.0); }
  static Curve unit_circle() { return circle(0.0, 1.0); }

  Kind kind() const noexcept { return kind_; }
  Complex point() const noexcept { return p_; }
  Complex direction() const noexcept { return dir_; }
  Complex center() const noexcept { return p_; }
  double radius() const noexcept { return radius_; }

  /// Distance from x to the curve.
  double distance(Complex x) const;
  bool contains(Complex x, double tol) const { return distance(x) <= tol; }

  /// Coordinate along the curve: arc parameter t for lines, angle in
  /// [0, 2 pi) measured anticlockwise for circles.
  double parameter(Complex x) const;
  Complex at(double t) const;

 private:
  Curve(Kind kind, Complex p, Complex dir, double radius) : kind_(kind), p_(p), dir_(dir), radius_(radius) {}

  Kind kind_;
  Complex p_;
  Complex dir_;  // unit direction for lines
  double radius_;
};

/// max over closed disks S of ||A cap S| - |B cap S||.
int dc_distance(const ComplexMultiset& a, const ComplexMultiset& b);

/// Same maximum over closed disks, closed disk complements and closed
/// half-planes.
int tilde_dc_distance(const ComplexMultiset& a, const ComplexMultiset& b);

/// Exact tilde-dc for multisets supported on one line or circle, by
/// enumerating arcs (segments, rays and their complements on a line) with
/// endpoints in the joint support. Throws NotOnCurve.
int interval_dc(const ComplexMultiset& a, const ComplexMultiset& b, const Curve& curve);

/// Strict alternation of two equal-size simple multisets on a curve.
bool interlacing_check(const ComplexMultiset& a, const ComplexMultiset& b, const Curve& curve);

/// Image under a scalar Moebius map, multiplicities preserved. Throws
/// PoleOnSupport when a support point sits at the pole.
ComplexMultiset mobius_apply_multiset(const MobiusMap& m, const ComplexMultiset& a);

/// One geodesic step on a curve: C with tilde_dc(A, C) = 1 and
/// tilde_dc(C, B) = k - 1, where k = tilde_dc(A, B) >= 2. Each point of
/// A \ B moves to its successor in the cyclic order of the joint residual
/// support.
ComplexMultiset geodesic_step_on_curve(const ComplexMultiset& a, const ComplexMultiset& b,
                                       const Curve& curve);

/// A = C_0, ..., C_k = B with unit steps, k = tilde_dc(A, B).
std::vector<ComplexMultiset> geodesic_chain_on_curve(const ComplexMultiset& a,
                                                     const ComplexMultiset& b,
                                                     const Curve& curve);

/// Joint support with signed multiplicity chi_A - chi_B, zeros dropped.
std::vector<std::pair<Complex, int>> signed_support(const ComplexMultiset& a,
                                                    const ComplexMultiset& b);

}  // namespace lowrank
