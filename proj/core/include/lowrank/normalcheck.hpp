#pragma once

#include "lowrank/matrix.hpp"

#include <algorithm>
#include <cstdint>

namespace lowrank {

/// The closed disk |x - lambda| <= epsilon.
struct RegionDimQuery {
  Complex lambda;
  double epsilon = 0.0;
};

/// dim of the span of eigenvectors with eigenvalue in the disk, i.e. the
/// number of eigenvalues there counted with multiplicity. Throws NotNormal.
int region_dim(const ComplexMatrix& a, const RegionDimQuery& q, double tol = kDefaultTol);

struct Th4Report {
  int n = 0;
  /// arithmetic_distance(A, B).
  int rank = 0;
  long queries = 0;
  /// max over queried disks of |dim R(A) - dim R(B)|.
  int max_dim_gap = 0;
  /// dc(sp(A), sp(B)).
  int dc = 0;

  bool dim_bound_holds() const noexcept { return max_dim_gap <= rank; }
  bool dc_bound_holds() const noexcept { return dc <= rank; }
  /// rank - max(max_dim_gap, dc); negative means a violation.
  int slack() const noexcept { return rank - std::max(max_dim_gap, dc); }
};

/// Compares dim R(A, lambda, eps) and dim R(B, lambda, eps) on every disk
/// centred at an eigenvalue of A or B whose radius lies strictly between two
/// consecutive distances to the other eigenvalues. Eigenvalues closer than
/// 1e-9 of the spectral scale are treated as equal. Throws NotNormal,
/// DimensionMismatch.
Th4Report th4_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol);

struct ProjectionReport {
  int vectors_checked = 0;
  /// min over checked x of |P x| / |x| - sqrt(1 - 1/a^2).
  double min_margin = 0.0;
  /// max over the span of |(N - lambda) x| / |x|.
  double hypothesis_residual = 0.0;
  bool holds() const noexcept { return min_margin >= -1e-12; }
};

/// Checks |P x| >= sqrt(1 - 1/a^2) |x|, with P the spectral projector of N for
/// the disk |z - lambda| <= a * epsilon, on the columns of `basis` and on
/// `samples` random unit vectors of their span. The hypothesis
/// |(N - lambda) x| <= epsilon |x| is verified on the whole span (throws
/// HypothesisViolated). Throws NotNormal, InvalidArgument for a <= 1.
ProjectionReport projection_bound_check(const ComplexMatrix& n, const ComplexMatrix& basis,
                                        Complex lambda, double epsilon, double a,
                                        double tol = kDefaultTol, std::uint64_t seed = 0,
                                        int samples = 32);

struct Th4HarnessOptions {
  long trials = 10000;
  int n_max = 32;
  int k_max = 4;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

struct Th4HarnessReport {
  long trials = 0;
  long dim_violations = 0;
  long dc_violations = 0;
  /// Smallest slack seen over all trials.
  int worst_slack = 0;
  long total_queries = 0;
  int max_rank = 0;
  std::uint64_t seed = 0;
};

/// Random commuting normal pairs U D1 U^*, U D2 U^* (n uniform in [2, n_max],
/// k uniform in [0, min(k_max, n)], continuous or Gaussian-integer diagonals
/// alternating), each checked with th4_check. Trial t uses its own derived
/// seed, so the report depends only on the options.
Th4HarnessReport th4_harness(const Th4HarnessOptions& opts);

}  // namespace lowrank
