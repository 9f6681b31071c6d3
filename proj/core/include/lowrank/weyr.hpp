#pragma once

#include "lowrank/matrix.hpp"
#include "lowrank/multiset.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lowrank {

/// One eigenvalue's partition: Weyr heights eta_1 >= eta_2 >= ... > 0 or
/// Segre block sizes q_1 >= q_2 >= ... > 0.
struct PartitionRow {
  Complex lambda;
  std::vector<int> parts;

  friend bool operator==(const PartitionRow&, const PartitionRow&) = default;
};

namespace detail {

/// Shared storage for Weyr and Segre characteristics: rows sorted by
/// (Re, Im) of lambda, each a positive nonincreasing sequence. Eigenvalues
/// within `key_tol` of each other are treated as the same key.
class PartitionTable {
 public:
  PartitionTable() = default;
  PartitionTable(std::vector<PartitionRow> rows, double key_tol);

  const std::vector<PartitionRow>& rows() const noexcept { return rows_; }
  double key_tol() const noexcept { return key_tol_; }
  bool empty() const noexcept { return rows_.empty(); }
  /// Sum of all parts.
  int size() const noexcept;
  /// parts[i - 1] for the row matching lambda, 0 when absent.
  int at(Complex lambda, int i) const;
  const PartitionRow* find(Complex lambda, double tol) const;

 private:
  std::vector<PartitionRow> rows_;
  double key_tol_ = 0.0;
};

}  // namespace detail

/// (lambda, i) -> eta_i(lambda), the number of lambda-Jordan blocks of size
/// at least i.
class WeyrChar : public detail::PartitionTable {
 public:
  using PartitionTable::PartitionTable;
  int eta(Complex lambda, int i) const { return at(lambda, i); }
  friend bool operator==(const WeyrChar& x, const WeyrChar& y) { return x.rows() == y.rows(); }
};

/// Per eigenvalue, the nonincreasing list of Jordan block sizes.
class SegreChar : public detail::PartitionTable {
 public:
  using PartitionTable::PartitionTable;
  int q(Complex lambda, int i) const { return at(lambda, i); }
  friend bool operator==(const SegreChar& x, const SegreChar& y) { return x.rows() == y.rows(); }
};

/// Conjugate (transposed Ferrers diagram) of a partition.
std::vector<int> conjugate_partition(std::span<const int> parts);

SegreChar weyr_to_segre(const WeyrChar& w);
WeyrChar segre_to_weyr(const SegreChar& s);

struct WeyrOptions {
  /// Relative singular-value threshold for kernel dimensions.
  double rank_tol = kDefaultTol;
  /// Initial eigenvalue identification tolerance, relative to |A|.
  double merge_rel_tol = 1e-8;
  /// How many times the identification tolerance may grow tenfold before
  /// giving up with IllConditioned.
  int max_escalations = 4;
};

/// Weyr characteristic from kernel dimensions of (lambda E - A)^m. Eigenvalues
/// are clustered by single linkage; a clustering is accepted when clusters
/// are separated by at least ten times the tolerance and each cluster's
/// generalized eigenspace has exactly the cluster's size. Otherwise the
/// tolerance grows tenfold, up to `max_escalations` times.
WeyrChar weyr_from_matrix(const ComplexMatrix& a, const WeyrOptions& opts = {});

/// max over (i, lambda) of |eta_i(lambda) - mu_i(lambda)|; sizes may differ.
int weyr_distance(const WeyrChar& eta, const WeyrChar& mu);

struct WeyrStep {
  WeyrChar nu;
  /// True when the roles were exchanged (|S+| < |S-|), so that nu is one
  /// step from mu and k - 1 from eta.
  bool from_mu = false;
};

/// One step of the Im_n geodesic: subtract 1 on S+ = {eta - mu = k}, add 1 on
/// S- = {eta - mu = -k}. The result lives in Im_m with m <= n.
WeyrStep weyr_geodesic_step(const WeyrChar& eta, const WeyrChar& mu);

/// Extend mu in Im_m to Im_n by a tail of ones under the eigenvalue with the
/// largest eta_1 (ties: smallest (Re, Im)). Never increases the distance to
/// any element of Im_n.
WeyrChar weyr_pad(const WeyrChar& mu, int n);

/// eta = C_0, ..., C_k = mu inside Im_n with unit steps.
std::vector<WeyrChar> weyr_geodesic_chain(const WeyrChar& eta, const WeyrChar& mu);

/// Reachability by a rank <= k perturbation: same total size and
/// weyr_distance <= k.
bool thompson_reachable(const WeyrChar& eta_a, const WeyrChar& eta_b, int k);

/// q_1(B) >= q_2(A) >= q_3(B) >= ... and q_1(A) >= q_2(B) >= q_3(A) >= ...
/// for every eigenvalue.
bool segre_interlace_check(const SegreChar& s_a, const SegreChar& s_b);

struct Rank1Assignment {
  ComplexMatrix matrix;
  int perturbation_rank = 0;
  double krylov_condition = 0.0;
  int attempts = 0;
};

struct Rank1AssignOptions {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int max_attempts = 8;
  double max_krylov_condition = 1e12;
  WeyrOptions weyr{};
};

/// For nonderogatory A, a matrix A' with sp(A') = target and rank(A - A')
/// <= 1, built in the Krylov basis of a random cyclic vector where A is a
/// companion matrix and only its coefficient column changes.
Rank1Assignment rank1_assign_spectrum(const ComplexMatrix& a, const ComplexMultiset& target,
                                      const Rank1AssignOptions& opts = {});

/// Ferrers diagrams, one block per eigenvalue: row i holds q_i dots, column j
/// counts eta_j.
std::string ferrers_diagram(const WeyrChar& w);

}  // namespace lowrank
