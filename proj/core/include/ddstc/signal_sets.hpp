#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddstc/design.hpp"

namespace ddstc {

// Finite set of real points for one decoding group.
struct GroupSignalSet {
  int dim{0};
  std::vector<std::vector<double>> points;

  std::size_t size() const { return points.size(); }
  bool axis_structured() const;  // every point has at most one nonzero coordinate
};

// Points amp * e_c (and -amp * e_c when include_negative) for every axis c and
// amplitude. Amplitudes must be positive and pairwise distinct.
GroupSignalSet build_axis_signal_set(int dim, std::span<const double> amplitudes,
                                     bool include_negative = true);

struct ScaleCheck {
  bool ok{false};
  double scale{0};          // a, taken from the leading diagonal of U^H U
  double max_deviation{0};  // max abs entry of U^H U - a^2 I
};

// Scaled-unitarity test: U^H U == a^2 I within absolute tolerance tol, a > 0.
ScaleCheck verify_scaled_unitary(const Eigen::MatrixXcd& U, double tol = 1e-12);

struct CodebookEntry {
  std::vector<double> symbols;      // normalized x, length K
  Eigen::MatrixXcd matrix;          // S(x)
  double scale{0};                  // a with U^H U = a^2 I
  std::array<int, 4> group_points;  // chosen point index per group
};

// Enumerated codebook over the Cartesian product of four group signal sets,
// rescaled so the mean squared codeword scale hits a target (1 by default).
// Entries are ordered lexicographically in group point indices with group 1
// most significant; the decoders' tie-breaking relies on that order.
class Codebook {
 public:
  Codebook(LinearDesign design, GroupPartition partition, std::vector<GroupSignalSet> sets,
           std::vector<GroupSignalSet> normalized_sets, std::vector<CodebookEntry> entries,
           std::vector<int> flat_to_entry, double normalization);

  const LinearDesign& design() const { return design_; }
  const GroupPartition& partition() const { return partition_; }
  std::span<const GroupSignalSet> group_sets() const { return sets_; }
  std::span<const GroupSignalSet> normalized_group_sets() const { return normalized_sets_; }
  std::span<const CodebookEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double normalization() const { return normalization_; }  // divisor applied to symbols
  double bits_per_codeword() const;
  int entry_index(const std::array<int, 4>& group_points) const;  // -1 if absent

 private:
  LinearDesign design_;
  GroupPartition partition_;
  std::vector<GroupSignalSet> sets_;
  std::vector<GroupSignalSet> normalized_sets_;
  std::vector<CodebookEntry> entries_;
  std::vector<int> flat_to_entry_;
  double normalization_{1.0};
};

// Validated construction: every enumerated codeword must pass the
// scaled-unitarity check at tol and codeword matrices must be pairwise
// distinct; the all-zero symbol combination is excluded.
Codebook build_codebook(const LinearDesign& design, const GroupPartition& partition,
                        std::vector<GroupSignalSet> sets, double target_mean_square = 1.0,
                        double tol = 1e-12);

struct MinDistanceResult {
  double value{0};
  std::size_t first{0};
  std::size_t second{0};
};

// Minimum pairwise Frobenius distance; needs at least two codewords.
MinDistanceResult min_distance(std::span<const Eigen::MatrixXcd> codewords);
MinDistanceResult min_distance(const Codebook& cb);

}  // namespace ddstc
