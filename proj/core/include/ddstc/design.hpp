#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ddstc/algebra.hpp"
#include "ddstc/exact.hpp"

namespace ddstc {

struct GroupSignalSet;  // signal_sets.hpp

// One symbolic entry of a design: sign * s_k or sign * conj(s_k), k 1-based.
struct PatternEntry {
  int symbol{0};
  bool conjugated{false};
  int sign{1};

  friend bool operator==(const PatternEntry&, const PatternEntry&) = default;

  std::string to_string() const;                    // "s1", "-s5*", "s3*"
  static PatternEntry parse(std::string_view text);
};

// Square matrix S(x) = sum_i x_i B_i in K = 2R real variables, with weight
// matrix entries confined to {0, +-1, +-i}. Every matrix entry reads
// sign * s_k or sign * conj(s_k) where s_k = x_{2k-1} + i x_{2k} (1-based).
class LinearDesign {
 public:
  LinearDesign(int relay_count, std::vector<ExactMatrix> weights,
               std::vector<std::vector<PatternEntry>> pattern);

  int relay_count() const { return relays_; }
  int variable_count() const { return 2 * relays_; }  // K
  int symbol_count() const { return relays_; }

  const ExactMatrix& weight(int i) const { return weights_.at(static_cast<std::size_t>(i)); }
  std::span<const ExactMatrix> weights() const { return weights_; }
  const std::vector<std::vector<PatternEntry>>& pattern() const { return pattern_; }

  Eigen::MatrixXcd evaluate(std::span<const double> x) const;
  ExactMatrix evaluate_exact(std::span<const std::int64_t> x) const;
  Eigen::MatrixXcd evaluate_symbols(std::span<const std::complex<double>> s) const;

  friend bool operator==(const LinearDesign& a, const LinearDesign& b) {
    return a.relays_ == b.relays_ && a.weights_ == b.weights_;
  }

 private:
  int relays_;
  std::vector<ExactMatrix> weights_;
  std::vector<std::vector<PatternEntry>> pattern_;
};

// Closed-form constructor: with M = R/2, the (r, c) entry is s_{(r xor c)+1}
// over s_1..s_M on the top-left block, the same pattern over s_{M+1}..s_R on
// the bottom-left block, and the right half carries -conj / +conj of those
// blocks so that columns read [A -B*; B A*]. R must be a power of two >= 4.
LinearDesign build_design(int relay_count);

// Same design assembled from the relay matrices: column j is A_j s for
// j <= R/2 and A_j conj(s) beyond. Agrees with build_design weight for weight.
LinearDesign build_design_algebraic(const RepContext& ctx);

// Variable indices (0-based into x) of the four decoding groups.
struct GroupPartition {
  std::array<std::vector<int>, 4> groups;

  int variable_count() const;
  int group_of(int variable) const;  // -1 if absent
};

// Canonical partition: reals of s_1..s_M, imaginaries of s_1..s_M, reals of
// s_{M+1}..s_R, imaginaries of s_{M+1}..s_R.
GroupPartition group_partition(int relay_count);

struct GroupCoupling {
  int var_i{0};
  int var_j{0};
  bool cross_group{false};
};

struct GroupDecodabilityReport {
  std::vector<GroupCoupling> couplings;     // quadratic cross terms alive on the signal set
  std::vector<int> non_unitary_weights;     // i with B_i^H B_i != I

  bool ok() const { return couplings.empty() && non_unitary_weights.empty(); }
  std::string summary() const;
};

// Checks that S(X)^H S(X) collapses to (sum_i x_i^2) I on the admissible set:
// every weight is unitary and every surviving symmetrized cross product
// B_i^H B_j + B_j^H B_i either vanishes or pairs variables whose product is
// identically zero on the group's signal set. The linear metric term is
// separable per variable for any linear design, so decodability reduces to
// this quadratic check.
GroupDecodabilityReport verify_group_decodable(const LinearDesign& design,
                                               const GroupPartition& partition,
                                               std::span<const GroupSignalSet> group_sets);

}  // namespace ddstc
