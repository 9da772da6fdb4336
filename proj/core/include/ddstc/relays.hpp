#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddstc/algebra.hpp"
#include "ddstc/design.hpp"
#include "ddstc/exact.hpp"

namespace ddstc {

// The R unitary matrices assigned to the relays. The first half act on the
// received vector directly, the second half on its conjugate.
struct RelaySet {
  std::vector<ExactMatrix> matrices;
  std::vector<AlgebraElement> elements;  // monomials the matrices represent
  int half{0};                           // M = R/2
  LinkerFamily family{LinkerFamily::Gamma2};

  int relay_count() const { return static_cast<int>(matrices.size()); }
  std::vector<Eigen::MatrixXcd> complex_matrices() const;
};

// A_1..A_M are the images of the delta monomials (central, so they commute
// with every codeword); A_{M+1}..A_R are the images of the conjugate linkers.
// For the default family the matrices are real signed permutations.
RelaySet build_relay_matrices(const RepContext& ctx, LinkerFamily family = LinkerFamily::Gamma2);

struct ConditionViolation {
  int relay_index{0};       // 0-based
  bool conjugate_branch{false};
  std::vector<std::int64_t> witness;  // symbol vector at which the identity broke
  int row{0};
  int col{0};
};

struct ConditionReport {
  int trials{0};
  std::uint64_t checks{0};
  std::uint64_t violation_count{0};
  std::vector<ConditionViolation> violations;  // first few, see violation_count

  bool ok() const { return violation_count == 0; }
  std::string summary() const;
};

// Exact check on random integer symbol vectors that A_i S(x) == S(x) A_i for
// the first half of the relays and A_i conj(S(x)) == S(x) A_i for the rest.
ConditionReport verify_conditions(const RelaySet& rs, const LinearDesign& design, int trials,
                                  std::uint64_t seed = 0x5eedc0deULL);

struct InitialState {
  Eigen::VectorXcd s0;  // first canonical basis vector
  ExactMatrix X0;       // [A_1 s0 .. A_M s0, A_{M+1} conj(s0) .. A_R conj(s0)]
  double a0{1.0};
};

// Reference transmission that anchors each differential frame. Throws if X0
// fails exact unitarity, which would indicate a construction bug.
InitialState initial_state(const RelaySet& rs);

}  // namespace ddstc
