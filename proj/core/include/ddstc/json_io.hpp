#pragma once

#include <string>

#include <Eigen/Dense>

#include "ddstc/design.hpp"
#include "ddstc/relays.hpp"
#include "ddstc/signal_sets.hpp"

namespace ddstc {

// All matrix payloads serialize as arrays of rows, each entry an
// {"re": .., "im": ..} object.
std::string matrix_to_json(const Eigen::MatrixXcd& m, int indent = -1);
std::string matrix_to_json(const ExactMatrix& m, int indent = -1);

// Everything construct produces for one R: design pattern and weights, relay
// matrices with the monomials behind them, and the reference transmission.
std::string construction_to_json(const LinearDesign& design, const RelaySet& rs,
                                 const InitialState& init, int indent = 2);

// Symbol vectors, scales, and the generating sets; codeword matrices are
// reconstructed on load.
std::string codebook_to_json(const Codebook& cb, int indent = -1);

// Rebuilds the codebook from its generating data and cross-checks the stored
// entries against the rebuilt ones. Throws on any mismatch.
Codebook codebook_from_json(const std::string& text);

std::string min_distance_to_json(const Codebook& cb, const MinDistanceResult& r, int indent = 2);

}  // namespace ddstc
