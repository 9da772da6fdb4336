#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddstc/relays.hpp"
#include "ddstc/signal_sets.hpp"

namespace ddstc {

enum class DecoderKind { Exhaustive, Groupwise };
enum class ScaleTracking { Genie, DecisionDirected };

std::string to_string(DecoderKind kind);
std::string to_string(ScaleTracking tracking);

// One fading realization, constant over a frame. collapsed() is the effective
// end-to-end channel: f_j g_j on the direct branch, conj(f_j) g_j past half.
struct ChannelRealization {
  Eigen::VectorXcd f;
  Eigen::VectorXcd g;

  Eigen::VectorXcd collapsed(int half) const;
};

struct SimConfig {
  double power{100.0};                 // total linear power P against unit noise
  double pi1{0.5};                     // source share of P
  double pi2{0.125};                   // per-relay share of P
  int frame_cycles{20};                // codewords per fading realization, anchor included
  std::uint64_t total_cycles{200000};  // decoded codewords requested per run
  std::uint64_t seed{1};
  DecoderKind decoder{DecoderKind::Groupwise};
  ScaleTracking tracking{ScaleTracking::DecisionDirected};
  int threads{1};                      // 0 picks hardware concurrency
  bool zero_noise{false};              // debug: disables both noise injections

  void validate() const;
};

// Deterministic per-frame random stream: (seed, frame) fixes every draw, so
// counts do not depend on how frames are scheduled across threads.
class FrameRng {
 public:
  FrameRng(std::uint64_t seed, std::uint64_t frame);

  std::complex<double> complex_gaussian();  // CN(0, 1)
  Eigen::VectorXcd complex_gaussian_vector(Eigen::Index n);
  std::size_t uniform_index(std::size_t n);  // uniform on [0, n)

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct DecodeCounters {
  std::uint64_t metric_evaluations{0};
  std::uint64_t decodes{0};
};

struct SimResult {
  double snr_db{0};
  double power{0};
  std::uint64_t trials{0};
  std::uint64_t block_errors{0};
  std::array<std::uint64_t, 4> group_errors{};
  DecodeCounters counters;
  double seconds{0};

  double bler() const { return trials ? static_cast<double>(block_errors) / static_cast<double>(trials) : 0.0; }
  double group_rate(int k) const {
    return trials ? static_cast<double>(group_errors[static_cast<std::size_t>(k)]) / static_cast<double>(trials) : 0.0;
  }
};

// Complex copies of the relay matrices for the numeric path.
struct RelayBank {
  std::vector<Eigen::MatrixXcd> matrices;
  int half{0};

  static RelayBank from(const RelaySet& rs);
};

// s_t = (1/a_prev) U s_prev; a_prev must be positive.
Eigen::VectorXcd differential_encode(const Eigen::MatrixXcd& U, double a_prev,
                                     const Eigen::VectorXcd& s_prev);

// Two-stage amplify-and-forward pass. Stage 1: relay j hears sqrt(pi1 P) f_j s
// plus unit noise. Stage 2: relay j forwards its observation (conjugated past
// bank.half) through its matrix with gain sqrt(pi2 P / (pi1 P + 1)); the
// destination sums over g_j and adds unit noise. Draws per call, in order:
// v_1..v_R then w. With zero_noise set the pass is the exact closed form
// sqrt(pi1 pi2 P^2 / (pi1 P + 1)) X(s) collapsed(half).
Eigen::VectorXcd relay_channel(const Eigen::VectorXcd& s, const ChannelRealization& ch,
                               const RelayBank& bank, const SimConfig& cfg, FrameRng& rng);

// Brute-force argmin of ||y_t - (1/a_prev) U y_prev|| over the codebook.
// Ties resolve to the lowest entry index.
std::size_t decode_exhaustive(const Eigen::VectorXcd& y_t, const Eigen::VectorXcd& y_prev,
                              double a_prev, const Codebook& cb,
                              DecodeCounters* counters = nullptr);

// Independent minimization of the same metric per group. Scaled unitarity
// makes the quadratic term separable, so the composed argmin matches the
// exhaustive decoder, ties included: per-group lowest point index composes to
// the lowest entry index under the codebook's lexicographic entry order.
std::size_t decode_groupwise(const Eigen::VectorXcd& y_t, const Eigen::VectorXcd& y_prev,
                             double a_prev, const Codebook& cb,
                             DecodeCounters* counters = nullptr);

// Monte Carlo run at one power point. Every frame draws a fresh channel,
// re-anchors with the reference transmission, then encodes, transmits, and
// decodes frame_cycles - 1 codewords. The scale fed to the decoder is the
// true previous scale under genie tracking and the previously decoded one
// under decision-directed tracking. Identical (seed, config) gives identical
// counts for any thread count.
SimResult run_simulation(const SimConfig& cfg, const Codebook& cb, const RelayBank& bank);

double snr_db_to_power(double snr_db);
double default_pi2(int relay_count);

}  // namespace ddstc
