#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "ddstc/relays.hpp"
#include "ddstc/signal_sets.hpp"
#include "ddstc/simulator.hpp"

using namespace ddstc;

namespace {

Codebook default_codebook(int relays) {
  const double amps[] = {1.0};
  std::vector<GroupSignalSet> sets(4, build_axis_signal_set(relays / 2, amps));
  return build_codebook(build_design(relays), group_partition(relays), std::move(sets));
}

RelayBank default_bank(int lambda) { return RelayBank::from(build_relay_matrices(RepContext(lambda))); }

ChannelRealization random_channel(int relays, FrameRng& rng) {
  ChannelRealization ch;
  ch.f = rng.complex_gaussian_vector(relays);
  ch.g = rng.complex_gaussian_vector(relays);
  return ch;
}

Eigen::MatrixXcd design_at_entry(const Codebook& cb, std::size_t entry) {
  const int R = cb.design().relay_count();
  std::vector<std::complex<double>> symbols(static_cast<std::size_t>(R));
  const auto& x = cb.entries()[entry].symbols;
  for (int k = 0; k < R; ++k)
    symbols[static_cast<std::size_t>(k)] = {x[static_cast<std::size_t>(2 * k)],
                                            x[static_cast<std::size_t>(2 * k + 1)]};
  return cb.design().evaluate_symbols(symbols);
}

}  // namespace

TEST_CASE("enum names") {
  CHECK(to_string(DecoderKind::Exhaustive) == "exhaustive");
  CHECK(to_string(DecoderKind::Groupwise) == "groupwise");
  CHECK(to_string(ScaleTracking::Genie) == "genie");
  CHECK(to_string(ScaleTracking::DecisionDirected) == "decision_directed");
}

TEST_CASE("power conversions") {
  CHECK(snr_db_to_power(20.0) == doctest::Approx(100.0));
  CHECK(snr_db_to_power(0.0) == doctest::Approx(1.0));
  CHECK(default_pi2(4) == doctest::Approx(0.125));
  CHECK(default_pi2(8) == doctest::Approx(0.0625));
}

TEST_CASE("config validation") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  SimConfig bad = cfg;
  bad.pi1 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.pi2 = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.frame_cycles = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.total_cycles = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.power = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.threads = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("per frame random streams are reproducible and distinct") {
  FrameRng a(42, 7);
  FrameRng b(42, 7);
  FrameRng c(42, 8);
  bool all_equal = true;
  bool any_equal_c = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.complex_gaussian();
    const auto vb = b.complex_gaussian();
    const auto vc = c.complex_gaussian();
    all_equal &= va == vb;
    any_equal_c |= va == vc;
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_c);

  FrameRng d(42, 7);
  const auto vec = d.complex_gaussian_vector(4);
  CHECK(vec.size() == 4);
  FrameRng e(42, 7);
  CHECK(vec(0) == e.complex_gaussian());
}

TEST_CASE("differential encoding keeps the scale chain aligned") {
  const Codebook cb = default_codebook(4);
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(4);
  s(0) = 1.0;
  double a_prev = 1.0;
  FrameRng rng(11, 0);
  for (int t = 0; t < 6; ++t) {
    const auto& entry = cb.entries()[rng.uniform_index(cb.size())];
    s = differential_encode(entry.matrix, a_prev, s);
    a_prev = entry.scale;
    CHECK(s.norm() == doctest::Approx(entry.scale).epsilon(1e-12));
  }
  CHECK_THROWS_AS(differential_encode(cb.entries()[0].matrix, 0.0, s), std::invalid_argument);
}

TEST_CASE("zero noise channel equals the collapsed closed form") {
  const Codebook cb = default_codebook(4);
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.power = snr_db_to_power(18.0);
  cfg.zero_noise = true;

  const double gain = std::sqrt(cfg.pi1 * cfg.pi2 * cfg.power * cfg.power / (cfg.pi1 * cfg.power + 1.0));
  FrameRng rng(99, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelRealization ch = random_channel(4, rng);
    const std::size_t k = rng.uniform_index(cb.size());
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(4);
    s(0) = 1.0;
    s = differential_encode(cb.entries()[k].matrix, 1.0, s);

    const Eigen::VectorXcd y = relay_channel(s, ch, bank, cfg, rng);
    const Eigen::MatrixXcd X = design_at_entry(cb, k);
    Eigen::MatrixXcd Xs(4, 4);
    for (int j = 0; j < 4; ++j)
      Xs.col(j) = bank.matrices[static_cast<std::size_t>(j)] * (j < bank.half ? s : s.conjugate());
    const Eigen::VectorXcd expected = gain * Xs * ch.collapsed(bank.half);
    CHECK((y - expected).cwiseAbs().maxCoeff() <= 1e-10);
    // The block spanned by the relay matrices is the design evaluated at the
    // encoded symbols only in the first differential step; both readings of
    // the codeword must agree there.
    const Eigen::VectorXcd via_design = gain * X * ch.collapsed(bank.half);
    CHECK((y - via_design).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("destination noise variance composes the relay and receiver parts") {
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.power = snr_db_to_power(15.0);

  FrameRng channel_rng(5, 1);
  const ChannelRealization ch = random_channel(4, channel_rng);
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(4);
  s(0) = 1.0;

  SimConfig quiet = cfg;
  quiet.zero_noise = true;
  FrameRng quiet_rng(6, 2);
  const Eigen::VectorXcd mean = relay_channel(s, ch, bank, quiet, quiet_rng);

  const double amp2_sq = cfg.pi2 * cfg.power / (cfg.pi1 * cfg.power + 1.0);
  const double expected = amp2_sq * ch.g.cwiseAbs2().sum() + 1.0;

  FrameRng rng(6, 2);
  double acc = 0.0;
  const int trials = 25000;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXcd y = relay_channel(s, ch, bank, cfg, rng);
    acc += (y - mean).cwiseAbs2().sum();
  }
  const double measured = acc / (4.0 * trials);
  CHECK(std::abs(measured - expected) <= 0.05 * expected);
}

TEST_CASE("decoders agree and count their metric evaluations") {
  const Codebook cb = default_codebook(4);
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.power = snr_db_to_power(15.0);

  FrameRng rng(2024, 0);
  DecodeCounters exhaustive_counters;
  DecodeCounters groupwise_counters;
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const ChannelRealization ch = random_channel(4, rng);
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(4);
    s(0) = 1.0;
    const Eigen::VectorXcd y_prev = relay_channel(s, ch, bank, cfg, rng);

    const std::size_t sent = rng.uniform_index(cb.size());
    const Eigen::VectorXcd s_next = differential_encode(cb.entries()[sent].matrix, 1.0, s);
    const Eigen::VectorXcd y_t = relay_channel(s_next, ch, bank, cfg, rng);

    const std::size_t a = decode_exhaustive(y_t, y_prev, 1.0, cb, &exhaustive_counters);
    const std::size_t b = decode_groupwise(y_t, y_prev, 1.0, cb, &groupwise_counters);
    CHECK(a == b);
    ++checked;
  }
  CHECK(exhaustive_counters.decodes == static_cast<std::uint64_t>(checked));
  CHECK(exhaustive_counters.metric_evaluations == 256ull * static_cast<std::uint64_t>(checked));
  CHECK(groupwise_counters.metric_evaluations == 16ull * static_cast<std::uint64_t>(checked));
}

TEST_CASE("exact reconstruction decodes to the sent codeword") {
  const Codebook cb = default_codebook(4);
  FrameRng rng(31, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t sent = rng.uniform_index(cb.size());
    const Eigen::VectorXcd y_prev = rng.complex_gaussian_vector(4);
    const double a_prev = 1.0;
    const Eigen::VectorXcd y_t = cb.entries()[sent].matrix * y_prev / a_prev;
    CHECK(decode_exhaustive(y_t, y_prev, a_prev, cb) == sent);
    CHECK(decode_groupwise(y_t, y_prev, a_prev, cb) == sent);
  }
}

TEST_CASE("full ties resolve to the lowest entry index") {
  const Codebook cb = default_codebook(4);
  // A zero previous observation erases the metric differences entirely; every
  // codeword scores the same and the first entry must win in both decoders.
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(4);
  FrameRng rng(8, 8);
  const Eigen::VectorXcd y_t = rng.complex_gaussian_vector(4);
  CHECK(decode_exhaustive(y_t, zero, 1.0, cb) == 0);
  CHECK(decode_groupwise(y_t, zero, 1.0, cb) == 0);
  // A zero observation after a basis-vector one also ties every codeword
  // exactly: each metric is a sum of the same power-of-two squares.
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(4);
  e1(0) = 1.0;
  CHECK(decode_exhaustive(zero, e1, 1.0, cb) == 0);
  CHECK(decode_groupwise(zero, e1, 1.0, cb) == 0);
}

TEST_CASE("zero noise runs make no block errors") {
  const Codebook cb = default_codebook(4);
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.power = snr_db_to_power(10.0);
  cfg.total_cycles = 1000;
  cfg.zero_noise = true;
  cfg.seed = 3;
  for (const auto tracking : {ScaleTracking::Genie, ScaleTracking::DecisionDirected}) {
    for (const auto decoder : {DecoderKind::Exhaustive, DecoderKind::Groupwise}) {
      cfg.tracking = tracking;
      cfg.decoder = decoder;
      const SimResult r = run_simulation(cfg, cb, bank);
      CHECK(r.trials >= cfg.total_cycles);
      CHECK(r.block_errors == 0);
      CHECK(r.bler() == 0.0);
      for (int k = 0; k < 4; ++k) CHECK(r.group_errors[static_cast<std::size_t>(k)] == 0);
    }
  }
}

TEST_CASE("trials round up to whole frames") {
  const Codebook cb = default_codebook(4);
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.total_cycles = 100;
  cfg.frame_cycles = 20;
  cfg.zero_noise = true;
  const SimResult r = run_simulation(cfg, cb, bank);
  CHECK(r.trials == 114);  // 6 frames of 19 decoded codewords
}

TEST_CASE("simulation results are reproducible and thread count invariant") {
  const Codebook cb = default_codebook(4);
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.power = snr_db_to_power(12.0);
  cfg.total_cycles = 4000;
  cfg.seed = 77;

  cfg.threads = 1;
  const SimResult serial = run_simulation(cfg, cb, bank);
  const SimResult repeat = run_simulation(cfg, cb, bank);
  cfg.threads = 4;
  const SimResult parallel = run_simulation(cfg, cb, bank);

  CHECK(serial.trials == repeat.trials);
  CHECK(serial.block_errors == repeat.block_errors);
  CHECK(serial.group_errors == repeat.group_errors);
  CHECK(serial.trials == parallel.trials);
  CHECK(serial.block_errors == parallel.block_errors);
  CHECK(serial.group_errors == parallel.group_errors);
  CHECK(serial.block_errors > 0);  // moderate power, noise on
}

TEST_CASE("decoder choice does not change the error counts") {
  const Codebook cb = default_codebook(4);
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.power = snr_db_to_power(14.0);
  cfg.total_cycles = 3000;
  cfg.seed = 5;

  cfg.decoder = DecoderKind::Exhaustive;
  const SimResult brute = run_simulation(cfg, cb, bank);
  cfg.decoder = DecoderKind::Groupwise;
  const SimResult grouped = run_simulation(cfg, cb, bank);

  CHECK(brute.block_errors == grouped.block_errors);
  CHECK(brute.group_errors == grouped.group_errors);
  CHECK(brute.counters.metric_evaluations == 256 * brute.trials);
  CHECK(grouped.counters.metric_evaluations == 16 * grouped.trials);
}

TEST_CASE("genie and decision directed tracking agree at high power") {
  const Codebook cb = default_codebook(4);
  const RelayBank bank = default_bank(2);
  SimConfig cfg;
  cfg.power = snr_db_to_power(25.0);
  cfg.total_cycles = 40000;
  cfg.seed = 13;
  cfg.threads = 0;

  cfg.tracking = ScaleTracking::Genie;
  const SimResult genie = run_simulation(cfg, cb, bank);
  cfg.tracking = ScaleTracking::DecisionDirected;
  const SimResult dd = run_simulation(cfg, cb, bank);

  CHECK(genie.trials == dd.trials);
  // Unit-scale codebook: the tracked scale equals the true scale whatever was
  // decided, so the runs must match exactly.
  CHECK(genie.block_errors == dd.block_errors);
  CHECK(genie.group_errors == dd.group_errors);
}

TEST_CASE("tracking styles stay close when scales genuinely vary") {
  const double amps[] = {0.5, 1.0};
  std::vector<GroupSignalSet> sets(4, build_axis_signal_set(2, amps));
  const Codebook cb = build_codebook(build_design(4), group_partition(4), std::move(sets));
  const RelayBank bank = default_bank(2);

  SimConfig cfg;
  cfg.power = snr_db_to_power(28.0);
  cfg.total_cycles = 40000;
  cfg.seed = 21;
  cfg.threads = 0;

  cfg.tracking = ScaleTracking::Genie;
  const SimResult genie = run_simulation(cfg, cb, bank);
  cfg.tracking = ScaleTracking::DecisionDirected;
  const SimResult dd = run_simulation(cfg, cb, bank);

  CHECK(genie.trials == dd.trials);
  // Scale mistracking only follows decision errors, so at high power the two
  // error rates must sit within Monte Carlo spread of each other.
  const double slack = 3.0 * std::sqrt(static_cast<double>(genie.block_errors) + 1.0) + 10.0;
  CHECK(static_cast<double>(dd.block_errors) <=
        static_cast<double>(genie.block_errors) * 2.0 + slack);
  CHECK(static_cast<double>(dd.block_errors) + slack >= static_cast<double>(genie.block_errors));
}
