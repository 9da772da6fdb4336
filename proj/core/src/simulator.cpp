#include "ddstc/simulator.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ddstc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::string to_string(DecoderKind kind) {
  return kind == DecoderKind::Exhaustive ? "exhaustive" : "groupwise";
}

std::string to_string(ScaleTracking tracking) {
  return tracking == ScaleTracking::Genie ? "genie" : "decision_directed";
}

Eigen::VectorXcd ChannelRealization::collapsed(int half) const {
  if (f.size() != g.size()) throw std::invalid_argument("channel vector sizes disagree");
  Eigen::VectorXcd h(f.size());
  for (Eigen::Index j = 0; j < f.size(); ++j)
    h(j) = (j < half ? f(j) : std::conj(f(j))) * g(j);
  return h;
}

void SimConfig::validate() const {
  if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
  if (!(pi1 > 0.0) || !(pi2 > 0.0)) throw std::invalid_argument("power fractions must be positive");
  if (frame_cycles < 2) throw std::invalid_argument("frame_cycles must be at least 2");
  if (total_cycles < 1) throw std::invalid_argument("total_cycles must be positive");
  if (threads < 0) throw std::invalid_argument("threads must be nonnegative");
}

FrameRng::FrameRng(std::uint64_t seed, std::uint64_t frame) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ull * (frame + 1));
  splitmix64(state);
  engine_.seed(splitmix64(state));
}

std::complex<double> FrameRng::complex_gaussian() {
  const double re = normal_(engine_) * kInvSqrt2;
  const double im = normal_(engine_) * kInvSqrt2;
  return {re, im};
}

Eigen::VectorXcd FrameRng::complex_gaussian_vector(Eigen::Index n) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_gaussian();
  return v;
}

std::size_t FrameRng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index over empty range");
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

RelayBank RelayBank::from(const RelaySet& rs) {
  return RelayBank{rs.complex_matrices(), rs.half};
}

Eigen::VectorXcd differential_encode(const Eigen::MatrixXcd& U, double a_prev,
                                     const Eigen::VectorXcd& s_prev) {
  if (!(a_prev > 0.0)) throw std::invalid_argument("previous scale must be positive");
  if (U.cols() != s_prev.size()) throw std::invalid_argument("codeword and symbol sizes disagree");
  return (U * s_prev) / a_prev;
}

Eigen::VectorXcd relay_channel(const Eigen::VectorXcd& s, const ChannelRealization& ch,
                               const RelayBank& bank, const SimConfig& cfg, FrameRng& rng) {
  const auto R = static_cast<Eigen::Index>(bank.matrices.size());
  if (R == 0) throw std::invalid_argument("empty relay bank");
  if (ch.f.size() != R || ch.g.size() != R) throw std::invalid_argument("channel size mismatch");
  const Eigen::Index T = s.size();
  if (bank.matrices.front().rows() != T) throw std::invalid_argument("symbol vector length mismatch");

  const double amp1 = std::sqrt(cfg.pi1 * cfg.power);
  const double amp2 = std::sqrt(cfg.pi2 * cfg.power / (cfg.pi1 * cfg.power + 1.0));

  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(T);
  Eigen::VectorXcd r(T);
  for (Eigen::Index j = 0; j < R; ++j) {
    r = (amp1 * ch.f(j)) * s;
    if (!cfg.zero_noise) r += rng.complex_gaussian_vector(T);
    if (j < bank.half)
      y.noalias() += (amp2 * ch.g(j)) * (bank.matrices[static_cast<std::size_t>(j)] * r);
    else
      y.noalias() += (amp2 * ch.g(j)) * (bank.matrices[static_cast<std::size_t>(j)] * r.conjugate());
  }
  if (!cfg.zero_noise) y += rng.complex_gaussian_vector(T);
  return y;
}

std::size_t decode_exhaustive(const Eigen::VectorXcd& y_t, const Eigen::VectorXcd& y_prev,
                              double a_prev, const Codebook& cb, DecodeCounters* counters) {
  if (!(a_prev > 0.0)) throw std::invalid_argument("previous scale must be positive");
  const auto entries = cb.entries();
  const Eigen::VectorXcd z = y_prev / a_prev;
  std::size_t best = 0;
  double best_metric = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const double metric = (y_t - entries[k].matrix * z).squaredNorm();
    if (metric < best_metric) {
      best_metric = metric;
      best = k;
    }
  }
  if (counters) {
    counters->metric_evaluations += entries.size();
    ++counters->decodes;
  }
  return best;
}

std::size_t decode_groupwise(const Eigen::VectorXcd& y_t, const Eigen::VectorXcd& y_prev,
                             double a_prev, const Codebook& cb, DecodeCounters* counters) {
  if (!(a_prev > 0.0)) throw std::invalid_argument("previous scale must be positive");
  const LinearDesign& design = cb.design();
  const auto R = static_cast<Eigen::Index>(design.relay_count());
  if (y_t.size() != R || y_prev.size() != R) throw std::invalid_argument("received vector length mismatch");

  const Eigen::VectorXcd z = y_prev / a_prev;
  const double q = z.squaredNorm();

  // Linear metric terms per variable: the entry pattern gives
  // y_t^H S(x) z = sum_i x_i (linear coefficient), and only Re of it enters.
  Eigen::VectorXd linear = Eigen::VectorXd::Zero(design.variable_count());
  const auto& pattern = design.pattern();
  for (Eigen::Index r = 0; r < R; ++r) {
    const std::complex<double> yc = std::conj(y_t(r));
    for (Eigen::Index c = 0; c < R; ++c) {
      const PatternEntry& e = pattern[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      const std::complex<double> w = static_cast<double>(e.sign) * yc * z(c);
      linear(2 * (e.symbol - 1)) += w.real();
      linear(2 * (e.symbol - 1) + 1) += e.conjugated ? w.imag() : -w.imag();
    }
  }

  const auto sets = cb.normalized_group_sets();
  std::array<int, 4> choice{};
  for (int g = 0; g < 4; ++g) {
    const auto& vars = cb.partition().groups[static_cast<std::size_t>(g)];
    const auto& points = sets[static_cast<std::size_t>(g)].points;
    int best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < points.size(); ++p) {
      double metric = 0.0;
      for (std::size_t d = 0; d < vars.size(); ++d) {
        const double xi = points[p][d];
        if (xi == 0.0) continue;
        metric += xi * (q * xi - 2.0 * linear(vars[d]));
      }
      if (metric < best_metric) {
        best_metric = metric;
        best = static_cast<int>(p);
      }
    }
    choice[static_cast<std::size_t>(g)] = best;
    if (counters) counters->metric_evaluations += points.size();
  }
  if (counters) ++counters->decodes;

  const int entry = cb.entry_index(choice);
  if (entry < 0) throw std::logic_error("groupwise choice fell outside the codebook");
  return static_cast<std::size_t>(entry);
}

namespace {

struct Tally {
  std::uint64_t trials{0};
  std::uint64_t block_errors{0};
  std::array<std::uint64_t, 4> group_errors{};
  DecodeCounters counters;
};

void simulate_frame(const SimConfig& cfg, const Codebook& cb, const RelayBank& bank,
                    std::uint64_t frame, Tally& tally) {
  FrameRng rng(cfg.seed, frame);
  const auto R = static_cast<Eigen::Index>(bank.matrices.size());
  const ChannelRealization ch{rng.complex_gaussian_vector(R), rng.complex_gaussian_vector(R)};
  const auto entries = cb.entries();

  Eigen::VectorXcd s_prev = Eigen::VectorXcd::Zero(R);
  s_prev(0) = 1.0;  // reference transmission, X0 applied to the collapsed channel
  Eigen::VectorXcd y_prev = relay_channel(s_prev, ch, bank, cfg, rng);
  double a_true = 1.0;
  double a_tracked = 1.0;

  for (int t = 1; t < cfg.frame_cycles; ++t) {
    const std::size_t sent = rng.uniform_index(entries.size());
    const CodebookEntry& truth = entries[sent];
    Eigen::VectorXcd s_t = differential_encode(truth.matrix, a_true, s_prev);
    Eigen::VectorXcd y_t = relay_channel(s_t, ch, bank, cfg, rng);

    const double a_dec = cfg.tracking == ScaleTracking::Genie ? a_true : a_tracked;
    const std::size_t decoded = cfg.decoder == DecoderKind::Exhaustive
                                    ? decode_exhaustive(y_t, y_prev, a_dec, cb, &tally.counters)
                                    : decode_groupwise(y_t, y_prev, a_dec, cb, &tally.counters);

    ++tally.trials;
    if (decoded != sent) ++tally.block_errors;
    for (int g = 0; g < 4; ++g)
      if (entries[decoded].group_points[static_cast<std::size_t>(g)] !=
          truth.group_points[static_cast<std::size_t>(g)])
        ++tally.group_errors[static_cast<std::size_t>(g)];

    a_tracked = entries[decoded].scale;
    a_true = truth.scale;
    s_prev = std::move(s_t);
    y_prev = std::move(y_t);
  }
}

}  // namespace

SimResult run_simulation(const SimConfig& cfg, const Codebook& cb, const RelayBank& bank) {
  cfg.validate();
  if (static_cast<int>(bank.matrices.size()) != cb.design().relay_count())
    throw std::invalid_argument("relay bank and codebook sizes disagree");

  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t per_frame = static_cast<std::uint64_t>(cfg.frame_cycles) - 1;
  const std::uint64_t frames = (cfg.total_cycles + per_frame - 1) / per_frame;

  std::size_t workers = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, frames);

  std::vector<Tally> tallies(workers);
  {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t frame = w; frame < frames; frame += workers)
          simulate_frame(cfg, cb, bank, frame, tallies[w]);
      });
    }
    for (auto& th : pool) th.join();
  }

  SimResult result;
  result.power = cfg.power;
  result.snr_db = cfg.power > 0.0 ? 10.0 * std::log10(cfg.power) : 0.0;
  for (const Tally& t : tallies) {
    result.trials += t.trials;
    result.block_errors += t.block_errors;
    for (int g = 0; g < 4; ++g) result.group_errors[static_cast<std::size_t>(g)] += t.group_errors[static_cast<std::size_t>(g)];
    result.counters.metric_evaluations += t.counters.metric_evaluations;
    result.counters.decodes += t.counters.decodes;
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double snr_db_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

double default_pi2(int relay_count) {
  if (relay_count < 1) throw std::invalid_argument("relay count must be positive");
  return 1.0 / (2.0 * relay_count);
}

}  // namespace ddstc
