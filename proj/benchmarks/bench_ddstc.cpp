#include <vector>

#include <benchmark/benchmark.h>

#include "ddstc/algebra.hpp"
#include "ddstc/design.hpp"
#include "ddstc/relays.hpp"
#include "ddstc/signal_sets.hpp"
#include "ddstc/simulator.hpp"

using namespace ddstc;

namespace {

Codebook make_codebook(int relays) {
  const double amps[] = {1.0};
  std::vector<GroupSignalSet> sets(4, build_axis_signal_set(relays / 2, amps));
  return build_codebook(build_design(relays), group_partition(relays), std::move(sets));
}

struct DecodeFixture {
  Codebook cb;
  Eigen::VectorXcd y_prev;
  Eigen::VectorXcd y_t;

  explicit DecodeFixture(int relays) : cb(make_codebook(relays)) {
    const RelayBank bank = RelayBank::from(build_relay_matrices(RepContext(relays == 4 ? 2 : 3)));
    SimConfig cfg;
    cfg.power = snr_db_to_power(15.0);
    FrameRng rng(99, 0);
    ChannelRealization ch;
    ch.f = rng.complex_gaussian_vector(relays);
    ch.g = rng.complex_gaussian_vector(relays);
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(relays);
    s(0) = 1.0;
    y_prev = relay_channel(s, ch, bank, cfg, rng);
    const Eigen::VectorXcd s_next =
        differential_encode(cb.entries()[rng.uniform_index(cb.size())].matrix, 1.0, s);
    y_t = relay_channel(s_next, ch, bank, cfg, rng);
  }
};

void bench_decode_exhaustive(benchmark::State& state) {
  const DecodeFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decode_exhaustive(fx.y_t, fx.y_prev, 1.0, fx.cb));
}

void bench_decode_groupwise(benchmark::State& state) {
  const DecodeFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decode_groupwise(fx.y_t, fx.y_prev, 1.0, fx.cb));
}

void bench_relay_channel(benchmark::State& state) {
  const int relays = static_cast<int>(state.range(0));
  const RelayBank bank = RelayBank::from(build_relay_matrices(RepContext(relays == 4 ? 2 : 3)));
  SimConfig cfg;
  cfg.power = snr_db_to_power(15.0);
  FrameRng rng(7, 0);
  ChannelRealization ch;
  ch.f = rng.complex_gaussian_vector(relays);
  ch.g = rng.complex_gaussian_vector(relays);
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(relays);
  s(0) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(relay_channel(s, ch, bank, cfg, rng));
}

void bench_build_design(benchmark::State& state) {
  const int relays = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_design(relays));
}

void bench_left_regular_rep(benchmark::State& state) {
  const RepContext ctx(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
  AlgebraElement x;
  for (int t = 0; t < 6; ++t)
    x.add_term(BasisMonomial{static_cast<std::uint32_t>(t % 4),
                             static_cast<std::uint32_t>(t % ctx.half())},
               coeff(rng));
  for (auto _ : state) benchmark::DoNotOptimize(left_regular_rep(ctx, x));
}

BENCHMARK(bench_decode_exhaustive)->Arg(4)->Arg(8);
BENCHMARK(bench_decode_groupwise)->Arg(4)->Arg(8);
BENCHMARK(bench_relay_channel)->Arg(4)->Arg(8);
BENCHMARK(bench_build_design)->Arg(4)->Arg(16);
BENCHMARK(bench_left_regular_rep)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
