#include <cmath>
#include <complex>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddstc/algebra.hpp"
#include "ddstc/design.hpp"
#include "ddstc/json_io.hpp"
#include "ddstc/relays.hpp"
#include "ddstc/signal_sets.hpp"
#include "ddstc/simulator.hpp"
#include "ddstc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

int lambda_for(int relays) {
  if (relays < 4 || (relays & (relays - 1)) != 0)
    throw std::invalid_argument("R must be a power of two >= 4");
  int lambda = 0;
  while ((1 << lambda) < relays) ++lambda;
  return lambda;
}

ddstc::LinkerFamily parse_family(const std::string& name) {
  if (name == "g2") return ddstc::LinkerFamily::Gamma2;
  if (name == "g1g2") return ddstc::LinkerFamily::Gamma1Gamma2;
  throw std::invalid_argument("linker family must be g2 or g1g2");
}

ddstc::DecoderKind parse_decoder(const std::string& name) {
  if (name == "exhaustive") return ddstc::DecoderKind::Exhaustive;
  if (name == "groupwise") return ddstc::DecoderKind::Groupwise;
  throw std::invalid_argument("decoder must be exhaustive or groupwise");
}

ddstc::ScaleTracking parse_tracking(const std::string& name) {
  if (name == "genie") return ddstc::ScaleTracking::Genie;
  if (name == "decision_directed") return ddstc::ScaleTracking::DecisionDirected;
  throw std::invalid_argument("tracking must be genie or decision_directed");
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out.good()) throw std::runtime_error("cannot write " + path);
}

// Data files stay byte-reproducible; run metadata, including wall clock
// times, lives in a sidecar next to each output.
void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed, const std::string& started,
                    const std::string& finished) {
  nlohmann::json manifest = {
      {"command", command},   {"config", config},     {"version", ddstc::kVersion},
      {"seed", seed},         {"started_utc", started}, {"finished_utc", finished},
  };
  write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string quote_command(int argc, char** argv) {
  std::ostringstream os;
  for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
  return os.str();
}

ddstc::Codebook make_codebook(int relays, const std::vector<double>& amps) {
  std::vector<ddstc::GroupSignalSet> sets(4, ddstc::build_axis_signal_set(relays / 2, amps));
  return ddstc::build_codebook(ddstc::build_design(relays), ddstc::group_partition(relays),
                               std::move(sets));
}

struct ConstructArgs {
  int relays{4};
  std::string family{"g2"};
  std::string out;
};

int cmd_construct(const ConstructArgs& args, const std::string& command) {
  const std::string started = utc_now();
  const ddstc::RepContext ctx(lambda_for(args.relays));
  const ddstc::LinkerFamily family = parse_family(args.family);
  const ddstc::LinearDesign design = ddstc::build_design(args.relays);
  const ddstc::RelaySet rs = ddstc::build_relay_matrices(ctx, family);
  const ddstc::InitialState init = ddstc::initial_state(rs);
  const std::string payload = ddstc::construction_to_json(design, rs, init) + "\n";
  if (args.out.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  write_file(args.out, payload);
  const nlohmann::json config = {{"relays", args.relays}, {"linker_family", args.family}};
  write_manifest(args.out, command, config, 0, started, utc_now());
  return kExitOk;
}

struct VerifyArgs {
  int relays{4};
  std::string family{"g2"};
  int trials{1000};
  std::uint64_t seed{1};
  int corrupt_relay{0};  // 1-based; 0 leaves the set intact
};

bool report_check(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name;
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << "\n";
  return ok;
}

int cmd_verify(const VerifyArgs& args) {
  const ddstc::RepContext ctx(lambda_for(args.relays));
  const ddstc::LinkerFamily family = parse_family(args.family);
  const int R = args.relays;
  bool all_ok = true;

  std::mt19937_64 rng(args.seed);
  std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
  const auto random_element = [&] {
    ddstc::AlgebraElement x;
    std::uniform_int_distribution<std::uint32_t> gmask(0, 3);
    std::uniform_int_distribution<std::uint32_t> dmask(0, (1u << ctx.delta_count()) - 1);
    for (int t = 0; t < 4; ++t)
      x.add_term(ddstc::BasisMonomial{gmask(rng), dmask(rng)}, coeff(rng));
    return x;
  };

  {
    int bad = 0;
    for (int t = 0; t < args.trials; ++t) {
      const ddstc::AlgebraElement x = random_element();
      const ddstc::AlgebraElement y = random_element();
      if (ddstc::left_regular_rep(ctx, x * y) !=
          ddstc::left_regular_rep(ctx, x) * ddstc::left_regular_rep(ctx, y))
        ++bad;
    }
    std::ostringstream os;
    os << args.trials << " random products, " << bad << " mismatches";
    all_ok &= report_check("representation homomorphism", bad == 0, os.str());
  }

  {
    int bad = 0;
    const auto linkers = ddstc::conjugate_linkers(ctx, family);
    for (const auto& l : linkers) {
      for (int t = 0; t < args.trials / 10 + 1; ++t) {
        const ddstc::AlgebraElement x = random_element();
        if (l * ddstc::sigma(x) != x * l) ++bad;
      }
    }
    std::ostringstream os;
    os << linkers.size() << " linkers, " << bad << " mismatches";
    all_ok &= report_check("conjugate linker identity", bad == 0, os.str());
  }

  const ddstc::LinearDesign design = ddstc::build_design(R);
  ddstc::RelaySet rs = ddstc::build_relay_matrices(ctx, family);
  if (args.corrupt_relay > 0) {
    if (args.corrupt_relay > R) throw std::invalid_argument("corrupt relay index out of range");
    auto& entry = rs.matrices[static_cast<std::size_t>(args.corrupt_relay - 1)](0, 0);
    entry = entry + ddstc::ExactComplex{1, 0};
    std::cout << "note: corrupting relay matrix " << args.corrupt_relay << " for a negative control\n";
  }

  {
    const ddstc::ConditionReport report = ddstc::verify_conditions(rs, design, args.trials, args.seed);
    all_ok &= report_check("relay commutation conditions", report.ok(), report.summary());
  }

  {
    bool ok = true;
    std::string detail = "reference block is unitary";
    try {
      const ddstc::InitialState init = ddstc::initial_state(rs);
      ok = init.X0.adjoint() * init.X0 == ddstc::ExactMatrix::identity(R);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    all_ok &= report_check("initial block unitarity", ok, detail);
  }

  {
    const ddstc::GroupDecodabilityReport report = ddstc::verify_group_decodable(
        design, ddstc::group_partition(R),
        std::vector<ddstc::GroupSignalSet>(4, ddstc::build_axis_signal_set(R / 2, std::vector<double>{1.0})));
    all_ok &= report_check("four-group decodability", report.ok(), report.summary());
  }

  {
    const ddstc::Codebook cb = make_codebook(R, {1.0});
    double worst = 0.0;
    double mean_square = 0.0;
    bool ok = true;
    for (const auto& entry : cb.entries()) {
      const ddstc::ScaleCheck check = ddstc::verify_scaled_unitary(entry.matrix);
      ok &= check.ok;
      worst = std::max(worst, check.max_deviation);
      mean_square += entry.scale * entry.scale;
    }
    mean_square /= static_cast<double>(cb.size());
    ok &= std::abs(mean_square - 1.0) <= 1e-12;
    std::ostringstream os;
    os << cb.size() << " codewords, max deviation " << worst << ", mean squared scale " << mean_square;
    all_ok &= report_check("scaled unitary codebook", ok, os.str());

    const ddstc::RelayBank bank = ddstc::RelayBank::from(rs);
    ddstc::SimConfig cfg;
    cfg.power = ddstc::snr_db_to_power(15.0);
    cfg.pi2 = ddstc::default_pi2(R);
    cfg.seed = args.seed;
    int mismatches = 0;
    const int batch = 200;
    for (int t = 0; t < batch; ++t) {
      ddstc::FrameRng frame_rng(args.seed, static_cast<std::uint64_t>(t));
      ddstc::ChannelRealization ch;
      ch.f = frame_rng.complex_gaussian_vector(R);
      ch.g = frame_rng.complex_gaussian_vector(R);
      Eigen::VectorXcd s = Eigen::VectorXcd::Zero(R);
      s(0) = 1.0;
      const Eigen::VectorXcd y_prev = ddstc::relay_channel(s, ch, bank, cfg, frame_rng);
      const std::size_t sent = frame_rng.uniform_index(cb.size());
      const Eigen::VectorXcd s_next =
          ddstc::differential_encode(cb.entries()[sent].matrix, 1.0, s);
      const Eigen::VectorXcd y_t = ddstc::relay_channel(s_next, ch, bank, cfg, frame_rng);
      if (ddstc::decode_groupwise(y_t, y_prev, 1.0, cb) !=
          ddstc::decode_exhaustive(y_t, y_prev, 1.0, cb))
        ++mismatches;
    }
    std::ostringstream os2;
    os2 << batch << " noisy decodes, " << mismatches << " disagreements";
    all_ok &= report_check("groupwise decoder agreement", mismatches == 0, os2.str());
  }

  std::cout << (all_ok ? "all checks passed" : "verification failed") << "\n";
  return all_ok ? kExitOk : kExitVerificationFailure;
}

struct MinDistArgs {
  int relays{4};
  std::vector<double> amps{1.0};
  std::string out;
  std::string export_codebook;
};

int cmd_mindist(const MinDistArgs& args, const std::string& command) {
  const std::string started = utc_now();
  const ddstc::Codebook cb = make_codebook(args.relays, args.amps);
  const ddstc::MinDistanceResult r = ddstc::min_distance(cb);
  const std::string payload = ddstc::min_distance_to_json(cb, r) + "\n";
  const nlohmann::json config = {{"relays", args.relays}, {"amplitudes", args.amps}};
  if (!args.export_codebook.empty()) {
    write_file(args.export_codebook, ddstc::codebook_to_json(cb, 2) + "\n");
    write_manifest(args.export_codebook, command, config, 0, started, utc_now());
  }
  if (args.out.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  write_file(args.out, payload);
  write_manifest(args.out, command, config, 0, started, utc_now());
  return kExitOk;
}

struct SimulateArgs {
  int relays{4};
  std::vector<double> snr_db{10.0, 15.0, 20.0, 25.0};
  std::uint64_t cycles{200000};
  int frame_cycles{20};
  std::string decoder{"groupwise"};
  std::string tracking{"decision_directed"};
  double pi1{0.5};
  double pi2{-1.0};  // negative picks 1 / (2R)
  std::uint64_t seed{1};
  int threads{0};
  bool zero_noise{false};
  std::vector<double> amps{1.0};
  std::string out;
};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

int cmd_simulate(const SimulateArgs& args, const std::string& command) {
  const std::string started = utc_now();
  const ddstc::RepContext ctx(lambda_for(args.relays));
  const ddstc::Codebook cb = make_codebook(args.relays, args.amps);
  const ddstc::RelayBank bank = ddstc::RelayBank::from(ddstc::build_relay_matrices(ctx));

  ddstc::SimConfig cfg;
  cfg.pi1 = args.pi1;
  cfg.pi2 = args.pi2 < 0 ? ddstc::default_pi2(args.relays) : args.pi2;
  cfg.frame_cycles = args.frame_cycles;
  cfg.total_cycles = args.cycles;
  cfg.seed = args.seed;
  cfg.decoder = parse_decoder(args.decoder);
  cfg.tracking = parse_tracking(args.tracking);
  cfg.threads = args.threads;
  cfg.zero_noise = args.zero_noise;
  if (args.snr_db.empty()) throw std::invalid_argument("at least one SNR point is required");
  for (const double snr : args.snr_db) {
    cfg.power = ddstc::snr_db_to_power(snr);
    cfg.validate();
  }

  // snr_db is total transmit power P against unit noise variance at both hops.
  std::ostringstream csv;
  csv << "snr_db,decoder,tracking,trials,block_errors,bler,g1_err,g2_err,g3_err,g4_err,seed\n";
  for (const double snr : args.snr_db) {
    cfg.power = ddstc::snr_db_to_power(snr);
    const ddstc::SimResult r = ddstc::run_simulation(cfg, cb, bank);
    csv << format_double(snr) << ',' << args.decoder << ',' << args.tracking << ',' << r.trials
        << ',' << r.block_errors << ',' << format_double(r.bler());
    for (int k = 0; k < 4; ++k) csv << ',' << r.group_errors[static_cast<std::size_t>(k)];
    csv << ',' << args.seed << "\n";
    std::cerr << "snr " << snr << " dB: " << r.block_errors << "/" << r.trials
              << " block errors (" << format_double(r.bler()) << ") in " << r.seconds << " s\n";
  }

  if (args.out.empty()) {
    std::cout << csv.str();
    return kExitOk;
  }
  write_file(args.out, csv.str());
  const nlohmann::json config = {
      {"relays", args.relays},       {"snr_db", args.snr_db},
      {"cycles", args.cycles},       {"frame_cycles", args.frame_cycles},
      {"decoder", args.decoder},     {"tracking", args.tracking},
      {"pi1", args.pi1},             {"pi2", cfg.pi2},
      {"threads", args.threads},     {"zero_noise", args.zero_noise},
      {"amplitudes", args.amps},
  };
  write_manifest(args.out, command, config, args.seed, started, utc_now());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"four-group decodable distributed differential space-time codes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");
  app.set_version_flag("--version", std::string(ddstc::kVersion));

  ConstructArgs construct_args;
  CLI::App* construct = app.add_subcommand("construct", "emit design, relay matrices, and reference block as JSON");
  construct->add_option("--relays", construct_args.relays, "number of relays, a power of two >= 4")
      ->capture_default_str();
  construct->add_option("--linker-family", construct_args.family, "conjugate linker family: g2 or g1g2")
      ->check(CLI::IsMember({"g2", "g1g2"}))
      ->capture_default_str();
  construct->add_option("--out", construct_args.out, "output path (stdout when omitted)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "run the full construction check suite");
  verify->add_option("--relays", verify_args.relays, "number of relays, a power of two >= 4")
      ->capture_default_str();
  verify->add_option("--linker-family", verify_args.family, "conjugate linker family: g2 or g1g2")
      ->check(CLI::IsMember({"g2", "g1g2"}))
      ->capture_default_str();
  verify->add_option("--trials", verify_args.trials, "random symbol vectors per check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "seed for the randomized checks")->capture_default_str();
  verify->add_option("--corrupt-relay", verify_args.corrupt_relay,
                     "debug: corrupt this relay matrix (1-based) before checking")
      ->capture_default_str();

  MinDistArgs mindist_args;
  CLI::App* mindist = app.add_subcommand("mindist", "exhaustive minimum codeword distance");
  mindist->add_option("--relays", mindist_args.relays, "number of relays, a power of two >= 4")
      ->capture_default_str();
  mindist->add_option("--amps", mindist_args.amps, "axis amplitudes of every group signal set")
      ->delimiter(',')
      ->capture_default_str();
  mindist->add_option("--out", mindist_args.out, "output path (stdout when omitted)");
  mindist->add_option("--export-codebook", mindist_args.export_codebook, "also write the full codebook JSON here");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo block error rate sweep");
  simulate->add_option("--relays", sim_args.relays, "number of relays, a power of two >= 4")
      ->capture_default_str();
  simulate->add_option("--snr", sim_args.snr_db, "comma separated total power points in dB")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--cycles", sim_args.cycles, "decoded codewords per SNR point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--frame-cycles", sim_args.frame_cycles, "codewords per fading realization")
      ->capture_default_str();
  simulate->add_option("--decoder", sim_args.decoder, "exhaustive or groupwise")
      ->check(CLI::IsMember({"exhaustive", "groupwise"}))
      ->capture_default_str();
  simulate->add_option("--tracking", sim_args.tracking, "genie or decision_directed")
      ->check(CLI::IsMember({"genie", "decision_directed"}))
      ->capture_default_str();
  simulate->add_option("--pi1", sim_args.pi1, "source share of the total power")->capture_default_str();
  simulate->add_option("--pi2", sim_args.pi2, "per-relay share of the total power (default 1/(2R))");
  simulate->add_option("--seed", sim_args.seed, "simulation seed")->capture_default_str();
  simulate->add_option("--threads", sim_args.threads, "worker threads, 0 for all cores")
      ->capture_default_str();
  simulate->add_flag("--zero-noise", sim_args.zero_noise, "debug: disable both noise injections");
  simulate->add_option("--amps", sim_args.amps, "axis amplitudes of every group signal set")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--out", sim_args.out, "CSV output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = quote_command(argc, argv);
  try {
    if (construct->parsed()) return cmd_construct(construct_args, command);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (mindist->parsed()) return cmd_mindist(mindist_args, command);
    if (simulate->parsed()) return cmd_simulate(sim_args, command);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
