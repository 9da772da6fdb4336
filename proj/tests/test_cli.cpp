#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

#include "common/golden.hpp"

#ifndef DDSTC_CLI_PATH
#error "DDSTC_CLI_PATH must point at the command line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code{-1};
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "ddstc_cli_tests";
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path dir = scratch_dir();
  const fs::path out_file = dir / "stdout.txt";
  const fs::path err_file = dir / "stderr.txt";
  const std::string command = std::string(DDSTC_CLI_PATH) + " " + args + " >" + out_file.string() +
                              " 2>" + err_file.string();
  const int status = std::system(command.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

nlohmann::json parse_json(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("simulate --bogus-flag 3").code == 2);
  CHECK(run_cli("construct --relays four").code == 2);

  const RunResult bad_relays = run_cli("construct --relays 6");
  CHECK(bad_relays.code == 2);
  CHECK(bad_relays.err.find("R must be a power of two >= 4") != std::string::npos);

  const RunResult bad_pi = run_cli("simulate --relays 4 --snr 10 --cycles 100 --pi1 0");
  CHECK(bad_pi.code == 2);
}

TEST_CASE("help and version exit cleanly") {
  const RunResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("construct") != std::string::npos);
  CHECK(help.out.find("simulate") != std::string::npos);

  const RunResult sim_help = run_cli("simulate --help");
  CHECK(sim_help.code == 0);
  // Defaults are part of the contract and must be visible.
  CHECK(sim_help.out.find("groupwise") != std::string::npos);
  CHECK(sim_help.out.find("decision_directed") != std::string::npos);

  CHECK(run_cli("--version").code == 0);
}

TEST_CASE("construct emits the frozen four relay construction") {
  const fs::path out = scratch_dir() / "construct4.json";
  const RunResult r = run_cli("construct --relays 4 --out " + out.string());
  REQUIRE(r.code == 0);

  const nlohmann::json doc = parse_json(slurp(out));
  CHECK(doc["relays"] == 4);
  CHECK(doc["half"] == 2);
  CHECK(doc["variables"] == 8);
  CHECK(doc["linker_family"] == "g2");

  const auto rows = golden::pattern_rows(4);
  REQUIRE(doc["design"]["pattern"].size() == 4);
  for (int row = 0; row < 4; ++row) {
    const auto tokens = golden::split_tokens(rows[static_cast<std::size_t>(row)]);
    for (int c = 0; c < 4; ++c)
      CHECK(doc["design"]["pattern"][row][c].get<std::string>() == tokens[static_cast<std::size_t>(c)]);
  }

  const auto ref = golden::reference_relay_matrices();
  REQUIRE(doc["relay_matrices"].size() == 4);
  CHECK(doc["relay_matrices"][0]["element"] == "1");
  CHECK(doc["relay_matrices"][1]["element"] == "d1");
  CHECK(doc["relay_matrices"][2]["element"] == "g2");
  CHECK(doc["relay_matrices"][3]["element"] == "g2 d1");
  for (int j = 0; j < 4; ++j) {
    CHECK(doc["relay_matrices"][j]["conjugates_input"] == (j >= 2));
    const auto& matrix = doc["relay_matrices"][j]["matrix"];
    for (int row = 0; row < 4; ++row) {
      for (int c = 0; c < 4; ++c) {
        CHECK(matrix[row][c]["re"].get<double>() ==
              static_cast<double>(ref[static_cast<std::size_t>(j)](row, c).re));
        CHECK(matrix[row][c]["im"].get<double>() == 0.0);
      }
    }
  }

  for (int row = 0; row < 4; ++row)
    for (int c = 0; c < 4; ++c)
      CHECK(doc["X0"][row][c]["re"].get<double>() == (row == c ? 1.0 : 0.0));

  const nlohmann::json manifest = parse_json(slurp(out.string() + ".manifest.json"));
  CHECK(manifest["version"].get<std::string>() == "0.1.0");
  CHECK(manifest["config"]["relays"] == 4);
  CHECK(manifest["command"].get<std::string>().find("construct") != std::string::npos);
}

TEST_CASE("construct reproduces the sixteen relay pattern") {
  const RunResult r = run_cli("construct --relays 16");
  REQUIRE(r.code == 0);
  const nlohmann::json doc = parse_json(r.out);
  const auto rows = golden::pattern_rows(16);
  REQUIRE(doc["design"]["pattern"].size() == 16);
  for (int row = 0; row < 16; ++row) {
    const auto tokens = golden::split_tokens(rows[static_cast<std::size_t>(row)]);
    for (int c = 0; c < 16; ++c)
      CHECK(doc["design"]["pattern"][row][c].get<std::string>() == tokens[static_cast<std::size_t>(c)]);
  }
}

TEST_CASE("verify passes for supported sizes") {
  for (const int relays : {4, 8}) {
    const RunResult r = run_cli("verify --relays " + std::to_string(relays) + " --trials 200");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS representation homomorphism") != std::string::npos);
    CHECK(r.out.find("PASS relay commutation conditions") != std::string::npos);
    CHECK(r.out.find("PASS scaled unitary codebook") != std::string::npos);
    CHECK(r.out.find("PASS groupwise decoder agreement") != std::string::npos);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("verify flags a corrupted relay matrix") {
  const RunResult r = run_cli("verify --relays 4 --trials 100 --corrupt-relay 2");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL relay commutation conditions") != std::string::npos);
  CHECK(r.out.find("relay 2") != std::string::npos);
  CHECK(r.out.find("verification failed") != std::string::npos);
}

TEST_CASE("verify reports that the alternative linker family fails the conditions") {
  const RunResult r = run_cli("verify --relays 4 --trials 100 --linker-family g1g2");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL conjugate linker identity") != std::string::npos);
  CHECK(r.out.find("FAIL relay commutation conditions") != std::string::npos);
  CHECK(r.out.find("conjugate branch") != std::string::npos);
  CHECK(r.out.find("verification failed") != std::string::npos);
}

TEST_CASE("mindist reports the frozen minimum distance") {
  const fs::path out = scratch_dir() / "mindist4.json";
  const RunResult r = run_cli("mindist --relays 4 --out " + out.string());
  REQUIRE(r.code == 0);
  const nlohmann::json doc = parse_json(slurp(out));
  CHECK(doc["relays"] == 4);
  CHECK(doc["codebook_size"] == 256);
  CHECK(doc["bits_per_codeword"].get<double>() == doctest::Approx(8.0));
  CHECK(doc["min_distance"].get<double>() == doctest::Approx(1.4142135623730951).epsilon(1e-9));
  REQUIRE(doc["witness"].size() == 2);
  CHECK(doc["witness"][0].get<int>() < doc["witness"][1].get<int>());
}

TEST_CASE("mindist can export a reloadable codebook") {
  const fs::path cb_path = scratch_dir() / "codebook4.json";
  const RunResult r = run_cli("mindist --relays 4 --export-codebook " + cb_path.string());
  REQUIRE(r.code == 0);
  const nlohmann::json doc = parse_json(slurp(cb_path));
  CHECK(doc["relays"] == 4);
  CHECK(doc["entries"].size() == 256);
}

TEST_CASE("simulate writes the documented CSV schema deterministically") {
  const fs::path a = scratch_dir() / "sweep_a.csv";
  const fs::path b = scratch_dir() / "sweep_b.csv";
  const std::string flags = "simulate --relays 4 --snr 12,16 --cycles 1900 --seed 7 --threads 2 --out ";
  REQUIRE(run_cli(flags + a.string()).code == 0);
  REQUIRE(run_cli(flags + b.string()).code == 0);

  const std::string text = slurp(a);
  CHECK(text == slurp(b));

  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "snr_db,decoder,tracking,trials,block_errors,bler,g1_err,g2_err,g3_err,g4_err,seed");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row)) {
    if (row.empty()) continue;
    ++rows;
    CHECK(row.find(",groupwise,decision_directed,") != std::string::npos);
    CHECK(row.rfind(rows == 1 ? "12," : "16,", 0) == 0);
    CHECK(row.substr(row.size() - 2) == ",7");
  }
  CHECK(rows == 2);

  const nlohmann::json manifest = parse_json(slurp(a.string() + ".manifest.json"));
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["config"]["cycles"] == 1900);
  CHECK(manifest["config"]["pi2"].get<double>() == doctest::Approx(0.125));
}

TEST_CASE("simulate supports a config file in place of flags") {
  const fs::path conf = scratch_dir() / "sweep.ini";
  {
    std::ofstream out(conf);
    out << "[simulate]\nrelays=4\nsnr=14\ncycles=950\nseed=9\nzero-noise=true\n";
  }
  const RunResult r = run_cli("--config " + conf.string() + " simulate");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(row.rfind("14,groupwise,decision_directed,950,0,0,0,0,0,0,9", 0) == 0);
}

TEST_CASE("zero noise simulation makes no errors") {
  const RunResult r = run_cli("simulate --relays 4 --snr 10 --cycles 950 --seed 3 --zero-noise");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(row.find(",0,0,0,0,0,0,3") != std::string::npos);
}

TEST_CASE("decoder choice leaves the error counts unchanged") {
  const std::string base = "simulate --relays 4 --snr 13 --cycles 1900 --seed 11 --tracking genie --decoder ";
  const RunResult brute = run_cli(base + "exhaustive");
  const RunResult grouped = run_cli(base + "groupwise");
  REQUIRE(brute.code == 0);
  REQUIRE(grouped.code == 0);

  const auto strip_decoder = [](const std::string& text) {
    std::string out = text;
    const auto pos = out.find("exhaustive");
    if (pos != std::string::npos) out.replace(pos, 10, "groupwise");
    return out;
  };
  CHECK(strip_decoder(brute.out) == grouped.out);
}
