#include "ddstc/relays.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace ddstc {

std::vector<Eigen::MatrixXcd> RelaySet::complex_matrices() const {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) out.push_back(m.to_complex());
  return out;
}

RelaySet build_relay_matrices(const RepContext& ctx, LinkerFamily family) {
  RelaySet rs;
  rs.half = ctx.half();
  rs.family = family;
  for (const auto& c : center_generators(ctx)) {
    rs.elements.push_back(c);
    rs.matrices.push_back(left_regular_rep(ctx, c));
  }
  for (const auto& l : conjugate_linkers(ctx, family)) {
    rs.elements.push_back(l);
    rs.matrices.push_back(left_regular_rep(ctx, l));
  }
  for (const auto& m : rs.matrices) {
    if (!(m * m.adjoint()).is_identity())
      throw std::logic_error("relay matrix failed exact unitarity");
    if (family == LinkerFamily::Gamma2) {
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
          if (m(r, c).im != 0) throw std::logic_error("default relay matrices must be real");
    }
  }
  return rs;
}

std::string ConditionReport::summary() const {
  std::ostringstream os;
  if (ok()) {
    os << "all " << checks << " commutation checks passed over " << trials << " symbol vectors";
    return os.str();
  }
  os << violation_count << " violation(s) in " << checks << " checks;";
  for (const auto& v : violations) {
    os << " relay " << v.relay_index + 1 << " (" << (v.conjugate_branch ? "conjugate" : "direct")
       << " branch) at entry (" << v.row << ", " << v.col << ") for x = [";
    for (std::size_t i = 0; i < v.witness.size(); ++i) os << (i ? ", " : "") << v.witness[i];
    os << "];";
  }
  return os.str();
}

ConditionReport verify_conditions(const RelaySet& rs, const LinearDesign& design, int trials,
                                  std::uint64_t seed) {
  if (rs.relay_count() != design.relay_count())
    throw std::invalid_argument("relay set and design sizes disagree");
  if (trials < 1) throw std::invalid_argument("trials must be positive");

  ConditionReport report;
  report.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-9, 9);
  const int K = design.variable_count();
  std::vector<std::int64_t> x(static_cast<std::size_t>(K));

  for (int t = 0; t < trials; ++t) {
    for (auto& v : x) v = dist(rng);
    const ExactMatrix S = design.evaluate_exact(x);
    const ExactMatrix S_conj = S.conjugate();
    for (int i = 0; i < rs.relay_count(); ++i) {
      const bool conj_branch = i >= rs.half;
      const ExactMatrix& A = rs.matrices[static_cast<std::size_t>(i)];
      const ExactMatrix lhs = conj_branch ? A * S_conj : A * S;
      const ExactMatrix rhs = S * A;
      ++report.checks;
      if (lhs == rhs) continue;
      ++report.violation_count;
      if (report.violations.size() < 8) {
        ConditionViolation v;
        v.relay_index = i;
        v.conjugate_branch = conj_branch;
        v.witness = x;
        bool located = false;
        for (int r = 0; r < lhs.rows() && !located; ++r)
          for (int c = 0; c < lhs.cols() && !located; ++c)
            if (lhs(r, c) != rhs(r, c)) {
              v.row = r;
              v.col = c;
              located = true;
            }
        report.violations.push_back(std::move(v));
      }
    }
  }
  return report;
}

InitialState initial_state(const RelaySet& rs) {
  const int R = rs.relay_count();
  if (R == 0) throw std::invalid_argument("empty relay set");
  InitialState init;
  init.s0 = Eigen::VectorXcd::Zero(R);
  init.s0(0) = 1.0;
  init.X0 = ExactMatrix(R, R);
  // Conjugation applies to s0, and s0 is the real first basis vector, so
  // column j is column 0 of A_j on both branches.
  for (int j = 0; j < R; ++j) {
    const ExactMatrix& A = rs.matrices[static_cast<std::size_t>(j)];
    for (int r = 0; r < R; ++r) init.X0(r, j) = A(r, 0);
  }
  if (!(init.X0.adjoint() * init.X0).is_identity())
    throw std::logic_error("initial transmission matrix failed exact unitarity");
  init.a0 = 1.0;
  return init;
}

}  // namespace ddstc
