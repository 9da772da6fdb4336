#include "ddstc/design.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "ddstc/relays.hpp"
#include "ddstc/signal_sets.hpp"

namespace ddstc {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_relay_count(int relay_count) {
  if (!power_of_two(relay_count) || relay_count < 4)
    throw std::invalid_argument("R must be a power of two >= 4");
}

std::vector<std::vector<PatternEntry>> closed_form_pattern(int R) {
  const int half = R / 2;
  std::vector<std::vector<PatternEntry>> pattern(R, std::vector<PatternEntry>(R));
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < R; ++c) {
      const bool upper = r < half;
      const bool left = c < half;
      const int base = (upper == left) ? 0 : half;
      const int symbol = ((r % half) ^ (c % half)) + 1 + base;
      pattern[r][c] = PatternEntry{symbol, !left, (upper && !left) ? -1 : 1};
    }
  }
  return pattern;
}

std::vector<ExactMatrix> weights_from_pattern(int R, const std::vector<std::vector<PatternEntry>>& pattern) {
  std::vector<ExactMatrix> weights(static_cast<std::size_t>(2 * R), ExactMatrix(R, R));
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < R; ++c) {
      const PatternEntry& e = pattern[r][c];
      if (e.symbol < 1 || e.symbol > R) throw std::invalid_argument("pattern symbol out of range");
      const std::int64_t sg = e.sign;
      weights[static_cast<std::size_t>(2 * (e.symbol - 1))](r, c) = {sg, 0};
      weights[static_cast<std::size_t>(2 * (e.symbol - 1) + 1)](r, c) = {0, e.conjugated ? -sg : sg};
    }
  }
  return weights;
}

std::vector<std::vector<PatternEntry>> pattern_from_weights(int R, const std::vector<ExactMatrix>& weights) {
  std::vector<std::vector<PatternEntry>> pattern(R, std::vector<PatternEntry>(R));
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < R; ++c) {
      int found = -1;
      for (int k = 0; k < R; ++k) {
        const ExactComplex re_w = weights[static_cast<std::size_t>(2 * k)](r, c);
        const ExactComplex im_w = weights[static_cast<std::size_t>(2 * k + 1)](r, c);
        if (re_w.is_zero() && im_w.is_zero()) continue;
        if (found >= 0) throw std::invalid_argument("design entry mixes two symbols");
        if (re_w.im != 0 || (re_w.re != 1 && re_w.re != -1))
          throw std::invalid_argument("real weight entry outside {0, +-1}");
        const auto sg = static_cast<int>(re_w.re);
        if (im_w.re != 0 || (im_w.im != sg && im_w.im != -sg))
          throw std::invalid_argument("imaginary weight entry inconsistent with the real one");
        pattern[r][c] = PatternEntry{k + 1, im_w.im == -sg, sg};
        found = k;
      }
      if (found < 0) throw std::invalid_argument("design entry touches no symbol");
    }
  }
  return pattern;
}

}  // namespace

std::string PatternEntry::to_string() const {
  std::ostringstream os;
  if (sign < 0) os << "-";
  os << "s" << symbol;
  if (conjugated) os << "*";
  return os.str();
}

PatternEntry PatternEntry::parse(std::string_view text) {
  PatternEntry e;
  if (!text.empty() && text.front() == '-') {
    e.sign = -1;
    text.remove_prefix(1);
  }
  if (text.empty() || text.front() != 's') throw std::invalid_argument("pattern entry must start with 's'");
  text.remove_prefix(1);
  if (!text.empty() && text.back() == '*') {
    e.conjugated = true;
    text.remove_suffix(1);
  }
  int symbol = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), symbol);
  if (ec != std::errc{} || ptr != text.data() + text.size() || symbol < 1)
    throw std::invalid_argument("bad symbol index in pattern entry");
  e.symbol = symbol;
  return e;
}

LinearDesign::LinearDesign(int relay_count, std::vector<ExactMatrix> weights,
                           std::vector<std::vector<PatternEntry>> pattern)
    : relays_(relay_count), weights_(std::move(weights)), pattern_(std::move(pattern)) {
  check_relay_count(relays_);
  if (weights_.size() != static_cast<std::size_t>(2 * relays_))
    throw std::invalid_argument("expected 2R weight matrices");
  for (const auto& w : weights_)
    if (w.rows() != relays_ || w.cols() != relays_) throw std::invalid_argument("weight matrix shape mismatch");
  if (pattern_.size() != static_cast<std::size_t>(relays_))
    throw std::invalid_argument("pattern shape mismatch");
  for (const auto& row : pattern_)
    if (row.size() != static_cast<std::size_t>(relays_)) throw std::invalid_argument("pattern shape mismatch");
  if (weights_from_pattern(relays_, pattern_) != weights_)
    throw std::invalid_argument("pattern and weight matrices disagree");
}

Eigen::MatrixXcd LinearDesign::evaluate(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(variable_count()))
    throw std::invalid_argument("symbol vector length must be 2R");
  Eigen::MatrixXcd S(relays_, relays_);
  for (int r = 0; r < relays_; ++r) {
    for (int c = 0; c < relays_; ++c) {
      const PatternEntry& e = pattern_[r][c];
      const double re = x[static_cast<std::size_t>(2 * (e.symbol - 1))];
      const double im = x[static_cast<std::size_t>(2 * (e.symbol - 1) + 1)];
      S(r, c) = static_cast<double>(e.sign) * std::complex<double>(re, e.conjugated ? -im : im);
    }
  }
  return S;
}

ExactMatrix LinearDesign::evaluate_exact(std::span<const std::int64_t> x) const {
  if (x.size() != static_cast<std::size_t>(variable_count()))
    throw std::invalid_argument("symbol vector length must be 2R");
  ExactMatrix S(relays_, relays_);
  for (int r = 0; r < relays_; ++r) {
    for (int c = 0; c < relays_; ++c) {
      const PatternEntry& e = pattern_[r][c];
      const std::int64_t re = x[static_cast<std::size_t>(2 * (e.symbol - 1))];
      const std::int64_t im = x[static_cast<std::size_t>(2 * (e.symbol - 1) + 1)];
      S(r, c) = ExactComplex{e.sign * re, e.sign * (e.conjugated ? -im : im)};
    }
  }
  return S;
}

Eigen::MatrixXcd LinearDesign::evaluate_symbols(std::span<const std::complex<double>> s) const {
  if (s.size() != static_cast<std::size_t>(relays_))
    throw std::invalid_argument("expected R complex symbols");
  std::vector<double> x(static_cast<std::size_t>(variable_count()));
  for (int k = 0; k < relays_; ++k) {
    x[static_cast<std::size_t>(2 * k)] = s[static_cast<std::size_t>(k)].real();
    x[static_cast<std::size_t>(2 * k) + 1] = s[static_cast<std::size_t>(k)].imag();
  }
  return evaluate(x);
}

LinearDesign build_design(int relay_count) {
  check_relay_count(relay_count);
  auto pattern = closed_form_pattern(relay_count);
  auto weights = weights_from_pattern(relay_count, pattern);
  return LinearDesign(relay_count, std::move(weights), std::move(pattern));
}

LinearDesign build_design_algebraic(const RepContext& ctx) {
  const RelaySet rs = build_relay_matrices(ctx);
  const int R = ctx.relay_count();
  const int M = ctx.half();
  std::vector<ExactMatrix> weights(static_cast<std::size_t>(2 * R), ExactMatrix(R, R));
  for (int k = 0; k < R; ++k) {
    ExactMatrix& b_re = weights[static_cast<std::size_t>(2 * k)];
    ExactMatrix& b_im = weights[static_cast<std::size_t>(2 * k + 1)];
    for (int j = 0; j < R; ++j) {
      // Column j of the transmitted block is A_j s for j < M and A_j conj(s)
      // beyond, so s_{k+1} feeds column j through column k of A_j.
      const ExactMatrix& A = rs.matrices[static_cast<std::size_t>(j)];
      const ExactComplex unit = j < M ? ExactComplex{0, 1} : ExactComplex{0, -1};
      for (int r = 0; r < R; ++r) {
        b_re(r, j) = A(r, k);
        b_im(r, j) = A(r, k) * unit;
      }
    }
  }
  auto pattern = pattern_from_weights(R, weights);
  return LinearDesign(R, std::move(weights), std::move(pattern));
}

int GroupPartition::variable_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return static_cast<int>(n);
}

int GroupPartition::group_of(int variable) const {
  for (int g = 0; g < 4; ++g)
    for (const int v : groups[static_cast<std::size_t>(g)])
      if (v == variable) return g;
  return -1;
}

GroupPartition group_partition(int relay_count) {
  check_relay_count(relay_count);
  GroupPartition p;
  const int half = relay_count / 2;
  for (int k = 0; k < relay_count; ++k) {
    const int block = k < half ? 0 : 2;
    p.groups[static_cast<std::size_t>(block)].push_back(2 * k);
    p.groups[static_cast<std::size_t>(block + 1)].push_back(2 * k + 1);
  }
  return p;
}

std::string GroupDecodabilityReport::summary() const {
  if (ok()) return "four-group decodable on the given signal sets";
  std::ostringstream os;
  os << couplings.size() << " surviving coupling(s)";
  for (const auto& c : couplings)
    os << " [x" << c.var_i + 1 << ", x" << c.var_j + 1 << (c.cross_group ? ", cross-group" : "") << "]";
  if (!non_unitary_weights.empty()) {
    os << "; non-unitary weight(s):";
    for (const int i : non_unitary_weights) os << " B" << i + 1;
  }
  return os.str();
}

GroupDecodabilityReport verify_group_decodable(const LinearDesign& design,
                                               const GroupPartition& partition,
                                               std::span<const GroupSignalSet> group_sets) {
  const int K = design.variable_count();
  if (partition.variable_count() != K)
    throw std::invalid_argument("partition does not cover the design variables");
  std::vector<int> owner(static_cast<std::size_t>(K), -1);
  std::vector<int> position(static_cast<std::size_t>(K), -1);
  for (int g = 0; g < 4; ++g) {
    const auto& vars = partition.groups[static_cast<std::size_t>(g)];
    for (std::size_t d = 0; d < vars.size(); ++d) {
      const int v = vars[d];
      if (v < 0 || v >= K || owner[static_cast<std::size_t>(v)] != -1)
        throw std::invalid_argument("partition is not a disjoint cover");
      owner[static_cast<std::size_t>(v)] = g;
      position[static_cast<std::size_t>(v)] = static_cast<int>(d);
    }
  }
  if (group_sets.size() != 4) throw std::invalid_argument("expected four group signal sets");
  for (int g = 0; g < 4; ++g) {
    if (group_sets[static_cast<std::size_t>(g)].dim !=
        static_cast<int>(partition.groups[static_cast<std::size_t>(g)].size()))
      throw std::invalid_argument("signal set dimension does not match its group");
  }

  GroupDecodabilityReport report;
  std::vector<ExactMatrix> adjoints;
  adjoints.reserve(static_cast<std::size_t>(K));
  for (int i = 0; i < K; ++i) adjoints.push_back(design.weight(i).adjoint());
  for (int i = 0; i < K; ++i)
    if (!(adjoints[static_cast<std::size_t>(i)] * design.weight(i)).is_identity())
      report.non_unitary_weights.push_back(i);

  for (int i = 0; i < K; ++i) {
    for (int j = i + 1; j < K; ++j) {
      const ExactMatrix cross = adjoints[static_cast<std::size_t>(i)] * design.weight(j) +
                                adjoints[static_cast<std::size_t>(j)] * design.weight(i);
      if (cross.is_zero()) continue;
      const int gi = owner[static_cast<std::size_t>(i)];
      const int gj = owner[static_cast<std::size_t>(j)];
      if (gi != gj) {
        report.couplings.push_back({i, j, true});
        continue;
      }
      // Same group: harmless when the signal set never lights up both
      // coordinates at once (axis-structured sets).
      const GroupSignalSet& set = group_sets[static_cast<std::size_t>(gi)];
      const int di = position[static_cast<std::size_t>(i)];
      const int dj = position[static_cast<std::size_t>(j)];
      bool annihilated = true;
      for (const auto& p : set.points) {
        if (p[static_cast<std::size_t>(di)] != 0.0 && p[static_cast<std::size_t>(dj)] != 0.0) {
          annihilated = false;
          break;
        }
      }
      if (!annihilated) report.couplings.push_back({i, j, false});
    }
  }
  return report;
}

}  // namespace ddstc
