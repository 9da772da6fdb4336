#include "ddstc/signal_sets.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ddstc {

namespace {

// Byte key for duplicate detection; -0.0 folded into +0.0 first so equal
// matrices always key identically.
std::string matrix_key(const Eigen::MatrixXcd& m) {
  std::string key(static_cast<std::size_t>(m.size()) * 2 * sizeof(double), '\0');
  char* out = key.data();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      double re = m(r, c).real();
      double im = m(r, c).imag();
      if (re == 0.0) re = 0.0;
      if (im == 0.0) im = 0.0;
      std::memcpy(out, &re, sizeof re);
      out += sizeof re;
      std::memcpy(out, &im, sizeof im);
      out += sizeof im;
    }
  }
  return key;
}

}  // namespace

bool GroupSignalSet::axis_structured() const {
  for (const auto& p : points) {
    int nonzero = 0;
    for (const double v : p)
      if (v != 0.0) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

GroupSignalSet build_axis_signal_set(int dim, std::span<const double> amplitudes,
                                     bool include_negative) {
  if (dim < 1) throw std::invalid_argument("signal set dimension must be positive");
  if (amplitudes.empty()) throw std::invalid_argument("need at least one amplitude");
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (!(amplitudes[i] > 0.0)) throw std::invalid_argument("amplitudes must be positive");
    for (std::size_t j = i + 1; j < amplitudes.size(); ++j)
      if (amplitudes[i] == amplitudes[j]) throw std::invalid_argument("amplitudes must be distinct");
  }
  GroupSignalSet set;
  set.dim = dim;
  for (int axis = 0; axis < dim; ++axis) {
    for (const double amp : amplitudes) {
      std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
      p[static_cast<std::size_t>(axis)] = amp;
      set.points.push_back(p);
      if (include_negative) {
        p[static_cast<std::size_t>(axis)] = -amp;
        set.points.push_back(std::move(p));
      }
    }
  }
  return set;
}

ScaleCheck verify_scaled_unitary(const Eigen::MatrixXcd& U, double tol) {
  ScaleCheck check;
  if (U.rows() != U.cols() || U.rows() == 0) return check;
  const Eigen::MatrixXcd gram = U.adjoint() * U;
  const double a2 = gram(0, 0).real();
  double dev = std::abs(gram(0, 0).imag());
  for (Eigen::Index r = 0; r < gram.rows(); ++r) {
    for (Eigen::Index c = 0; c < gram.cols(); ++c) {
      const std::complex<double> expect = (r == c) ? std::complex<double>(a2, 0.0) : 0.0;
      dev = std::max(dev, std::abs(gram(r, c) - expect));
    }
  }
  check.max_deviation = dev;
  check.scale = a2 > 0.0 ? std::sqrt(a2) : 0.0;
  check.ok = dev <= tol && a2 > tol;
  return check;
}

Codebook::Codebook(LinearDesign design, GroupPartition partition, std::vector<GroupSignalSet> sets,
                   std::vector<GroupSignalSet> normalized_sets, std::vector<CodebookEntry> entries,
                   std::vector<int> flat_to_entry, double normalization)
    : design_(std::move(design)),
      partition_(std::move(partition)),
      sets_(std::move(sets)),
      normalized_sets_(std::move(normalized_sets)),
      entries_(std::move(entries)),
      flat_to_entry_(std::move(flat_to_entry)),
      normalization_(normalization) {}

double Codebook::bits_per_codeword() const {
  return std::log2(static_cast<double>(entries_.size()));
}

int Codebook::entry_index(const std::array<int, 4>& group_points) const {
  std::size_t flat = 0;
  for (int g = 0; g < 4; ++g) {
    const std::size_t n = sets_[static_cast<std::size_t>(g)].size();
    const int idx = group_points[static_cast<std::size_t>(g)];
    if (idx < 0 || static_cast<std::size_t>(idx) >= n) return -1;
    flat = flat * n + static_cast<std::size_t>(idx);
  }
  return flat_to_entry_[flat];
}

Codebook build_codebook(const LinearDesign& design, const GroupPartition& partition,
                        std::vector<GroupSignalSet> sets, double target_mean_square, double tol) {
  const int K = design.variable_count();
  if (partition.variable_count() != K)
    throw std::invalid_argument("partition does not cover the design variables");
  if (sets.size() != 4) throw std::invalid_argument("expected four group signal sets");
  if (!(target_mean_square > 0.0)) throw std::invalid_argument("target mean square must be positive");
  std::size_t total = 1;
  for (int g = 0; g < 4; ++g) {
    const auto& set = sets[static_cast<std::size_t>(g)];
    const auto& vars = partition.groups[static_cast<std::size_t>(g)];
    if (set.dim != static_cast<int>(vars.size()))
      throw std::invalid_argument("signal set dimension does not match its group");
    if (set.points.empty()) throw std::invalid_argument("empty group signal set");
    for (const auto& p : set.points)
      if (p.size() != static_cast<std::size_t>(set.dim))
        throw std::invalid_argument("signal point dimension mismatch");
    total *= set.points.size();
  }

  std::vector<CodebookEntry> entries;
  entries.reserve(total);
  std::vector<int> flat_to_entry(total, -1);
  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(total);

  std::vector<double> x(static_cast<std::size_t>(K));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::array<int, 4> idx{};
    std::size_t rem = flat;
    for (int g = 3; g >= 0; --g) {
      const std::size_t n = sets[static_cast<std::size_t>(g)].size();
      idx[static_cast<std::size_t>(g)] = static_cast<int>(rem % n);
      rem /= n;
    }
    bool all_zero = true;
    for (int g = 0; g < 4; ++g) {
      const auto& vars = partition.groups[static_cast<std::size_t>(g)];
      const auto& p = sets[static_cast<std::size_t>(g)].points[static_cast<std::size_t>(idx[static_cast<std::size_t>(g)])];
      for (std::size_t d = 0; d < vars.size(); ++d) {
        x[static_cast<std::size_t>(vars[d])] = p[d];
        if (p[d] != 0.0) all_zero = false;
      }
    }
    if (all_zero) continue;  // the zero matrix carries no scale and is excluded

    CodebookEntry entry;
    entry.symbols = x;
    entry.matrix = design.evaluate(x);
    entry.group_points = idx;
    const ScaleCheck check = verify_scaled_unitary(entry.matrix, tol);
    if (!check.ok) {
      std::ostringstream os;
      os << "signal sets break scaled unitarity at entry " << flat << " (max deviation "
         << check.max_deviation << ")";
      throw std::invalid_argument(os.str());
    }
    entry.scale = check.scale;
    // Key equality is byte equality of the entries, so a hit means the
    // matrices coincide numerically.
    const auto [it, inserted] = seen.try_emplace(matrix_key(entry.matrix), entries.size());
    if (!inserted)
      throw std::invalid_argument("duplicate codeword matrices in the enumerated codebook");
    flat_to_entry[flat] = static_cast<int>(entries.size());
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw std::invalid_argument("codebook is empty");

  double mean_square = 0.0;
  for (const auto& e : entries) mean_square += e.scale * e.scale;
  mean_square /= static_cast<double>(entries.size());
  const double divisor = std::sqrt(mean_square / target_mean_square);
  for (auto& e : entries) {
    for (auto& v : e.symbols) v /= divisor;
    e.matrix /= divisor;
    e.scale /= divisor;
  }
  std::vector<GroupSignalSet> normalized = sets;
  for (auto& set : normalized)
    for (auto& p : set.points)
      for (auto& v : p) v /= divisor;

  return Codebook(design, partition, std::move(sets), std::move(normalized), std::move(entries),
                  std::move(flat_to_entry), divisor);
}

MinDistanceResult min_distance(std::span<const Eigen::MatrixXcd> codewords) {
  if (codewords.size() < 2)
    throw std::invalid_argument("minimum distance needs at least two codewords");
  MinDistanceResult best{std::numeric_limits<double>::infinity(), 0, 1};
  for (std::size_t i = 0; i < codewords.size(); ++i) {
    for (std::size_t j = i + 1; j < codewords.size(); ++j) {
      const double d = (codewords[i] - codewords[j]).norm();
      if (d < best.value) best = {d, i, j};
    }
  }
  return best;
}

MinDistanceResult min_distance(const Codebook& cb) {
  const auto entries = cb.entries();
  if (entries.size() < 2)
    throw std::invalid_argument("minimum distance needs at least two codewords");
  MinDistanceResult best{std::numeric_limits<double>::infinity(), 0, 1};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const double d = (entries[i].matrix - entries[j].matrix).norm();
      if (d < best.value) best = {d, i, j};
    }
  }
  return best;
}

}  // namespace ddstc
