#include "ddstc/algebra.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace ddstc {

BasisMonomial BasisMonomial::gamma(int k) {
  if (k < 1 || k > 2) throw std::invalid_argument("gamma index must be 1 or 2");
  return {1u << (k - 1), 0};
}

BasisMonomial BasisMonomial::delta(int k) {
  if (k < 1 || k > 31) throw std::invalid_argument("delta index out of range");
  return {0, 1u << (k - 1)};
}

std::string BasisMonomial::to_string() const {
  if (gamma_mask == 0 && delta_mask == 0) return "1";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < 2; ++k) {
    if (gamma_mask >> k & 1u) {
      os << (first ? "" : " ") << "g" << (k + 1);
      first = false;
    }
  }
  for (int k = 0; k < 31; ++k) {
    if (delta_mask >> k & 1u) {
      os << (first ? "" : " ") << "d" << (k + 1);
      first = false;
    }
  }
  return os.str();
}

SignedMonomial multiply_monomials(const BasisMonomial& lhs, const BasisMonomial& rhs) {
  // Deltas are central and square to +1, so they contribute a plain XOR.
  // Gammas anticommute pairwise and square to -1: append each gamma of rhs,
  // lowest index first, counting the swaps needed to restore canonical order.
  int sign = 1;
  std::uint32_t acc = lhs.gamma_mask;
  for (std::uint32_t k = 0; k < 32; ++k) {
    if (!(rhs.gamma_mask >> k & 1u)) continue;
    if (std::popcount(acc >> (k + 1)) % 2 != 0) sign = -sign;
    if (acc >> k & 1u) {
      sign = -sign;
      acc &= ~(1u << k);
    } else {
      acc |= 1u << k;
    }
  }
  return {sign, BasisMonomial{acc, lhs.delta_mask ^ rhs.delta_mask}};
}

AlgebraElement AlgebraElement::monomial(BasisMonomial m, std::int64_t coeff) {
  AlgebraElement out;
  out.add_term(m, coeff);
  return out;
}

std::int64_t AlgebraElement::coefficient(const BasisMonomial& m) const {
  const auto it = coeffs_.find(m);
  return it == coeffs_.end() ? 0 : it->second;
}

AlgebraElement& AlgebraElement::add_term(const BasisMonomial& m, std::int64_t coeff) {
  if (coeff == 0) return *this;
  const auto [it, inserted] = coeffs_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) coeffs_.erase(it);
  }
  return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  for (const auto& [m, c] : o.coeffs_) out.add_term(m, c);
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  for (const auto& [m, c] : o.coeffs_) out.add_term(m, -c);
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  AlgebraElement out;
  for (const auto& [ma, ca] : coeffs_) {
    for (const auto& [mb, cb] : o.coeffs_) {
      const SignedMonomial p = multiply_monomials(ma, mb);
      out.add_term(p.monomial, p.sign * ca * cb);
    }
  }
  return out;
}

AlgebraElement AlgebraElement::operator*(std::int64_t s) const {
  AlgebraElement out;
  if (s == 0) return out;
  for (const auto& [m, c] : coeffs_) out.coeffs_.emplace(m, c * s);
  return out;
}

std::string AlgebraElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : coeffs_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1 || (m.gamma_mask == 0 && m.delta_mask == 0)) os << mag;
    if (m.gamma_mask != 0 || m.delta_mask != 0) {
      if (mag != 1) os << " ";
      os << m.to_string();
    }
    first = false;
  }
  return os.str();
}

AlgebraElement sigma(const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [m, c] : x.coefficients()) out.add_term(m, (m.gamma_mask & 1u) ? -c : c);
  return out;
}

RepContext::RepContext(int lambda) : lambda_(lambda) {
  if (lambda < 2) throw std::invalid_argument("lambda must be at least 2");
  if (lambda > 10) throw std::invalid_argument("lambda above 10 is not supported");
}

BasisMonomial RepContext::c_basis(int j) const {
  const int R = relay_count();
  const int M = half();
  if (j < 0 || j >= R) throw std::out_of_range("complex basis index");
  if (j < M) return {0, static_cast<std::uint32_t>(j)};
  return {2u, static_cast<std::uint32_t>(j - M)};
}

ExactMatrix left_regular_rep(const RepContext& ctx, const AlgebraElement& x) {
  const int R = ctx.relay_count();
  const int M = ctx.half();
  for (const auto& [m, c] : x.coefficients()) {
    if (m.delta_mask >> ctx.delta_count() != 0)
      throw std::invalid_argument("element uses delta generators beyond the context");
  }
  ExactMatrix rep(R, R);
  for (int j = 0; j < R; ++j) {
    const AlgebraElement col = x * AlgebraElement::monomial(ctx.c_basis(j));
    for (const auto& [m, c] : col.coefficients()) {
      const bool has_g1 = m.gamma_mask & 1u;
      const bool has_g2 = m.gamma_mask & 2u;
      const int row = static_cast<int>(m.delta_mask) + (has_g2 ? M : 0);
      // g1 d^mask = (d^mask) g1 and g1 g2 d^mask = (g2 d^mask) (-g1), so a g1
      // factor turns into the scalar +-i under the right scalar action.
      ExactComplex v{c, 0};
      if (has_g1) v = ExactComplex{0, has_g2 ? -c : c};
      rep(row, j) = rep(row, j) + v;
    }
  }
  return rep;
}

std::vector<AlgebraElement> center_generators(const RepContext& ctx) {
  std::vector<AlgebraElement> out;
  out.reserve(ctx.half());
  for (int d = 0; d < ctx.half(); ++d)
    out.push_back(AlgebraElement::monomial({0, static_cast<std::uint32_t>(d)}));
  return out;
}

std::vector<AlgebraElement> conjugate_linkers(const RepContext& ctx, LinkerFamily family) {
  const std::uint32_t gamma = family == LinkerFamily::Gamma2 ? 2u : 3u;
  std::vector<AlgebraElement> out;
  out.reserve(ctx.half());
  for (int d = 0; d < ctx.half(); ++d)
    out.push_back(AlgebraElement::monomial({gamma, static_cast<std::uint32_t>(d)}));
  return out;
}

}  // namespace ddstc
