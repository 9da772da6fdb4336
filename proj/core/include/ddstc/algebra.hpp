#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ddstc/exact.hpp"

namespace ddstc {

// Basis monomial gamma^g * delta^d of the extended Clifford algebra on two
// anticommuting generators g1, g2 (each squaring to -1) and commuting central
// generators d1..da (each squaring to +1). gamma_mask bit k-1 <-> gk,
// delta_mask bit k-1 <-> dk. Generators are kept in canonical order
// g1 g2 d1 d2 ... within a monomial.
struct BasisMonomial {
  std::uint32_t gamma_mask{0};
  std::uint32_t delta_mask{0};

  friend auto operator<=>(const BasisMonomial&, const BasisMonomial&) = default;

  static BasisMonomial one() { return {}; }
  static BasisMonomial gamma(int k);  // k in {1, 2}
  static BasisMonomial delta(int k);  // k >= 1

  std::string to_string() const;  // "1", "g1 g2 d1", ...
};

struct SignedMonomial {
  int sign{1};
  BasisMonomial monomial;
};

// Product of two basis monomials: a sign and the canonical result monomial.
SignedMonomial multiply_monomials(const BasisMonomial& lhs, const BasisMonomial& rhs);

// Integer linear combination of basis monomials, kept in canonical form
// (zero coefficients erased).
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement zero() { return {}; }
  static AlgebraElement one() { return monomial(BasisMonomial::one()); }
  static AlgebraElement monomial(BasisMonomial m, std::int64_t coeff = 1);

  const std::map<BasisMonomial, std::int64_t>& coefficients() const { return coeffs_; }
  std::int64_t coefficient(const BasisMonomial& m) const;
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const { return coeffs_.size(); }

  AlgebraElement& add_term(const BasisMonomial& m, std::int64_t coeff);

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator*(std::int64_t s) const;
  AlgebraElement operator-() const { return *this * -1; }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  std::string to_string() const;

 private:
  std::map<BasisMonomial, std::int64_t> coeffs_;
};

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

// Conjugation: replaces g1 by -g1, i.e. negates the coefficient of every
// monomial containing g1. An involutive ring map; with g1 playing the role of
// the imaginary unit it models complex conjugation.
AlgebraElement sigma(const AlgebraElement& x);

// Fixes the number of central generators and the ordering of the complex
// basis used by the matrix representation. With a = lambda - 1 central
// generators the complex basis has R = 2^lambda elements, ordered as
//   j <  R/2 : delta monomial with delta_mask = j
//   j >= R/2 : g2 * (delta monomial with delta_mask = j - R/2)
// Scalars act by right multiplication with g1, which makes left
// multiplication complex-linear.
class RepContext {
 public:
  explicit RepContext(int lambda);

  int lambda() const { return lambda_; }
  int delta_count() const { return lambda_ - 1; }        // a
  int relay_count() const { return 1 << lambda_; }       // R
  int half() const { return 1 << (lambda_ - 1); }        // M = R/2

  BasisMonomial c_basis(int j) const;

 private:
  int lambda_;
};

// Matrix of left multiplication by x in the complex basis of ctx. A ring
// homomorphism; basis monomials map to unitary matrices and g1 maps to a
// diagonal +-i matrix squaring to -I.
ExactMatrix left_regular_rep(const RepContext& ctx, const AlgebraElement& x);

// The R/2 delta monomials, in delta_mask order starting at 1. These commute
// with the whole algebra.
std::vector<AlgebraElement> center_generators(const RepContext& ctx);

enum class LinkerFamily { Gamma2, Gamma1Gamma2 };

// The R/2 elements l with l * sigma(x) == x * l for every x: g2 times each
// delta monomial, or g1 g2 times each for the alternative family.
std::vector<AlgebraElement> conjugate_linkers(const RepContext& ctx,
                                              LinkerFamily family = LinkerFamily::Gamma2);

}  // namespace ddstc
