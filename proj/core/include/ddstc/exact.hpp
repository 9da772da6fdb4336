#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ddstc {

// Gaussian integer re + im*i. Construction and verification are exact integer
// identities; floating point enters only at simulation time.
struct ExactComplex {
  std::int64_t re{0};
  std::int64_t im{0};

  constexpr ExactComplex() = default;
  constexpr ExactComplex(std::int64_t r, std::int64_t i) : re(r), im(i) {}

  static constexpr ExactComplex unit_imaginary() { return {0, 1}; }

  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr ExactComplex conj() const { return {re, -im}; }

  friend constexpr ExactComplex operator+(ExactComplex a, ExactComplex b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend constexpr ExactComplex operator-(ExactComplex a, ExactComplex b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend constexpr ExactComplex operator-(ExactComplex a) { return {-a.re, -a.im}; }
  friend constexpr ExactComplex operator*(ExactComplex a, ExactComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(ExactComplex a, ExactComplex b) = default;

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  std::string to_string() const;
};

// Dense row-major matrix over ExactComplex. Covers exactly what the exact
// construction and verification paths need; numeric work uses Eigen.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("ExactMatrix: negative dimension");
  }

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = {1, 0};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  ExactComplex& operator()(int r, int c) { return data_[index(r, c)]; }
  const ExactComplex& operator()(int r, int c) const { return data_[index(r, c)]; }

  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix scaled(ExactComplex s) const;
  ExactMatrix conjugate() const;
  ExactMatrix transpose() const;
  ExactMatrix adjoint() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const;
  bool is_identity() const;

  Eigen::MatrixXcd to_complex() const;
  std::string to_string() const;

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("ExactMatrix index");
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_{0};
  int cols_{0};
  std::vector<ExactComplex> data_;
};

}  // namespace ddstc
