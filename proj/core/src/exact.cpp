#include "ddstc/exact.hpp"

#include <sstream>

namespace ddstc {

std::string ExactComplex::to_string() const {
  std::ostringstream os;
  if (im == 0) {
    os << re;
  } else if (re == 0) {
    os << im << "i";
  } else {
    os << re << (im > 0 ? "+" : "") << im << "i";
  }
  return os.str();
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("ExactMatrix: shape mismatch in +");
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("ExactMatrix: shape mismatch in -");
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
  return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("ExactMatrix: shape mismatch in *");
  ExactMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) {
      const ExactComplex a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (int c = 0; c < o.cols_; ++c) {
        out(r, c) = out(r, c) + a * o(k, c);
      }
    }
  }
  return out;
}

ExactMatrix ExactMatrix::scaled(ExactComplex s) const {
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
  return out;
}

ExactMatrix ExactMatrix::conjugate() const {
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].conj();
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ExactMatrix ExactMatrix::adjoint() const { return transpose().conjugate(); }

bool ExactMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? ExactComplex{1, 0} : ExactComplex{0, 0})) return false;
  return true;
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
  Eigen::MatrixXcd out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).to_complex();
  return out;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    os << (r == 0 ? "[" : " ") << "[";
    for (int c = 0; c < cols_; ++c) {
      os << (*this)(r, c).to_string();
      if (c + 1 < cols_) os << ", ";
    }
    os << "]" << (r + 1 < rows_ ? ",\n" : "]");
  }
  return os.str();
}

}  // namespace ddstc
