#include "hclab/linalg/rational_matrix.hpp"

#include <sstream>
#include <utility>

#include "hclab/errors.hpp"

namespace hclab::linalg {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("RationalMatrix: ragged initializer");
    for (const auto& x : r) {
      data_.push_back(x);
      data_.back().canonicalize();
    }
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& columns, std::size_t rows) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InputError("RationalMatrix::from_columns: length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("RationalMatrix +: shape mismatch");
  RationalMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("RationalMatrix -: shape mismatch");
  RationalMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw InputError("RationalMatrix *: shape mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
  RationalMatrix out(*this);
  for (auto& x : out.data_) x *= s;
  return out;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw InputError("RationalMatrix * vector: shape mismatch");
  RationalVector out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

RationalMatrix RationalMatrix::power(unsigned p) const {
  if (!square()) throw InputError("RationalMatrix::power: matrix not square");
  RationalMatrix result = identity(rows_);
  RationalMatrix base = *this;
  while (p > 0) {
    if (p & 1U) result = result * base;
    p >>= 1U;
    if (p > 0) base = base * base;
  }
  return result;
}

RationalMatrix RationalMatrix::rref(std::vector<std::size_t>* pivots) const {
  RationalMatrix m(*this);
  std::vector<std::size_t> piv;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
    std::size_t p = lead_row;
    while (p < rows_ && sgn(m(p, c)) == 0) ++p;
    if (p == rows_) continue;
    if (p != lead_row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(lead_row, j));
    const Rational inv = 1 / m(lead_row, c);
    for (std::size_t j = c; j < cols_; ++j) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead_row || sgn(m(r, c)) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = c; j < cols_; ++j) m(r, j) -= f * m(lead_row, j);
    }
    piv.push_back(c);
    ++lead_row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t RationalMatrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

std::vector<RationalVector> RationalMatrix::kernel_basis() const {
  std::vector<std::size_t> piv;
  const RationalMatrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols_, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix RationalMatrix::inverse() const {
  if (!square()) throw InputError("RationalMatrix::inverse: matrix not square");
  RationalMatrix aug(rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_ + i) = 1;
  }
  std::vector<std::size_t> piv;
  const RationalMatrix r = aug.rref(&piv);
  if (piv.size() < rows_ || (rows_ > 0 && piv.back() >= cols_)) {
    throw DomainError("RationalMatrix::inverse: matrix is singular");
  }
  RationalMatrix inv(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = r(i, cols_ + j);
  return inv;
}

RationalVector RationalMatrix::solve(const RationalVector& b) const {
  if (!square() || b.size() != rows_) throw InputError("RationalMatrix::solve: shape mismatch");
  RationalMatrix aug(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_) = b[i];
  }
  std::vector<std::size_t> piv;
  const RationalMatrix r = aug.rref(&piv);
  if (piv.size() < rows_ || (rows_ > 0 && piv.back() >= cols_)) {
    throw DomainError("RationalMatrix::solve: matrix is singular");
  }
  RationalVector x(rows_);
  for (std::size_t i = 0; i < rows_; ++i) x[i] = r(i, cols_);
  return x;
}

ComplexMatrix RationalMatrix::to_complex() const {
  ComplexMatrix m(static_cast<Index>(rows_), static_cast<Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = (*this)(i, j).get_d();
  return m;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j).get_str();
    out << "]";
  }
  out << "]";
  return out.str();
}

Rational det_exact(const RationalMatrix& a) {
  if (!a.square()) throw InputError("det_exact: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Clear denominators row by row, then run Bareiss over the integers.
  std::vector<mpz_class> m(n * n);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class num = a(i, j).get_num() * (l / a(i, j).get_den());
      m[i * n + j] = num;
    }
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i * n + j] = v;
      }
    }
    prev = m[k * n + k];
  }
  Rational det(mpz_class(sign * m[n * n - 1]), scale);
  det.canonicalize();
  return det;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InputError("add: length mismatch");
  RationalVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

RationalVector scale(const RationalVector& a, const Rational& s) {
  RationalVector out(a);
  for (auto& x : out) x *= s;
  return out;
}

bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

ComplexVector to_complex(const RationalVector& v) {
  ComplexVector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i].get_d();
  return out;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace hclab::linalg
