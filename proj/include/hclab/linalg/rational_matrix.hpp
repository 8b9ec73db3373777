#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hclab/linalg/subspace.hpp"

namespace hclab::linalg {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix zero(std::size_t rows, std::size_t cols) { return RationalMatrix(rows, cols); }
  /// Columns are the given vectors.
  static RationalMatrix from_columns(const std::vector<RationalVector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector column(std::size_t c) const;
  RationalVector row(std::size_t r) const;
  RationalMatrix transpose() const;
  bool is_zero() const;

  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator*(const Rational& s) const;
  RationalVector operator*(const RationalVector& v) const;
  bool operator==(const RationalMatrix& other) const;

  RationalMatrix power(unsigned p) const;
  /// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
  RationalMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  /// Basis of the null space (one vector per free column).
  std::vector<RationalVector> kernel_basis() const;
  /// Throws DomainError when singular.
  RationalMatrix inverse() const;
  /// Solves A x = b for square invertible A.
  RationalVector solve(const RationalVector& b) const;

  ComplexMatrix to_complex() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Determinant by fraction-free (Bareiss) elimination.
Rational det_exact(const RationalMatrix& a);

RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector scale(const RationalVector& a, const Rational& s);
bool is_zero(const RationalVector& v);
ComplexVector to_complex(const RationalVector& v);

/// Kronecker product, first factor most significant.
RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace hclab::linalg
