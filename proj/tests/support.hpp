#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "hclab/linalg.hpp"

namespace hclab::testing {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::Index;
using linalg::RationalMatrix;

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

inline Complex random_complex(std::mt19937_64& rng, double r = 1.0) {
  return {uniform(rng, -r, r), uniform(rng, -r, r)};
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows * cols; ++i) m.data()[i] = random_complex(rng);
  return m;
}

inline ComplexVector random_vector(std::mt19937_64& rng, Index d) { return random_matrix(rng, d, 1).col(0); }

/// Small integers over small denominators, canonical.
inline mpq_class random_rational(std::mt19937_64& rng, long span = 5, long max_den = 4) {
  mpq_class q(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span,
              1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den)));
  q.canonicalize();
  return q;
}

inline RationalMatrix random_rational_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_rational(rng);
  return m;
}

/// Determinant by the permutation expansion.
inline mpq_class leibniz_det(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpq_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    mpq_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Nilpotent matrix: random strictly upper triangular, conjugated by a random well-conditioned matrix.
inline ComplexMatrix random_nilpotent(std::mt19937_64& rng, Index d) {
  ComplexMatrix n = random_matrix(rng, d, d).triangularView<Eigen::StrictlyUpper>();
  const ComplexMatrix p = ComplexMatrix::Identity(d, d) + 0.2 * random_matrix(rng, d, d);
  return p * n * p.inverse();
}

}  // namespace hclab::testing
