#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hclab::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Relative rank threshold used throughout when the caller gives none.
inline constexpr double kDefaultRankTol = 1e-9;

/// A linear subspace of C^ambient held as an orthonormal basis (columns).
///
/// Bases are produced by modified Gram-Schmidt with one re-orthogonalisation
/// pass; a candidate vector is discarded when the norm left after projection
/// falls below `tol` times its original norm.
class Subspace {
 public:
  explicit Subspace(Index ambient = 0, double tol = kDefaultRankTol);

  static Subspace from_spanning(const ComplexMatrix& vectors, double tol = kDefaultRankTol);
  static Subspace whole(Index ambient);
  /// span{e_i : i in indices} (0-based).
  static Subspace coordinate(Index ambient, const std::vector<Index>& indices);

  Index ambient() const noexcept { return ambient_; }
  Index dim() const noexcept { return basis_.cols(); }
  bool is_zero() const noexcept { return basis_.cols() == 0; }
  double tol() const noexcept { return tol_; }
  const ComplexMatrix& basis() const noexcept { return basis_; }

  ComplexVector project(const ComplexVector& v) const;
  /// Euclidean distance from v to the subspace.
  double distance(const ComplexVector& v) const;
  bool contains(const ComplexVector& v, double tol) const;
  /// Every unit vector of `other` lies within `tol` of this subspace.
  bool contains(const Subspace& other, double tol) const;

  /// Span of the union.
  Subspace sum(const Subspace& other) const;
  /// Adds one vector to the spanning set.
  Subspace extended(const ComplexVector& v) const;

 private:
  Subspace(ComplexMatrix orthonormal, double tol);

  Index ambient_;
  double tol_;
  ComplexMatrix basis_;
};

/// Same dimension and mutual containment within tol.
bool same_subspace(const Subspace& a, const Subspace& b, double tol);

}  // namespace hclab::linalg
