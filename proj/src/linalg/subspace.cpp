#include "hclab/linalg/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "hclab/errors.hpp"

namespace hclab::linalg {

namespace {

// Modified Gram-Schmidt with a second orthogonalisation pass.
ComplexMatrix orthonormalize(const ComplexMatrix& seed, const ComplexMatrix& vectors, double tol) {
  const Index n = vectors.rows();
  ComplexMatrix q(n, seed.cols() + vectors.cols());
  Index count = 0;
  for (Index c = 0; c < seed.cols(); ++c) q.col(count++) = seed.col(c);
  for (Index c = 0; c < vectors.cols(); ++c) {
    ComplexVector v = vectors.col(c);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < count; ++j) v -= q.col(j) * q.col(j).dot(v);
    }
    const double left = v.norm();
    if (left <= tol * original) continue;
    q.col(count++) = v / left;
  }
  return q.leftCols(count);
}

}  // namespace

Subspace::Subspace(Index ambient, double tol) : ambient_(ambient), tol_(tol), basis_(ambient, 0) {
  if (ambient < 0) throw InputError("Subspace: negative ambient dimension");
}

Subspace::Subspace(ComplexMatrix orthonormal, double tol)
    : ambient_(orthonormal.rows()), tol_(tol), basis_(std::move(orthonormal)) {}

Subspace Subspace::from_spanning(const ComplexMatrix& vectors, double tol) {
  if (!vectors.allFinite()) throw InputError("Subspace: non-finite spanning vector");
  return Subspace(orthonormalize(ComplexMatrix(vectors.rows(), 0), vectors, tol), tol);
}

Subspace Subspace::whole(Index ambient) {
  return Subspace(ComplexMatrix::Identity(ambient, ambient), kDefaultRankTol);
}

Subspace Subspace::coordinate(Index ambient, const std::vector<Index>& indices) {
  ComplexMatrix m = ComplexMatrix::Zero(ambient, static_cast<Index>(indices.size()));
  for (std::size_t c = 0; c < indices.size(); ++c) {
    if (indices[c] < 0 || indices[c] >= ambient) throw InputError("Subspace: coordinate index out of range");
    m(indices[c], static_cast<Index>(c)) = 1.0;
  }
  return from_spanning(m);
}

ComplexVector Subspace::project(const ComplexVector& v) const {
  if (v.size() != ambient_) throw InputError("Subspace::project: ambient mismatch");
  if (is_zero()) return ComplexVector::Zero(ambient_);
  return basis_ * (basis_.adjoint() * v);
}

double Subspace::distance(const ComplexVector& v) const { return (v - project(v)).norm(); }

bool Subspace::contains(const ComplexVector& v, double tol) const {
  return distance(v) <= tol * std::max(1.0, v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  if (other.ambient_ != ambient_) throw InputError("Subspace::contains: ambient mismatch");
  if (other.is_zero()) return true;
  ComplexMatrix residual = other.basis_;
  if (!is_zero()) residual -= basis_ * (basis_.adjoint() * other.basis_);
  return residual.norm() <= tol * std::sqrt(static_cast<double>(other.dim()));
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw InputError("Subspace::sum: ambient mismatch");
  return Subspace(orthonormalize(basis_, other.basis_, std::max(tol_, other.tol_)), std::max(tol_, other.tol_));
}

Subspace Subspace::extended(const ComplexVector& v) const {
  if (v.size() != ambient_) throw InputError("Subspace::extended: ambient mismatch");
  return Subspace(orthonormalize(basis_, v, tol_), tol_);
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  return a.ambient() == b.ambient() && a.dim() == b.dim() && a.contains(b, tol) && b.contains(a, tol);
}

}  // namespace hclab::linalg
