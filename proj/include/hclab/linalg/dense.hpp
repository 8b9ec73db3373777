#pragma once

#include <string_view>
#include <vector>

#include "hclab/linalg/subspace.hpp"

namespace hclab::linalg {

/// Largest dimension accepted by eigenvalues(); larger requests are rejected.
inline constexpr Index kMaxEigenDim = 64;

struct KernelImage {
  Subspace kernel;
  Subspace image;
};

/// Throws InputError naming `what` if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, std::string_view what);

/// Null space and column space of `a`. Singular values at or below
/// tol * (largest column norm) count as zero.
KernelImage kernel_and_image(const ComplexMatrix& a, double tol = kDefaultRankTol);

/// As kernel_and_image, with an explicit absolute scale for the rank threshold
/// (threshold = tol * scale). Used for matrix powers whose own column norms
/// are not a meaningful reference.
KernelImage kernel_and_image_scaled(const ComplexMatrix& a, double tol, double scale);

Subspace intersect(const Subspace& u, const Subspace& v, double tol = kDefaultRankTol);

/// Backward shift on C^d: S e_1 = 0, S e_k = e_{k-1}.
ComplexMatrix backward_shift(Index d);

/// A^p by repeated squaring (p >= 0).
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned p);

/// exp(z A) for nilpotent A as the finite sum over j < dim of z^j A^j / j!.
/// Throws DomainError when ||A^dim|| exceeds tol (relative to max(1, ||A||)^dim).
ComplexMatrix exp_nilpotent(const ComplexMatrix& a, Complex z, double tol = 1e-10);

/// Eigenvalues with multiplicity (dim <= kMaxEigenDim).
std::vector<Complex> eigenvalues(const ComplexMatrix& a, double tol = 1e-8);

/// Smallest singular value of (A - lambda I) divided by max(1, ||A||_2).
double eigen_residual(const ComplexMatrix& a, Complex lambda);

/// Groups of eigenvalues that belong to one (possibly defective) eigenvalue.
struct EigenCluster {
  Complex center;  // mean of the members
  std::size_t multiplicity;
};

/// Clusters computed eigenvalues. Members of a defective block of size m are
/// spread over a circle of radius ~ (eps ||A||)^(1/m); a group of size m is
/// accepted when its diameter is at most max(min_radius, 10 (eps ||A|| dim)^(1/m)).
std::vector<EigenCluster> cluster_eigenvalues(const std::vector<Complex>& values, double matrix_norm,
                                              double min_radius = 1e-7);

/// Frobenius norm of AB - BA.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace hclab::linalg
