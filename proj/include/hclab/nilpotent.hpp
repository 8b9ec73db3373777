#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hclab/linalg.hpp"
#include "hclab/wide.hpp"

namespace hclab::nilpotent {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::Index;
using linalg::RationalMatrix;

/// Default absolute tolerance for the residuals of jordan_solve.
inline constexpr double kJordanTol = 1e-10;

/// K^{2n} with the backward shift S, E = span{e_1..e_n} and the projection P onto E.
struct ShiftSpace {
  explicit ShiftSpace(unsigned n);

  unsigned n;
  Index dim() const { return 2 * static_cast<Index>(n); }
  ComplexMatrix shift() const;
  ComplexMatrix projection() const;
  linalg::Subspace E() const;
};

// ---- factorial matrices ----------------------------------------------------

/// A_{n,z} with entries z^{j+k-1}/(j+k-1)!; DomainError for z = 0.
RationalMatrix build_Anz_exact(unsigned n, const mpq_class& z);
ComplexMatrix build_Anz(unsigned n, Complex z);
/// D_{n,z} = diag(1, z, ..., z^{n-1}).
RationalMatrix build_D_exact(unsigned n, const mpq_class& z);
ComplexMatrix build_D(unsigned n, Complex z);
/// M_{n,k} with entries (k+n-l)!/(k+n-l+j-1)!.
RationalMatrix build_Mnk(unsigned n, unsigned k);

struct DetMnk {
  mpq_class recurrence;
  mpq_class direct;
  bool agree() const { return recurrence == direct; }
};

/// det M_{n,k} through the two-step recurrence down to det M_{1,k'} = 1, and directly.
DetMnk det_Mnk(unsigned n, unsigned k);

/// A_{n,z} == z D A_{n,1} D, exactly.
bool factorization_holds(unsigned n, const mpq_class& z);
/// max |A_{n,z} - z D A_{n,1} D| entrywise, in double.
double factorization_residual(unsigned n, Complex z);

// ---- approach pairs ----------------------------------------------------------

template <class S>
struct JordanSolution {
  std::vector<S> x;   // x^z in K^{2n}
  std::vector<S> ex;  // e^{zS} x^z
  double residual_u;  // ||P x^z - u||
  double residual_v;  // ||P e^{zS} x^z - v||
};

/// The unique x with P x = u and P e^{zS} x = v. u and v have length n (or 2n
/// with vanishing tail). Throws NumericError when the residual exceeds
/// tol * max(1, ||u|| + ||v||).
template <class S>
JordanSolution<S> jordan_solve(unsigned n, const S& z, const std::vector<S>& u, const std::vector<S>& v,
                               double tol = kJordanTol);

/// e^{zS} x on K^{2n} (x of even length 2n).
template <class S>
std::vector<S> apply_exp_shift(const S& z, const std::vector<S>& x);

/// (I+S)^j x via the binomial expansion.
template <class S>
std::vector<S> apply_unipotent_power(unsigned j, const std::vector<S>& x);

/// Upper triangular J on K^{2n} with J S = (e^S - I) J, J e_1 = e_1, unit
/// diagonal and vanishing first-row entries beyond the first column.
RationalMatrix similarity_J(unsigned n);

template <class S>
struct DiscretePair {
  std::vector<S> x;        // x_j
  std::vector<S> shifted;  // (I+S)^j x_j
  double error_u;          // ||x_j - u||
  double error_v;          // ||(I+S)^j x_j - v||
};

/// x_j = J^{-1} x^j(Ju, Jv).
template <class S>
DiscretePair<S> discrete_pair(unsigned n, unsigned j, const std::vector<S>& u, const std::vector<S>& v,
                              double tol = 1e-6);

// ---- tensor tuples -----------------------------------------------------------

/// K^{2n_1} (x) ... (x) K^{2n_k}; first factor most significant in the flat index.
struct TensorShiftTuple {
  static TensorShiftTuple build(const std::vector<unsigned>& blocks);

  std::vector<unsigned> blocks;
  Index dim = 0;
  std::vector<ComplexMatrix> T;      // T_j = I (x) ... (x) S_j (x) ... (x) I
  std::vector<Index> e_indices;      // flat indices spanning E_1 (x) ... (x) E_k

  std::size_t k() const { return blocks.size(); }
  Index flat_index(const std::vector<unsigned>& multi) const;
  std::vector<unsigned> multi_index(Index flat) const;
  /// e^{<z,T>} as the tensor product of the factor exponentials.
  ComplexMatrix exp_of(const ComplexVector& z) const;
};

struct TensorApproach {
  ComplexVector x;
  ComplexVector image;  // e^{<z_m,T>} x_m
  double error_u;
  double error_v;
  std::vector<bool> unbounded;  // the coordinate set C
};

/// Splits coordinates of z_m into growing (true) and bounded (false): a jump of
/// at least 10x between consecutive sorted moduli separates the two groups;
/// without such a jump every nonzero coordinate counts as growing.
std::vector<bool> detect_partition(const ComplexVector& z_m);

/// x_m for the sequence zs at index m. PreconditionError if the sequence has
/// not grown (sup-norm of zs[0..m] below twice the smallest nonzero norm) or
/// if the declared partition puts a zero coordinate into C.
TensorApproach tensor_approach(const TensorShiftTuple& tt, const std::vector<ComplexVector>& zs,
                               const ComplexVector& u, const ComplexVector& v, std::size_t m,
                               std::optional<std::vector<bool>> partition = std::nullopt, double tol = 1e-9);

// ---- unimodular Jordan chains ------------------------------------------------

template <class S>
struct UnimodularPair {
  Vec<S> u;                  // u_k -> 0,  z^k (I+A)^k u_k -> x
  Vec<S> v;                  // v_k -> x,  z^k (I+A)^k v_k -> 0
  unsigned chain_length;     // n used for the chain
  double u_norm;
  double u_image_error;
  double v_error;
  double v_image_norm;
};

/// Pair (u_k, v_k) for x in A^n(X) cap ker A^n and |z| = 1, built on the chain
/// h_j = A^{2n-j} w with A^n w = x. The 2n-dimensional core runs in 50-digit
/// arithmetic. n is the smallest power with A^n x = 0 unless `chain` fixes it,
/// which keeps the pair linear in x on a fixed space A^n(X) cap ker A^n.
/// DomainError names the space x fails to lie in.
template <class S>
UnimodularPair<S> unimodular_approach(const Mat<S>& a, const S& z, const Vec<S>& x, unsigned k, double tol = 1e-9,
                                      unsigned chain = 0);

/// A^p for the templated matrix types.
template <class S>
Mat<S> power(const Mat<S>& a, unsigned p);

}  // namespace hclab::nilpotent
