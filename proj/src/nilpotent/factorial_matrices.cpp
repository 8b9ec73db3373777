#include <algorithm>
#include <cmath>

#include "hclab/nilpotent.hpp"

namespace hclab::nilpotent {

namespace {

mpz_class factorial(unsigned m) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), m);
  return f;
}

void require_positive(unsigned n, const char* what) {
  if (n == 0) throw InputError(std::string(what) + ": size must be at least 1");
}

}  // namespace

ShiftSpace::ShiftSpace(unsigned n_) : n(n_) { require_positive(n_, "ShiftSpace"); }

ComplexMatrix ShiftSpace::shift() const { return linalg::backward_shift(dim()); }

ComplexMatrix ShiftSpace::projection() const {
  ComplexMatrix p = ComplexMatrix::Zero(dim(), dim());
  for (Index i = 0; i < static_cast<Index>(n); ++i) p(i, i) = 1.0;
  return p;
}

linalg::Subspace ShiftSpace::E() const {
  std::vector<Index> idx(n);
  for (unsigned i = 0; i < n; ++i) idx[i] = i;
  return linalg::Subspace::coordinate(dim(), idx);
}

RationalMatrix build_Anz_exact(unsigned n, const mpq_class& z) {
  require_positive(n, "build_Anz");
  if (sgn(z) == 0) throw DomainError("build_Anz: z must be nonzero");
  RationalMatrix a(n, n);
  for (unsigned j = 1; j <= n; ++j) {
    for (unsigned k = 1; k <= n; ++k) {
      const unsigned e = j + k - 1;
      mpq_class p = 1;
      for (unsigned t = 0; t < e; ++t) p *= z;
      a(j - 1, k - 1) = p / mpq_class(factorial(e));
    }
  }
  return a;
}

ComplexMatrix build_Anz(unsigned n, Complex z) {
  require_positive(n, "build_Anz");
  if (z == Complex(0.0)) throw DomainError("build_Anz: z must be nonzero");
  ComplexMatrix a(n, n);
  for (unsigned j = 1; j <= n; ++j) {
    for (unsigned k = 1; k <= n; ++k) {
      const unsigned e = j + k - 1;
      a(j - 1, k - 1) = std::pow(z, static_cast<double>(e)) / std::tgamma(static_cast<double>(e) + 1.0);
    }
  }
  return a;
}

RationalMatrix build_D_exact(unsigned n, const mpq_class& z) {
  RationalMatrix d(n, n);
  mpq_class p = 1;
  for (unsigned i = 0; i < n; ++i) {
    d(i, i) = p;
    p *= z;
  }
  return d;
}

ComplexMatrix build_D(unsigned n, Complex z) {
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  Complex p = 1.0;
  for (unsigned i = 0; i < n; ++i) {
    d(i, i) = p;
    p *= z;
  }
  return d;
}

RationalMatrix build_Mnk(unsigned n, unsigned k) {
  require_positive(n, "build_Mnk");
  require_positive(k, "build_Mnk");
  RationalMatrix m(n, n);
  for (unsigned j = 1; j <= n; ++j) {
    for (unsigned l = 1; l <= n; ++l) {
      const unsigned top = k + n - l;
      m(j - 1, l - 1) = mpq_class(factorial(top), factorial(top + j - 1));
      m(j - 1, l - 1).canonicalize();
    }
  }
  return m;
}

DetMnk det_Mnk(unsigned n, unsigned k) {
  require_positive(n, "det_Mnk");
  require_positive(k, "det_Mnk");
  mpq_class value = 1;
  unsigned nn = n;
  unsigned kk = k;
  while (nn >= 2) {
    mpq_class ratio(factorial(nn - 1) * factorial(kk) * factorial(kk + 1),
                    factorial(kk + nn - 1) * factorial(kk + nn));
    ratio.canonicalize();
    value *= ratio;
    kk += 2;
    nn -= 1;
  }
  return {value, linalg::det_exact(build_Mnk(n, k))};
}

bool factorization_holds(unsigned n, const mpq_class& z) {
  const RationalMatrix d = build_D_exact(n, z);
  const RationalMatrix rhs = d * build_Anz_exact(n, 1) * d * z;
  return build_Anz_exact(n, z) == rhs;
}

double factorization_residual(unsigned n, Complex z) {
  const ComplexMatrix d = build_D(n, z);
  const ComplexMatrix rhs = z * d * build_Anz(n, 1.0) * d;
  return (build_Anz(n, z) - rhs).cwiseAbs().maxCoeff();
}

}  // namespace hclab::nilpotent
