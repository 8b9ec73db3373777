#include <cmath>
#include <string>

#include "hclab/nilpotent.hpp"

namespace hclab::nilpotent {

namespace {

template <class S>
S inv_factorial(unsigned m) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), m);
  return ScalarOps<S>::from_rational(mpq_class(mpz_class(1), f));
}

template <class S>
S binomial(unsigned j, unsigned m) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), j, m);
  return ScalarOps<S>::from_rational(mpq_class(b));
}

template <class S>
double vec_norm(const std::vector<S>& v) {
  double acc = 0.0;
  for (const S& s : v) {
    const double m = ScalarOps<S>::magnitude(s);
    acc += m * m;
  }
  return std::sqrt(acc);
}

template <class S>
std::vector<S> head(const std::vector<S>& v, unsigned n, const char* what) {
  if (v.size() != n && v.size() != 2 * n) {
    throw InputError(std::string("jordan_solve: ") + what + " must have length n or 2n");
  }
  for (std::size_t i = n; i < v.size(); ++i) {
    if (ScalarOps<S>::magnitude(v[i]) != 0.0) {
      throw InputError(std::string("jordan_solve: ") + what + " must lie in E (vanishing tail)");
    }
  }
  return std::vector<S>(v.begin(), v.begin() + n);
}

template <class S>
std::vector<S> mul(const RationalMatrix& m, const std::vector<S>& v) {
  std::vector<S> out(m.rows(), S(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(i, j)) == 0) continue;
      out[i] += ScalarOps<S>::from_rational(m(i, j)) * v[j];
    }
  }
  return out;
}

template <class S>
std::vector<S> padded(const std::vector<S>& v, std::size_t size) {
  std::vector<S> out(size, S(0));
  for (std::size_t i = 0; i < v.size() && i < size; ++i) out[i] = v[i];
  return out;
}

}  // namespace

template <class S>
std::vector<S> apply_exp_shift(const S& z, const std::vector<S>& x) {
  const std::size_t d = x.size();
  std::vector<S> zp(d, S(1));
  for (std::size_t m = 1; m < d; ++m) zp[m] = zp[m - 1] * z;
  std::vector<S> out(d, S(0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t l = i; l < d; ++l) out[i] += zp[l - i] * inv_factorial<S>(static_cast<unsigned>(l - i)) * x[l];
  }
  return out;
}

template <class S>
std::vector<S> apply_unipotent_power(unsigned j, const std::vector<S>& x) {
  const std::size_t d = x.size();
  std::vector<S> out(d, S(0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t m = 0; i + m < d && m <= j; ++m) {
      out[i] += binomial<S>(j, static_cast<unsigned>(m)) * x[i + m];
    }
  }
  return out;
}

template <class S>
JordanSolution<S> jordan_solve(unsigned n, const S& z, const std::vector<S>& u_in, const std::vector<S>& v_in,
                               double tol) {
  if (n == 0) throw InputError("jordan_solve: n must be at least 1");
  if (ScalarOps<S>::magnitude(z) == 0.0) throw DomainError("jordan_solve: z must be nonzero");
  const std::vector<S> u = head(u_in, n, "u");
  const std::vector<S> v = head(v_in, n, "v");

  std::vector<S> zp(2 * n + 1, S(1));
  for (unsigned m = 1; m <= 2 * n; ++m) zp[m] = zp[m - 1] * z;

  // w_j = v_{n-j+1} - sum_{k=n-j+1}^{n} z^{k+j-n-1} u_k / (k+j-n-1)!
  std::vector<S> w(n, S(0));
  for (unsigned j = 1; j <= n; ++j) {
    S acc = v[n - j];
    for (unsigned k = n - j + 1; k <= n; ++k) {
      const unsigned e = k + j - n - 1;
      acc -= zp[e] * inv_factorial<S>(e) * u[k - 1];
    }
    w[j - 1] = acc;
  }

  // xbar = z^{-1} D^{-1} A_{n,1}^{-1} D^{-1} w
  std::vector<S> y(n);
  for (unsigned j = 0; j < n; ++j) y[j] = w[j] / zp[j];
  const RationalMatrix a_inv = build_Anz_exact(n, 1).inverse();
  const std::vector<S> q = mul(a_inv, y);

  JordanSolution<S> sol;
  sol.x.assign(2 * n, S(0));
  for (unsigned j = 0; j < n; ++j) {
    sol.x[j] = u[j];
    sol.x[n + j] = q[j] / zp[j + 1];
  }
  sol.ex = apply_exp_shift(z, sol.x);

  std::vector<S> du(n), dv(n);
  for (unsigned j = 0; j < n; ++j) {
    du[j] = sol.x[j] - u[j];
    dv[j] = sol.ex[j] - v[j];
  }
  sol.residual_u = vec_norm(du);
  sol.residual_v = vec_norm(dv);
  const double scale = std::max(1.0, vec_norm(u) + vec_norm(v));
  const double worst = std::max(sol.residual_u, sol.residual_v);
  if (worst > tol * scale) {
    throw NumericError("jordan_solve: residual above tolerance at n = " + std::to_string(n) +
                           ", |z| = " + std::to_string(ScalarOps<S>::magnitude(z)),
                       worst);
  }
  return sol;
}

RationalMatrix similarity_J(unsigned n) {
  if (n == 0) throw InputError("similarity_J: n must be at least 1");
  const std::size_t d = 2 * n;
  std::vector<mpq_class> inv_fact(d + 1);
  mpz_class f = 1;
  for (std::size_t m = 0; m <= d; ++m) {
    if (m > 0) f *= static_cast<unsigned long>(m);
    inv_fact[m] = mpq_class(mpz_class(1), f);
  }
  RationalMatrix j(d, d);
  j(0, 0) = 1;
  // Column c solves (e^S - I) c = previous column, with first entry 0.
  for (std::size_t col = 1; col < d; ++col) {
    std::vector<mpq_class> c(d, mpq_class(0));
    for (std::size_t i = col; i-- > 0;) {
      // row i of (e^S - I) c = c_{i+1} + sum_{l >= i+2} c_l / (l - i)!
      mpq_class acc = j(i, col - 1);
      for (std::size_t l = i + 2; l <= col; ++l) acc -= c[l] * inv_fact[l - i];
      c[i + 1] = acc;
    }
    for (std::size_t i = 0; i < d; ++i) j(i, col) = c[i];
  }
  return j;
}

template <class S>
DiscretePair<S> discrete_pair(unsigned n, unsigned j, const std::vector<S>& u_in, const std::vector<S>& v_in,
                              double tol) {
  if (j == 0) throw InputError("discrete_pair: j must be at least 1");
  const std::vector<S> u = padded(head(u_in, n, "u"), 2 * n);
  const std::vector<S> v = padded(head(v_in, n, "v"), 2 * n);
  const RationalMatrix jm = similarity_J(n);
  const RationalMatrix jinv = jm.inverse();
  const std::vector<S> ju = mul(jm, u);
  const std::vector<S> jv = mul(jm, v);
  const JordanSolution<S> sol = jordan_solve<S>(n, ScalarOps<S>::from_rational(mpq_class(j)), ju, jv, tol);

  DiscretePair<S> out;
  out.x = mul(jinv, sol.x);
  out.shifted = apply_unipotent_power(j, out.x);
  std::vector<S> du(2 * n), dv(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    du[i] = out.x[i] - u[i];
    dv[i] = out.shifted[i] - v[i];
  }
  out.error_u = vec_norm(du);
  out.error_v = vec_norm(dv);
  return out;
}

#define HCLAB_INSTANTIATE_JORDAN(S)                                                                         \
  template std::vector<S> apply_exp_shift<S>(const S&, const std::vector<S>&);                             \
  template std::vector<S> apply_unipotent_power<S>(unsigned, const std::vector<S>&);                       \
  template JordanSolution<S> jordan_solve<S>(unsigned, const S&, const std::vector<S>&,                    \
                                             const std::vector<S>&, double);                               \
  template DiscretePair<S> discrete_pair<S>(unsigned, unsigned, const std::vector<S>&, const std::vector<S>&, \
                                            double);

HCLAB_INSTANTIATE_JORDAN(Complex)
HCLAB_INSTANTIATE_JORDAN(WideComplex)
HCLAB_INSTANTIATE_JORDAN(mpq_class)

#undef HCLAB_INSTANTIATE_JORDAN

}  // namespace hclab::nilpotent
