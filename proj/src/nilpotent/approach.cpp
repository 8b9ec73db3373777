#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hclab/nilpotent.hpp"

namespace hclab::nilpotent {

// ---- tensor tuples -----------------------------------------------------------

TensorShiftTuple TensorShiftTuple::build(const std::vector<unsigned>& blocks) {
  if (blocks.empty()) throw InputError("TensorShiftTuple: at least one block required");
  TensorShiftTuple tt;
  tt.blocks = blocks;
  tt.dim = 1;
  for (unsigned b : blocks) {
    if (b == 0) throw InputError("TensorShiftTuple: block sizes must be positive");
    tt.dim *= 2 * static_cast<Index>(b);
  }
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    ComplexMatrix t = ComplexMatrix::Identity(1, 1);
    for (std::size_t l = 0; l < blocks.size(); ++l) {
      const Index d = 2 * static_cast<Index>(blocks[l]);
      t = linalg::kron(t, l == j ? linalg::backward_shift(d) : ComplexMatrix::Identity(d, d));
    }
    tt.T.push_back(std::move(t));
  }
  for (Index f = 0; f < tt.dim; ++f) {
    const auto multi = tt.multi_index(f);
    bool in_e = true;
    for (std::size_t j = 0; j < blocks.size(); ++j) in_e = in_e && multi[j] < blocks[j];
    if (in_e) tt.e_indices.push_back(f);
  }
  return tt;
}

Index TensorShiftTuple::flat_index(const std::vector<unsigned>& multi) const {
  if (multi.size() != blocks.size()) throw InputError("TensorShiftTuple: multi-index length mismatch");
  Index flat = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (multi[j] >= 2 * blocks[j]) throw InputError("TensorShiftTuple: multi-index out of range");
    flat = flat * 2 * static_cast<Index>(blocks[j]) + multi[j];
  }
  return flat;
}

std::vector<unsigned> TensorShiftTuple::multi_index(Index flat) const {
  std::vector<unsigned> multi(blocks.size());
  for (std::size_t j = blocks.size(); j-- > 0;) {
    const Index d = 2 * static_cast<Index>(blocks[j]);
    multi[j] = static_cast<unsigned>(flat % d);
    flat /= d;
  }
  return multi;
}

ComplexMatrix TensorShiftTuple::exp_of(const ComplexVector& z) const {
  if (static_cast<std::size_t>(z.size()) != blocks.size()) throw InputError("exp_of: parameter length mismatch");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const Index d = 2 * static_cast<Index>(blocks[j]);
    out = linalg::kron(out, linalg::exp_nilpotent(linalg::backward_shift(d), z(static_cast<Index>(j))));
  }
  return out;
}

std::vector<bool> detect_partition(const ComplexVector& z_m) {
  const std::size_t k = static_cast<std::size_t>(z_m.size());
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(z_m(a)) < std::abs(z_m(b)); });
  std::vector<bool> unbounded(k, false);
  std::size_t first_growing = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(z_m(order[i])) > 0.0) {
      first_growing = i;
      break;
    }
  }
  // Largest jump of at least 10x between consecutive nonzero moduli.
  double best_ratio = 10.0;
  for (std::size_t i = first_growing; i + 1 < k; ++i) {
    const double ratio = std::abs(z_m(order[i + 1])) / std::abs(z_m(order[i]));
    if (ratio >= best_ratio) {
      best_ratio = ratio;
      first_growing = i + 1;
    }
  }
  for (std::size_t i = first_growing; i < k; ++i) unbounded[order[i]] = true;
  return unbounded;
}

namespace {

std::vector<Complex> unit(unsigned n, unsigned index) {
  std::vector<Complex> e(n, 0.0);
  e[index] = 1.0;
  return e;
}

ComplexVector to_eigen(const std::vector<Complex>& v) {
  ComplexVector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

ComplexVector kron_vec(const std::vector<ComplexVector>& factors) {
  ComplexVector out = ComplexVector::Ones(1);
  for (const auto& f : factors) {
    ComplexVector next(out.size() * f.size());
    for (Index i = 0; i < out.size(); ++i) next.segment(i * f.size(), f.size()) = out(i) * f;
    out = std::move(next);
  }
  return out;
}

}  // namespace

TensorApproach tensor_approach(const TensorShiftTuple& tt, const std::vector<ComplexVector>& zs,
                               const ComplexVector& u, const ComplexVector& v, std::size_t m,
                               std::optional<std::vector<bool>> partition, double tol) {
  const std::size_t k = tt.k();
  if (m >= zs.size()) throw InputError("tensor_approach: index m beyond the supplied sequence");
  if (u.size() != tt.dim || v.size() != tt.dim) throw InputError("tensor_approach: vector length mismatch");
  for (std::size_t i = 0; i <= m; ++i) {
    if (static_cast<std::size_t>(zs[i].size()) != k) throw InputError("tensor_approach: parameter length mismatch");
  }
  const ComplexVector& z = zs[m];
  // Growth check on the prefix.
  double sup = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= m; ++i) {
    const double nrm = zs[i].norm();
    sup = std::max(sup, nrm);
    if (nrm > 0.0) smallest = std::min(smallest, nrm);
  }
  if (z.norm() == 0.0 || !(sup >= 2.0 * smallest)) {
    throw PreconditionError("tensor_approach: the sequence z_m has stalled (no growth up to index " +
                            std::to_string(m) + ")");
  }
  const std::vector<bool> c = partition ? *partition : detect_partition(z);
  if (c.size() != k) throw InputError("tensor_approach: partition length mismatch");
  if (std::none_of(c.begin(), c.end(), [](bool b) { return b; })) {
    throw PreconditionError("tensor_approach: no coordinate of z_m is growing");
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (c[j] && z(static_cast<Index>(j)) == Complex(0.0)) {
      throw PreconditionError("tensor_approach: coordinate " + std::to_string(j) + " is declared growing but vanishes");
    }
  }
  // Support of u and v inside E.
  std::vector<bool> in_e(static_cast<std::size_t>(tt.dim), false);
  for (Index f : tt.e_indices) in_e[static_cast<std::size_t>(f)] = true;
  for (Index f = 0; f < tt.dim; ++f) {
    if (!in_e[static_cast<std::size_t>(f)] && (u(f) != Complex(0.0) || v(f) != Complex(0.0))) {
      throw InputError("tensor_approach: u and v must lie in E");
    }
  }

  ComplexVector x = ComplexVector::Zero(tt.dim);
  for (Index f : tt.e_indices) {
    const Complex a = u(f);
    const Complex b = v(f);
    if (a == Complex(0.0) && b == Complex(0.0)) continue;
    const auto multi = tt.multi_index(f);
    std::vector<ComplexVector> to_u, to_v;  // factors of the (e_l, 0) and (0, e_l) sequences
    for (std::size_t j = 0; j < k; ++j) {
      const unsigned n = tt.blocks[j];
      const Complex zj = z(static_cast<Index>(j));
      const std::vector<Complex> e = unit(n, multi[j]);
      const std::vector<Complex> zero(n, 0.0);
      if (c[j]) {
        to_u.push_back(to_eigen(jordan_solve<Complex>(n, zj, e, zero, tol).x));
        to_v.push_back(to_eigen(jordan_solve<Complex>(n, zj, zero, e, tol).x));
      } else {
        const Index d = 2 * static_cast<Index>(n);
        ComplexVector full = ComplexVector::Zero(d);
        full(multi[j]) = 1.0;
        to_u.push_back(full);
        to_v.push_back(linalg::exp_nilpotent(linalg::backward_shift(d), -zj) * full);
      }
    }
    if (a != Complex(0.0)) x += a * kron_vec(to_u);
    if (b != Complex(0.0)) x += b * kron_vec(to_v);
  }
  TensorApproach out;
  out.x = x;
  out.image = tt.exp_of(z) * x;
  out.error_u = (x - u).norm();
  out.error_v = (out.image - v).norm();
  out.unbounded = c;
  return out;
}

// ---- unimodular Jordan chains ------------------------------------------------

template <class S>
Mat<S> power(const Mat<S>& a, unsigned p) {
  Mat<S> result = Mat<S>::Identity(a.rows(), a.cols());
  Mat<S> base = a;
  while (p > 0) {
    if (p & 1U) result = (result * base).eval();
    p >>= 1U;
    if (p > 0) base = (base * base).eval();
  }
  return result;
}

namespace {

template <class S>
WideComplex to_wide(const S& s) {
  if constexpr (std::is_same_v<S, WideComplex>) {
    return s;
  } else {
    return ScalarOps<WideComplex>::from_complex(ScalarOps<S>::to_complex(s));
  }
}

template <class S>
S from_wide(const WideComplex& w) {
  if constexpr (std::is_same_v<S, WideComplex>) {
    return w;
  } else {
    return ScalarOps<S>::from_complex(ScalarOps<WideComplex>::to_complex(w));
  }
}

}  // namespace

template <class S>
UnimodularPair<S> unimodular_approach(const Mat<S>& a, const S& z, const Vec<S>& x, unsigned k, double tol,
                                      unsigned chain) {
  const Index d = a.rows();
  if (a.cols() != d || x.size() != d) throw InputError("unimodular_approach: shape mismatch");
  if (k == 0) throw InputError("unimodular_approach: k must be at least 1");
  const double zmod = ScalarOps<S>::magnitude(z);
  if (std::abs(zmod - 1.0) > tol) throw DomainError("unimodular_approach: |z| must be 1");

  UnimodularPair<S> out;
  const double xnorm = norm2<S>(x);
  if (xnorm == 0.0) {
    out.u = Vec<S>::Zero(d);
    out.v = Vec<S>::Zero(d);
    out.chain_length = 0;
    out.u_norm = out.u_image_error = out.v_error = out.v_image_norm = 0.0;
    return out;
  }

  const ComplexMatrix ad = demote<S>(a);
  const ComplexVector xd = demote<S>(x);
  const double anorm = std::max(1.0, ad.operatorNorm());

  // Smallest n with A^n x = 0, or the requested chain length.
  unsigned n = 0;
  Vec<S> ax = x;
  const unsigned reach = chain > 0 ? chain : static_cast<unsigned>(d);
  for (unsigned p = 1; p <= reach; ++p) {
    ax = (a * ax).eval();
    if (norm2<S>(ax) <= tol * std::pow(anorm, p) * xnorm && (chain == 0 || p == chain)) {
      n = p;
      break;
    }
  }
  if (n == 0 && chain > 0) {
    throw DomainError("unimodular_approach: x is not in ker A^" + std::to_string(chain) + " (||A^n x|| = " +
                      std::to_string(norm2<S>(ax)) + ")");
  }
  if (n == 0) {
    throw DomainError("unimodular_approach: x is not in the generalized kernel of A (||A^d x|| = " +
                      std::to_string(norm2<S>(ax)) + ")");
  }
  const ComplexMatrix an = linalg::matrix_power(ad, n);
  const auto ki = linalg::kernel_and_image_scaled(an, tol, std::pow(anorm, n));
  const double dist = ki.image.distance(xd) / xnorm;
  if (dist > 1e3 * tol) {
    throw DomainError("unimodular_approach: x is not in the range of A^" + std::to_string(n) +
                      " (relative distance " + std::to_string(dist) + ")");
  }

  // Minimum-norm w with A^n w = x, refined in working precision.
  const Mat<S> an_s = power<S>(a, n);
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(an);
  cod.setThreshold(tol);
  Vec<S> w = promote<S>(ComplexVector(cod.solve(xd)));
  for (int iter = 0; iter < 4; ++iter) {
    const Vec<S> r = (x - an_s * w).eval();
    w += promote<S>(ComplexVector(cod.solve(demote<S>(r))));
  }

  // Chain h_{2n} = w, h_{j-1} = A h_j; J = [h_1 ... h_{2n}].
  Mat<S> hs(d, 2 * n);
  hs.col(2 * n - 1) = w;
  for (Index j = 2 * n - 1; j-- > 0;) hs.col(j) = (a * hs.col(j + 1)).eval();

  const WideComplex zw = to_wide(z);
  WideComplex zinv_k = WideComplex(1);
  for (unsigned i = 0; i < k; ++i) zinv_k /= zw;
  std::vector<WideComplex> en(n, WideComplex(0)), zero(n, WideComplex(0)), target(n, WideComplex(0));
  en[n - 1] = 1;
  target[n - 1] = zinv_k;
  const auto g = discrete_pair<WideComplex>(n, k, en, zero, 1e-12);
  const auto f = discrete_pair<WideComplex>(n, k, zero, target, 1e-12);
  Vec<S> gs(2 * n), fs(2 * n);
  for (unsigned i = 0; i < 2 * n; ++i) {
    gs(i) = from_wide<S>(g.x[i]);
    fs(i) = from_wide<S>(f.x[i]);
  }
  out.u = hs * fs;
  out.v = hs * gs;
  out.chain_length = n;

  S zk = S(1);
  for (unsigned i = 0; i < k; ++i) zk *= z;
  const Mat<S> step = (Mat<S>::Identity(d, d) + a).eval();
  const Mat<S> pk = power<S>(step, k);
  out.u_norm = norm2<S>(out.u);
  out.u_image_error = norm2<S>(Vec<S>(zk * (pk * out.u) - x));
  out.v_error = norm2<S>(Vec<S>(out.v - x));
  out.v_image_norm = norm2<S>(Vec<S>(zk * (pk * out.v)));
  return out;
}

template Mat<Complex> power<Complex>(const Mat<Complex>&, unsigned);
template Mat<WideComplex> power<WideComplex>(const Mat<WideComplex>&, unsigned);
template UnimodularPair<Complex> unimodular_approach<Complex>(const Mat<Complex>&, const Complex&,
                                                              const Vec<Complex>&, unsigned, double, unsigned);
template UnimodularPair<WideComplex> unimodular_approach<WideComplex>(const Mat<WideComplex>&, const WideComplex&,
                                                                      const Vec<WideComplex>&, unsigned, double,
                                                                      unsigned);

}  // namespace hclab::nilpotent
