#include <random>
#include <string>

#include "hclab/criteria.hpp"

namespace hclab::criteria {

std::optional<unsigned> nilpotency_index(const RationalMatrix& t) {
  if (!t.square()) throw InputError("nilpotency_index: matrix must be square");
  const std::size_t d = t.rows();
  RationalMatrix p = t;
  for (unsigned n = 1; n <= std::max<std::size_t>(d, 1); ++n) {
    if (p.is_zero()) return n;
    p = p * t;
  }
  return std::nullopt;
}

namespace {

RationalMatrix columns_of(const std::vector<RationalVector>& vs, std::size_t rows) {
  return RationalMatrix::from_columns(vs, rows);
}

RationalVector apply_power(const RationalMatrix& t, unsigned n, RationalVector v) {
  for (unsigned i = 0; i < n; ++i) v = t * v;
  return v;
}

}  // namespace

EbsPerturbation ebs_perturb(const operators::RationalTensorElement& xi, const RationalVector& x1,
                            const RationalVector& x2, const mpq_class& s_in) {
  mpq_class s = s_in;
  s.canonicalize();
  const std::size_t p = xi.b.rows();
  const std::size_t q = xi.b.cols();
  if (x1.size() != p || x2.size() != p) throw InputError("ebs_perturb: x1 and x2 must match the rows of b");
  if (sgn(s) == 0) throw InputError("ebs_perturb: s must be nonzero");
  const operators::RationalTensorOps ops = operators::tensor_op(xi);
  const std::optional<unsigned> index = nilpotency_index(ops.T);
  if (!index) throw PreconditionError("ebs_perturb: T_xi is not nilpotent");
  const unsigned n = *index;

  // ker T_xi and L = {y : S_xi y = 0, b(x1, y) = b(x2, y) = 0}.
  const std::vector<RationalVector> ker = ops.T.kernel_basis();
  RationalMatrix cond(q + 2, q);
  const RationalVector bx1 = xi.b.transpose() * x1;
  const RationalVector bx2 = xi.b.transpose() * x2;
  for (std::size_t c = 0; c < q; ++c) {
    for (std::size_t r = 0; r < q; ++r) cond(r, c) = ops.S(r, c);
    cond(q, c) = bx1[c];
    cond(q + 1, c) = bx2[c];
  }
  const std::vector<RationalVector> ell = cond.kernel_basis();
  const std::size_t need = 2 * static_cast<std::size_t>(n);
  if (ker.size() < need || ell.size() < need) {
    throw DimensionError("ebs_perturb: need 2n = " + std::to_string(need) + " biorthogonal pairs, but dim ker T = " +
                         std::to_string(ker.size()) + " and dim L = " + std::to_string(ell.size()));
  }

  // Gram matrix G = K^t B F, then an invertible 2n x 2n minor.
  const RationalMatrix kmat = columns_of(ker, p);
  const RationalMatrix fmat = columns_of(ell, q);
  const RationalMatrix gram = kmat.transpose() * xi.b * fmat;
  std::vector<std::size_t> col_pivots;
  gram.rref(&col_pivots);
  if (col_pivots.size() < need) {
    throw DimensionError("ebs_perturb: pairing of ker T and L has rank " + std::to_string(col_pivots.size()) +
                         " < 2n = " + std::to_string(need));
  }
  col_pivots.resize(need);
  RationalMatrix gc(gram.rows(), need);
  for (std::size_t r = 0; r < gram.rows(); ++r) {
    for (std::size_t c = 0; c < need; ++c) gc(r, c) = gram(r, col_pivots[c]);
  }
  std::vector<std::size_t> row_pivots;
  gc.transpose().rref(&row_pivots);
  RationalMatrix minor(need, need);
  for (std::size_t r = 0; r < need; ++r) {
    for (std::size_t c = 0; c < need; ++c) minor(r, c) = gc(row_pivots[r], c);
  }
  const RationalMatrix minor_inv = minor.inverse();

  EbsPerturbation out;
  out.n = n;
  for (std::size_t k = 0; k < need; ++k) out.u.push_back(ker[row_pivots[k]]);
  for (std::size_t j = 0; j < need; ++j) {
    RationalVector f(q, mpq_class(0));
    for (std::size_t i = 0; i < need; ++i) {
      const RationalVector& col = ell[col_pivots[i]];
      for (std::size_t r = 0; r < q; ++r) f[r] += col[r] * minor_inv(i, j);
    }
    out.f.push_back(std::move(f));
  }

  // eta = x1 (x) f_1 + x2 (x) f_{n+1} + sum_{j=2}^{n} (u_{j-1} (x) f_j + u_{n+j-1} (x) f_{n+j}).
  out.xi_s = xi;
  auto add_pair = [&](const RationalVector& x, const RationalVector& f) {
    out.xi_s.x.push_back(linalg::scale(x, s));
    out.xi_s.y.push_back(f);
  };
  add_pair(x1, out.f[0]);
  add_pair(x2, out.f[n]);
  for (unsigned j = 2; j <= n; ++j) {
    add_pair(out.u[j - 2], out.f[j - 1]);
    add_pair(out.u[n + j - 2], out.f[n + j - 1]);
  }

  const RationalMatrix ts = operators::tensor_op(out.xi_s).T;
  mpq_class sn = 1;
  for (unsigned i = 0; i < n; ++i) sn *= s;
  out.nilpotent_2n = ts.power(2 * n).is_zero();
  out.chain_x1 = apply_power(ts, n, out.u[n - 1]) == linalg::scale(x1, sn);
  out.chain_x2 = apply_power(ts, n, out.u[need - 1]) == linalg::scale(x2, sn);
  out.x_in_kernel = linalg::is_zero(apply_power(ts, n, x1)) && linalg::is_zero(apply_power(ts, n, x2));
  return out;
}

EbsScenario random_ebs_scenario(std::size_t dim, unsigned n, std::uint64_t seed) {
  if (n == 0) throw InputError("random_ebs_scenario: n must be at least 1");
  if (dim < 3 * static_cast<std::size_t>(n) + 1) {
    throw DimensionError("random_ebs_scenario: dim must be at least 3n + 1 = " + std::to_string(3 * n + 1));
  }
  std::mt19937_64 rng(seed);
  auto small = [&rng](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

  // P = L U with unit triangular integer factors, so P^{-1} is exact and cheap.
  RationalMatrix lower = RationalMatrix::identity(dim);
  RationalMatrix upper = RationalMatrix::identity(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      lower(r, c) = small(-2, 2);
      upper(c, r) = small(-2, 2);
    }
  }
  const RationalMatrix p = lower * upper;
  RationalMatrix jordan(dim, dim);
  for (std::size_t i = 0; i + 1 < n; ++i) jordan(i, i + 1) = 1;
  const RationalMatrix t = p * jordan * p.inverse();

  EbsScenario out;
  out.xi.b = RationalMatrix::identity(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    RationalVector col = t.column(c);
    if (linalg::is_zero(col)) continue;
    RationalVector e(dim, mpq_class(0));
    e[c] = 1;
    out.xi.x.push_back(std::move(col));
    out.xi.y.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    out.x1.push_back(mpq_class(small(-3, 3)));
    out.x2.push_back(mpq_class(small(-3, 3)));
  }
  return out;
}

}  // namespace hclab::criteria
