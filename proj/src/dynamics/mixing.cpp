#include <cmath>
#include <random>
#include <string>

#include "hclab/criteria.hpp"
#include "hclab/dynamics.hpp"
#include "hclab/nilpotent.hpp"

namespace hclab::dynamics {

namespace {

using hclab::WideComplex;
using hclab::WideMatrix;
using hclab::WideVector;

/// Lambda(T) split into the spaces A^n(X) cap ker A^n, A = T/z - I, one block per (z, n).
struct LambdaPieces {
  struct Block {
    Complex z;
    unsigned n;
    ComplexMatrix basis;
  };
  std::vector<Block> blocks;
  ComplexMatrix stacked;
  linalg::Subspace span;
};

LambdaPieces lambda_pieces(const ComplexMatrix& t) {
  const Index d = t.rows();
  const criteria::LambdaResult lr = criteria::lambda_T_full(t);
  LambdaPieces out{{}, ComplexMatrix(d, 0), lr.span};
  for (const Complex& center : lr.unimodular) {
    const Complex z = center / std::abs(center);
    const ComplexMatrix a = t / z - ComplexMatrix::Identity(d, d);
    const double anorm = std::max(1.0, a.cwiseAbs().colwise().sum().maxCoeff());
    ComplexMatrix p = ComplexMatrix::Identity(d, d);
    for (unsigned n = 1; n <= static_cast<unsigned>(d); ++n) {
      p = p * a;
      const auto ki = linalg::kernel_and_image_scaled(p, linalg::kDefaultRankTol, std::pow(anorm, n));
      const linalg::Subspace w = linalg::intersect(ki.image, ki.kernel, linalg::kDefaultRankTol);
      if (w.is_zero()) continue;
      out.blocks.push_back({z, n, w.basis()});
    }
  }
  Index cols = 0;
  for (const auto& b : out.blocks) cols += b.basis.cols();
  out.stacked.resize(d, cols);
  Index at = 0;
  for (const auto& b : out.blocks) {
    out.stacked.middleCols(at, b.basis.cols()) = b.basis;
    at += b.basis.cols();
  }
  return out;
}

void require_in_lambda(const LambdaPieces& lp, const ComplexVector& x, const char* name, double tol) {
  const double dist = lp.span.distance(x);
  if (dist > tol * std::max(1.0, x.norm())) {
    throw DomainError(std::string("transitivity_pair: ") + name + " is not in Lambda(T) (distance " +
                      std::to_string(dist) + ")");
  }
}

/// x_k in 50-digit arithmetic.
WideVector assemble(const ComplexMatrix& t, const LambdaPieces& lp, const ComplexVector& u, const ComplexVector& v,
                    unsigned k) {
  const Index d = t.rows();
  WideVector x = WideVector::Zero(d);
  if (lp.stacked.cols() == 0) return x;
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(lp.stacked);
  const ComplexVector cu = cod.solve(u);
  const ComplexVector cv = cod.solve(v);
  const WideMatrix tw = hclab::promote<WideComplex>(t);
  Index at = 0;
  for (const auto& b : lp.blocks) {
    const Index m = b.basis.cols();
    const ComplexVector pu = b.basis * cu.segment(at, m);
    const ComplexVector pv = b.basis * cv.segment(at, m);
    at += m;
    const WideComplex zw(b.z.real(), b.z.imag());
    const WideMatrix aw = (tw / zw - WideMatrix::Identity(d, d)).eval();
    if (pu.norm() > 0.0) {
      x += nilpotent::unimodular_approach<WideComplex>(aw, zw, hclab::promote<WideComplex>(pu), k, 1e-9, b.n).v;
    }
    if (pv.norm() > 0.0) {
      x += nilpotent::unimodular_approach<WideComplex>(aw, zw, hclab::promote<WideComplex>(pv), k, 1e-9, b.n).u;
    }
  }
  return x;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TransitivityPair transitivity_pair(const ComplexMatrix& t, const ComplexVector& u, const ComplexVector& v, unsigned k,
                                   double tol) {
  const Index d = t.rows();
  if (t.cols() != d || u.size() != d || v.size() != d) throw InputError("transitivity_pair: shape mismatch");
  if (k == 0) throw InputError("transitivity_pair: k must be at least 1");
  TransitivityPair out;
  out.k = k;
  if (u.norm() == 0.0 && v.norm() == 0.0) {
    out.x = ComplexVector::Zero(d);
    return out;
  }
  const LambdaPieces lp = lambda_pieces(t);
  require_in_lambda(lp, u, "u", tol);
  require_in_lambda(lp, v, "v", tol);
  const WideVector x = assemble(t, lp, u, v, k);
  const WideMatrix tk = nilpotent::power<WideComplex>(hclab::promote<WideComplex>(t), k);
  out.x = hclab::demote<WideComplex>(x);
  out.residual_u = hclab::norm2<WideComplex>(WideVector(x - hclab::promote<WideComplex>(u)));
  out.residual_v = hclab::norm2<WideComplex>(WideVector(tk * x - hclab::promote<WideComplex>(v)));
  return out;
}

HitReport mixing_window(const ComplexMatrix& t, const Ball& U, const Ball& V, unsigned horizon, unsigned probe_budget,
                        std::uint64_t seed) {
  const Index d = t.rows();
  if (t.cols() != d || U.center.size() != d || V.center.size() != d) throw InputError("mixing_window: shape mismatch");
  if (!(U.radius > 0.0) || !(V.radius > 0.0)) throw InputError("mixing_window: radii must be positive");
  HitReport rep{U, V, std::vector<bool>(horizon, false), std::nullopt, false};

  std::optional<LambdaPieces> lp;
  try {
    LambdaPieces pieces = lambda_pieces(t);
    const double du = pieces.span.distance(U.center);
    const double dv = pieces.span.distance(V.center);
    if (du <= 1e-8 * std::max(1.0, U.center.norm()) && dv <= 1e-8 * std::max(1.0, V.center.norm())) {
      lp = std::move(pieces);
      rep.lambda_probes = true;
    }
  } catch (const NumericError&) {
    // Without a reliable spectrum the remaining probes still apply.
  }

  std::mt19937_64 rng(seed);
  ComplexMatrix p = ComplexMatrix::Identity(d, d);
  auto is_hit = [&](const ComplexVector& x) {
    return (x - U.center).norm() < U.radius && (p * x - V.center).norm() < V.radius;
  };
  for (unsigned n = 1; n <= horizon; ++n) {
    p = p * t;
    bool hit = false;
    if (lp) hit = is_hit(hclab::demote<WideComplex>(assemble(t, *lp, U.center, V.center, n)));
    if (!hit) {
      Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(p);
      const ComplexVector x = U.center + ComplexVector(cod.solve(ComplexVector(V.center - p * U.center)));
      hit = is_hit(x);
    }
    for (unsigned i = 0; i < probe_budget && !hit; ++i) {
      ComplexVector dir(d);
      for (Index j = 0; j < d; ++j) dir(j) = Complex(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
      const double len = dir.norm();
      if (len == 0.0) continue;
      hit = is_hit(U.center + (U.radius * unit(rng) / len) * dir);
    }
    rep.hits[n - 1] = hit;
  }
  for (unsigned n = horizon; n >= 1 && rep.hits[n - 1]; --n) rep.window_start = n;
  return rep;
}

}  // namespace hclab::dynamics
