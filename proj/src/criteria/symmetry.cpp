#include <cmath>
#include <random>

#include "hclab/criteria.hpp"

namespace hclab::criteria {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Eigen::VectorXd random_real(std::mt19937_64& rng, Index d) {
  Eigen::VectorXd v(d);
  for (Index i = 0; i < d; ++i) v(i) = 2.0 * unit(rng) - 1.0;
  return v;
}

ComplexVector random_complex(std::mt19937_64& rng, Index d) {
  ComplexVector v(d);
  for (Index i = 0; i < d; ++i) v(i) = Complex(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
  return v;
}

bool same_modulus(Complex a, Complex b) {
  const double x = std::abs(a);
  const double y = std::abs(b);
  return std::abs(x - y) <= 1e-12 * std::max({1.0, x, y});
}

}  // namespace

SymmetryReport symmetry_obstruction(const WeightSequence& w, const std::vector<double>& p, unsigned trials, long N,
                                    std::uint64_t seed) {
  if (N < 1) throw InputError("symmetry_obstruction: N must be at least 1");
  if (p.empty()) throw InputError("symmetry_obstruction: polynomial has no coefficients");
  SymmetryReport rep;
  rep.N = N;
  rep.seed = seed;
  const long reach = std::max(N, w.N() + 2) + 1;
  for (long n = 1; n <= reach; ++n) {
    if (!same_modulus(w.at(n), w.at(-n))) {
      rep.first_violation = n;
      return rep;
    }
  }
  rep.applicable = true;
  rep.trials = trials;

  // T0 = T_{|w|} on the window -N-1..N; coordinate i carries index i - N - 1.
  const Index d = 2 * N + 2;
  Eigen::MatrixXd t0 = Eigen::MatrixXd::Zero(d, d);
  for (Index col = 1; col < d; ++col) t0(col - 1, col) = std::abs(w.at(col - N - 1));
  Eigen::MatrixXd s0 = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = p.size(); i-- > 0;) {
    s0 = s0 * t0;
    s0.diagonal().array() += p[i];
  }
  // U e_n = e_{-1-n} reverses the window.
  const Eigen::MatrixXd flip_t0 = t0.reverse();
  rep.flip_residual = (flip_t0 - t0.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd s0_flip = s0.reverse();

  std::mt19937_64 rng(seed);
  for (unsigned trial = 0; trial < trials; ++trial) {
    const Eigen::VectorXd x = random_real(rng, d);
    const Eigen::VectorXd y = random_real(rng, d);
    Eigen::VectorXd a = x;
    Eigen::VectorXd b = y;
    const double partner = std::sqrt(x.squaredNorm() + y.squaredNorm());
    for (long n = 0; n <= N; ++n) {
      const double inner = a.dot(y) - b.dot(x);
      const double scale = std::sqrt(a.squaredNorm() + b.squaredNorm()) * partner;
      if (scale > 0.0) rep.max_residual = std::max(rep.max_residual, std::abs(inner) / scale);
      a = s0 * a;
      b = s0_flip * b;
    }
  }
  return rep;
}

BSymmetryReport b_symmetry_check(const ComplexMatrix& t, const ComplexMatrix& b, const ComplexVector& x,
                                 const ComplexVector& y, long N, std::uint64_t seed, unsigned battery) {
  const Index d = t.rows();
  if (t.cols() != d || b.rows() != d || b.cols() != d || x.size() != d || y.size() != d) {
    throw InputError("b_symmetry_check: shapes of T, b, x, y disagree");
  }
  if (b.cwiseAbs().maxCoeff() == 0.0) throw InputError("b_symmetry_check: b must be nonzero");
  BSymmetryReport rep;
  rep.N = N;
  const double tn = std::max(t.cwiseAbs().maxCoeff(), 1e-300);
  const double bn = b.cwiseAbs().maxCoeff();

  std::mt19937_64 rng(seed);
  double worst = -1.0;
  for (unsigned i = 0; i < battery; ++i) {
    const ComplexVector u = random_complex(rng, d);
    const ComplexVector v = random_complex(rng, d);
    const Complex lhs = (t * u).transpose() * b * v;
    const Complex rhs = u.transpose() * b * (t * v);
    const double rel = std::abs(lhs - rhs) / (tn * bn * u.norm() * v.norm() * static_cast<double>(d));
    rep.symmetry_residual = std::max(rep.symmetry_residual, rel);
    if (rel > worst) {
      worst = rel;
      rep.witness = std::make_pair(u, v);
    }
  }
  rep.symmetric = rep.symmetry_residual <= 1e-9;
  if (rep.symmetric) {
    rep.witness.reset();
    ComplexVector a = x;
    ComplexVector c = y;
    for (long n = 0; n <= N; ++n) {
      const Complex phi = Complex(x.transpose() * b * c) - Complex(a.transpose() * b * y);
      const double scale = bn * (x.norm() * c.norm() + a.norm() * y.norm()) * static_cast<double>(d);
      if (scale > 0.0) rep.annihilator_residual = std::max(rep.annihilator_residual, std::abs(phi) / scale);
      a = t * a;
      c = t * c;
    }
  }
  return rep;
}

}  // namespace hclab::criteria
