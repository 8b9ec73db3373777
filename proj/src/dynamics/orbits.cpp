#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "hclab/dynamics.hpp"

namespace hclab::dynamics {

OrbitTrace orbit(const ComplexMatrix& t, const ComplexVector& x, unsigned K, const std::vector<Complex>& scalings) {
  if (t.rows() != t.cols() || t.cols() != x.size()) throw InputError("orbit: shape mismatch");
  if (!scalings.empty() && scalings.size() != K + 1) throw InputError("orbit: need K+1 scalings");
  for (const Complex& s : scalings) {
    if (s == Complex(0.0)) throw InputError("orbit: scalings must be nonzero");
  }
  OrbitTrace tr;
  tr.base = x;
  tr.scalings = scalings.empty() ? std::vector<Complex>(K + 1, 1.0) : scalings;
  ComplexVector y = x;
  for (unsigned n = 0; n <= K; ++n) {
    ComplexVector term = tr.scalings[n] * y;
    const double norm = term.norm();
    if (!std::isfinite(norm) || !y.allFinite()) {
      tr.overflow = true;
      tr.scalings.resize(n);
      break;
    }
    tr.iterates.push_back(std::move(term));
    tr.norms.push_back(norm);
    if (n < K) y = t * y;
  }
  return tr;
}

namespace {

ComplexMatrix combination(const std::vector<ComplexMatrix>& as, const std::vector<Complex>& z) {
  if (as.empty()) throw InputError("exp_group: no generators");
  if (z.size() != as.size()) throw InputError("exp_group: z must have one entry per generator");
  const Index d = as.front().rows();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < as.size(); ++j) {
    if (as[j].rows() != d || as[j].cols() != d) throw InputError("exp_group: generators must be square of equal size");
    m += z[j] * as[j];
  }
  return m;
}

}  // namespace

ComplexMatrix exp_sum(const std::vector<ComplexMatrix>& as, const std::vector<Complex>& z) {
  const ComplexMatrix m = combination(as, z);
  const Index d = m.rows();
  if (m.cwiseAbs().maxCoeff() == 0.0) return ComplexMatrix::Identity(d, d);
  // Nilpotent combinations (the usual case for shift-type generators) use the finite series.
  const double scale = std::max(1.0, m.cwiseAbs().colwise().sum().maxCoeff());
  const ComplexMatrix md = linalg::matrix_power(m, static_cast<unsigned>(d));
  if (md.cwiseAbs().maxCoeff() <= 1e-14 * std::pow(scale, static_cast<double>(d))) {
    ComplexMatrix sum = ComplexMatrix::Identity(d, d);
    ComplexMatrix term = ComplexMatrix::Identity(d, d);
    for (Index j = 1; j < d; ++j) {
      term = (term * m) / static_cast<double>(j);
      if (term.cwiseAbs().maxCoeff() == 0.0) break;
      sum += term;
    }
    return sum;
  }
  return m.exp();
}

ComplexMatrix exp_group(const std::vector<ComplexMatrix>& as, const std::vector<Complex>& z, double tol) {
  for (std::size_t i = 0; i < as.size(); ++i) {
    for (std::size_t j = i + 1; j < as.size(); ++j) {
      const double c = linalg::commutator_norm(as[i], as[j]);
      if (c > tol) {
        throw PreconditionError("exp_group: generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " do not commute (commutator norm " + std::to_string(c) +
                                "); the group law needs pairwise commuting generators");
      }
    }
  }
  return exp_sum(as, z);
}

double group_law_residual(const std::vector<ComplexMatrix>& as, const std::vector<Complex>& z,
                          const std::vector<Complex>& w) {
  if (z.size() != w.size()) throw InputError("group_law_residual: z and w differ in length");
  std::vector<Complex> zw(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) zw[j] = z[j] + w[j];
  return (exp_sum(as, zw) - exp_sum(as, z) * exp_sum(as, w)).cwiseAbs().maxCoeff();
}

double fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("fit_power_law: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

}  // namespace hclab::dynamics
