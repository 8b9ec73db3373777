#include <cmath>
#include <string>

#include "hclab/criteria.hpp"

namespace hclab::criteria {

namespace {

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double power_scale(double norm, unsigned n) { return std::max(std::pow(norm, static_cast<double>(n)), 1e-300); }

/// Collects spanning vectors and compresses them to an orthonormal basis when they pile up.
class SpanBuilder {
 public:
  SpanBuilder(Index ambient, double tol) : span_(ambient, tol), tol_(tol) {}

  void add(const ComplexMatrix& columns) {
    for (Index c = 0; c < columns.cols(); ++c) pending_.push_back(columns.col(c));
    if (static_cast<Index>(pending_.size()) > 4 * span_.ambient()) flush();
  }

  Subspace result() {
    flush();
    return span_;
  }

 private:
  void flush() {
    if (pending_.empty()) return;
    ComplexMatrix m(span_.ambient(), span_.dim() + static_cast<Index>(pending_.size()));
    m.leftCols(span_.dim()) = span_.basis();
    for (std::size_t i = 0; i < pending_.size(); ++i) m.col(span_.dim() + static_cast<Index>(i)) = pending_[i];
    pending_.clear();
    span_ = Subspace::from_spanning(m, tol_);
  }

  Subspace span_;
  double tol_;
  std::vector<ComplexVector> pending_;
};

}  // namespace

Subspace ker_dagger(const ComplexMatrix& t, double tol) {
  if (t.rows() != t.cols()) throw InputError("ker_dagger: matrix must be square");
  linalg::require_finite(t, "ker_dagger");
  const Index d = t.rows();
  const double norm = op_norm(t);
  SpanBuilder span(d, tol);
  ComplexMatrix p = ComplexMatrix::Identity(d, d);
  Index prev_kernel = -1;
  Index prev_image = -1;
  for (unsigned n = 1; n <= static_cast<unsigned>(d); ++n) {
    p = p * t;
    const linalg::KernelImage ki = linalg::kernel_and_image_scaled(p, tol, power_scale(norm, n));
    // Kernels and images of powers stabilise together; after that the intersection repeats.
    if (ki.kernel.dim() == prev_kernel && ki.image.dim() == prev_image) break;
    prev_kernel = ki.kernel.dim();
    prev_image = ki.image.dim();
    span.add(linalg::intersect(ki.image, ki.kernel, tol).basis());
  }
  return span.result();
}

LambdaResult lambda_T_full(const ComplexMatrix& t, double tol, double unimodular_tol) {
  if (t.rows() != t.cols()) throw InputError("lambda_T: matrix must be square");
  const Index d = t.rows();
  LambdaResult out{Subspace(d, tol), {}, {}};
  if (d == 0) return out;
  const std::vector<Complex> values = linalg::eigenvalues(t);
  out.clusters = linalg::cluster_eigenvalues(values, op_norm(t));
  SpanBuilder span(d, tol);
  for (const linalg::EigenCluster& c : out.clusters) {
    if (std::abs(std::abs(c.center) - 1.0) > unimodular_tol) continue;
    out.unimodular.push_back(c.center);
    const ComplexMatrix shifted = t - c.center * ComplexMatrix::Identity(d, d);
    span.add(ker_dagger(shifted, tol).basis());
  }
  out.span = span.result();
  return out;
}

Subspace lambda_T(const ComplexMatrix& t, double tol) { return lambda_T_full(t, tol).span; }

Subspace ebs_tuple_kernel(const std::vector<ComplexMatrix>& ts, double tol) {
  if (ts.empty()) throw InputError("ebs_tuple_kernel: empty tuple");
  const Index d = ts.front().rows();
  for (const ComplexMatrix& t : ts) {
    if (t.rows() != d || t.cols() != d) throw InputError("ebs_tuple_kernel: matrices must be square of equal size");
    linalg::require_finite(t, "ebs_tuple_kernel");
  }
  const std::size_t k = ts.size();
  std::vector<double> norms(k);
  for (std::size_t j = 0; j < k; ++j) norms[j] = op_norm(ts[j]);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double c = linalg::commutator_norm(ts[i], ts[j]);
      if (c > tol * std::max(1.0, norms[i] * norms[j])) {
        throw PreconditionError("ebs_tuple_kernel: T" + std::to_string(i + 1) + " and T" + std::to_string(j + 1) +
                                " do not commute (commutator norm " + std::to_string(c) + ")");
      }
    }
  }

  // powers[j][n] = T_j^n for n <= 2d, kernels[j][n] = ker T_j^{2n} for 1 <= n <= d.
  std::vector<std::vector<ComplexMatrix>> powers(k);
  std::vector<std::vector<Subspace>> kernels(k);
  for (std::size_t j = 0; j < k; ++j) {
    powers[j].push_back(ComplexMatrix::Identity(d, d));
    for (Index n = 1; n <= 2 * d; ++n) powers[j].push_back(powers[j].back() * ts[j]);
    kernels[j].push_back(Subspace::whole(d));
    for (Index n = 1; n <= d; ++n) {
      const auto e = static_cast<unsigned>(2 * n);
      kernels[j].push_back(
          linalg::kernel_and_image_scaled(powers[j][2 * n], tol, power_scale(norms[j], e)).kernel);
    }
  }

  SpanBuilder span(d, tol);
  std::vector<Index> n(k, 1);
  while (true) {
    Subspace common = kernels[0][n[0]];
    for (std::size_t j = 1; j < k && !common.is_zero(); ++j) common = linalg::intersect(common, kernels[j][n[j]], tol);
    if (!common.is_zero()) {
      ComplexMatrix v = common.basis();
      for (std::size_t j = 0; j < k; ++j) v = powers[j][n[j]] * v;
      span.add(v);
    }
    std::size_t pos = 0;
    while (pos < k && n[pos] == d) n[pos++] = 1;
    if (pos == k) break;
    ++n[pos];
  }
  return span.result();
}

}  // namespace hclab::criteria
