#include "hclab/linalg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hclab/errors.hpp"

namespace hclab::linalg {

void require_finite(const ComplexMatrix& a, std::string_view what) {
  if (!a.allFinite()) throw InputError(std::string(what) + ": non-finite entry");
}

namespace {

KernelImage split_by_svd(const ComplexMatrix& a, double threshold, double tol) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  if (rows == 0 || cols == 0) {
    return {Subspace::whole(cols), Subspace(rows, tol)};
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  Subspace kernel = Subspace::from_spanning(svd.matrixV().rightCols(cols - rank), tol);
  Subspace image = Subspace::from_spanning(svd.matrixU().leftCols(rank), tol);
  return {kernel, image};
}

}  // namespace

KernelImage kernel_and_image(const ComplexMatrix& a, double tol) {
  require_finite(a, "kernel_and_image");
  if (tol < 0) throw InputError("kernel_and_image: negative tolerance");
  double scale = 0.0;
  for (Index c = 0; c < a.cols(); ++c) scale = std::max(scale, a.col(c).norm());
  if (scale == 0.0) return {Subspace::whole(a.cols()), Subspace(a.rows(), tol)};
  return split_by_svd(a, tol * scale, tol);
}

KernelImage kernel_and_image_scaled(const ComplexMatrix& a, double tol, double scale) {
  require_finite(a, "kernel_and_image");
  if (tol < 0 || scale < 0) throw InputError("kernel_and_image: negative tolerance");
  return split_by_svd(a, tol * scale, tol);
}

Subspace intersect(const Subspace& u, const Subspace& v, double tol) {
  if (u.ambient() != v.ambient()) throw InputError("intersect: ambient dimension mismatch");
  if (u.is_zero() || v.is_zero()) return Subspace(u.ambient(), tol);
  ComplexMatrix stacked(u.ambient(), u.dim() + v.dim());
  stacked << u.basis(), -v.basis();
  KernelImage ki = kernel_and_image_scaled(stacked, tol, 1.0);
  if (ki.kernel.is_zero()) return Subspace(u.ambient(), tol);
  ComplexMatrix alpha = ki.kernel.basis().topRows(u.dim());
  return Subspace::from_spanning(u.basis() * alpha, tol);
}

ComplexMatrix backward_shift(Index d) {
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (Index k = 1; k < d; ++k) s(k - 1, k) = 1.0;
  return s;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned p) {
  if (a.rows() != a.cols()) throw InputError("matrix_power: matrix not square");
  ComplexMatrix result = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix base = a;
  while (p > 0) {
    if (p & 1U) result = result * base;
    p >>= 1U;
    if (p > 0) base = base * base;
  }
  return result;
}

ComplexMatrix exp_nilpotent(const ComplexMatrix& a, Complex z, double tol) {
  require_finite(a, "exp_nilpotent");
  if (a.rows() != a.cols()) throw InputError("exp_nilpotent: matrix not square");
  const Index d = a.rows();
  const double norm = std::max(1.0, a.operatorNorm());
  const double residual = matrix_power(a, static_cast<unsigned>(d)).norm();
  const double bound = tol * std::pow(norm, static_cast<double>(d));
  if (residual > bound) {
    throw DomainError("exp_nilpotent: matrix is not nilpotent (||A^d|| = " + std::to_string(residual) + ")");
  }
  ComplexMatrix result = ComplexMatrix::Identity(d, d);
  ComplexMatrix term = ComplexMatrix::Identity(d, d);
  for (Index j = 1; j < d; ++j) {
    term = term * a * (z / static_cast<double>(j));
    result += term;
  }
  return result;
}

double eigen_residual(const ComplexMatrix& a, Complex lambda) {
  const Index d = a.rows();
  ComplexMatrix shifted = a - lambda * ComplexMatrix::Identity(d, d);
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
  const double smallest = d == 0 ? 0.0 : svd.singularValues()(d - 1);
  return smallest / std::max(1.0, a.operatorNorm());
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a, double tol) {
  require_finite(a, "eigenvalues");
  if (a.rows() != a.cols()) throw InputError("eigenvalues: matrix not square");
  if (a.rows() > kMaxEigenDim) {
    throw DimensionError("eigenvalues: dimension " + std::to_string(a.rows()) + " exceeds " +
                         std::to_string(kMaxEigenDim));
  }
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalues: QR iteration did not converge", std::numeric_limits<double>::infinity());
  }
  std::vector<Complex> values(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  double worst = 0.0;
  for (const Complex& lambda : values) worst = std::max(worst, eigen_residual(a, lambda));
  if (worst > tol) throw NumericError("eigenvalues: residual above tolerance", worst);
  return values;
}

std::vector<EigenCluster> cluster_eigenvalues(const std::vector<Complex>& values, double matrix_norm,
                                              double min_radius) {
  const std::size_t n = values.size();
  if (n == 0) return {};
  const double eps = std::numeric_limits<double>::epsilon();
  const double base = eps * std::max(1.0, matrix_norm) * static_cast<double>(n);
  auto allowed = [&](std::size_t m) {
    return std::max(min_radius, 10.0 * std::pow(base, 1.0 / static_cast<double>(m)));
  };

  // Minimum spanning tree (Prim); removing its longest edges yields the
  // single-linkage dendrogram from the top down.
  struct Edge {
    std::size_t a, b;
    double length;
  };
  std::vector<Edge> tree;
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, 0);
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i] && (next == n || best[i] < best[next])) next = i;
    }
    in_tree[next] = true;
    if (step > 0) tree.push_back({parent[next], next, best[next]});
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::abs(values[i] - values[next]);
      if (!in_tree[i] && d < best[i]) {
        best[i] = d;
        parent[i] = next;
      }
    }
  }

  std::vector<EigenCluster> clusters;
  std::vector<std::vector<std::size_t>> pending{std::vector<std::size_t>(n)};
  std::iota(pending[0].begin(), pending[0].end(), std::size_t{0});
  while (!pending.empty()) {
    std::vector<std::size_t> group = std::move(pending.back());
    pending.pop_back();
    double diameter = 0.0;
    for (std::size_t i : group) {
      for (std::size_t j : group) diameter = std::max(diameter, std::abs(values[i] - values[j]));
    }
    if (group.size() == 1 || diameter <= allowed(group.size())) {
      Complex mean = 0.0;
      for (std::size_t i : group) mean += values[i];
      clusters.push_back({mean / static_cast<double>(group.size()), group.size()});
      continue;
    }
    // Split along the longest tree edge inside the group.
    std::vector<bool> member(n, false);
    for (std::size_t i : group) member[i] = true;
    std::size_t cut = tree.size();
    for (std::size_t e = 0; e < tree.size(); ++e) {
      if (member[tree[e].a] && member[tree[e].b] && (cut == tree.size() || tree[e].length > tree[cut].length)) {
        cut = e;
      }
    }
    // Components of the group's tree after dropping the cut edge.
    std::vector<std::size_t> label(n, n);
    std::size_t components = 0;
    for (std::size_t root : group) {
      if (label[root] != n) continue;
      std::vector<std::size_t> stack{root};
      label[root] = components;
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t e = 0; e < tree.size(); ++e) {
          if (e == cut) continue;
          const Edge& edge = tree[e];
          if (!member[edge.a] || !member[edge.b]) continue;
          std::size_t other = n;
          if (edge.a == cur) other = edge.b;
          if (edge.b == cur) other = edge.a;
          if (other != n && label[other] == n) {
            label[other] = components;
            stack.push_back(other);
          }
        }
      }
      ++components;
    }
    std::vector<std::vector<std::size_t>> parts(components);
    for (std::size_t i : group) parts[label[i]].push_back(i);
    for (auto& part : parts) pending.push_back(std::move(part));
  }
  std::sort(clusters.begin(), clusters.end(), [](const EigenCluster& x, const EigenCluster& y) {
    if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
    return x.center.imag() < y.center.imag();
  });
  return clusters;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw InputError("commutator_norm: shape mismatch");
  }
  return (a * b - b * a).norm();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace hclab::linalg
