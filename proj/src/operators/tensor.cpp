#include <string>

#include "hclab/operators.hpp"

namespace hclab::operators {

namespace {

template <class V>
void check_shapes(const std::vector<V>& x, const std::vector<V>& y, std::size_t rows, std::size_t cols,
                  auto size_of) {
  if (x.size() != y.size()) throw InputError("tensor_op: x and y lists differ in length");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (size_of(x[j]) != rows || size_of(y[j]) != cols) {
      throw InputError("tensor_op: pair " + std::to_string(j) + " does not match the shape of b");
    }
  }
}

}  // namespace

TensorOps tensor_op(const TensorElement& xi) {
  const auto p = static_cast<std::size_t>(xi.b.rows());
  const auto q = static_cast<std::size_t>(xi.b.cols());
  check_shapes(xi.x, xi.y, p, q, [](const ComplexVector& v) { return static_cast<std::size_t>(v.size()); });
  TensorOps ops{ComplexMatrix::Zero(p, p), ComplexMatrix::Zero(q, q)};
  for (std::size_t j = 0; j < xi.x.size(); ++j) {
    ops.T += xi.x[j] * (xi.b * xi.y[j]).transpose();
    ops.S += xi.y[j] * (xi.b.transpose() * xi.x[j]).transpose();
  }
  return ops;
}

RationalTensorOps tensor_op(const RationalTensorElement& xi) {
  const std::size_t p = xi.b.rows();
  const std::size_t q = xi.b.cols();
  check_shapes(xi.x, xi.y, p, q, [](const RationalVector& v) { return v.size(); });
  RationalTensorOps ops{RationalMatrix(p, p), RationalMatrix(q, q)};
  const RationalMatrix bt = xi.b.transpose();
  for (std::size_t j = 0; j < xi.x.size(); ++j) {
    const RationalVector by = xi.b * xi.y[j];
    const RationalVector btx = bt * xi.x[j];
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) ops.T(r, c) += xi.x[j][r] * by[c];
    }
    for (std::size_t r = 0; r < q; ++r) {
      for (std::size_t c = 0; c < q; ++c) ops.S(r, c) += xi.y[j][r] * btx[c];
    }
  }
  return ops;
}

double duality_residual(const TensorElement& xi, const TensorOps& ops) {
  return (ops.T.transpose() * xi.b - xi.b * ops.S).cwiseAbs().maxCoeff();
}

}  // namespace hclab::operators
