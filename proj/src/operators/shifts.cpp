#include <algorithm>
#include <cmath>

#include "hclab/operators.hpp"

namespace hclab::operators {

TruncatedOperator bilateral_shift(const WeightSequence& w, long N) {
  if (N < 1) throw InputError("bilateral_shift: window N must be at least 1");
  const Index d = 2 * N + 1;
  TruncatedOperator op;
  op.matrix = ComplexMatrix::Zero(d, d);
  for (long n = -N + 1; n <= N; ++n) {
    const Index col = n + N;
    op.matrix(col - 1, col) = w.at(n);
  }
  op.ambient = Ambient::LpZ;
  op.offset = -N;
  op.params = {{"N", N}, {"weight_window", w.N()}};
  return op;
}

DualCheck dual_relation(const WeightSequence& w, long N) {
  const ComplexMatrix t = bilateral_shift(w, N).matrix;
  const ComplexMatrix td = bilateral_shift(dual_weight(w), N).matrix;
  const Index d = t.rows();
  // U e_n = e_{-n} reverses the coordinate order and is its own inverse.
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) u(d - 1 - i, i) = 1.0;
  const ComplexMatrix lhs = u * t.transpose() * u;
  DualCheck out;
  out.exact = (lhs.array() == td.array()).all();
  out.max_deviation = (lhs - td).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace hclab::operators
