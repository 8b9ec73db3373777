#include <cmath>
#include <limits>
#include <string>

#include "hclab/operators.hpp"

namespace hclab::operators {

std::vector<double> interval_weights(unsigned ngrid, unsigned a, unsigned b, Quadrature rule) {
  if (a > b || b > ngrid) throw InputError("interval_weights: need a <= b <= Ngrid");
  std::vector<double> w(ngrid + 1, 0.0);
  const double h = 1.0 / ngrid;
  const unsigned cells = b - a;
  if (cells == 0) return w;
  if (rule == Quadrature::Trapezoid || cells == 1) {
    for (unsigned i = a; i < b; ++i) {
      w[i] += h / 2;
      w[i + 1] += h / 2;
    }
    return w;
  }
  if (cells == 2) {
    w[a] = h / 3;
    w[a + 1] = 4 * h / 3;
    w[b] = h / 3;
    return w;
  }
  // Trapezoid plus the first two Gregory end corrections:
  // -h/12 (nabla f_b - delta f_a) - h/24 (nabla^2 f_b + delta^2 f_a).
  for (unsigned i = a; i < b; ++i) {
    w[i] += h / 2;
    w[i + 1] += h / 2;
  }
  const double c1 = h / 12;
  const double c2 = h / 24;
  w[b] -= c1 + c2;
  w[b - 1] += c1 + 2 * c2;
  w[b - 2] -= c2;
  w[a] -= c1 + c2;
  w[a + 1] += c1 + 2 * c2;
  w[a + 2] -= c2;
  return w;
}

VolterraPair volterra(unsigned ngrid, Quadrature rule) {
  if (ngrid < 16) throw InputError("volterra: Ngrid must be at least 16");
  const Index d = ngrid + 1;
  VolterraPair out;
  out.V.matrix = ComplexMatrix::Zero(d, d);
  out.Vstar.matrix = ComplexMatrix::Zero(d, d);
  out.grid.resize(d);
  for (unsigned i = 0; i <= ngrid; ++i) {
    out.grid[i] = static_cast<double>(i) / ngrid;
    const std::vector<double> lower = interval_weights(ngrid, 0, i, rule);
    const std::vector<double> upper = interval_weights(ngrid, i, ngrid, rule);
    for (unsigned j = 0; j <= ngrid; ++j) {
      out.V.matrix(i, j) = lower[j];
      out.Vstar.matrix(i, j) = upper[j];
    }
  }
  const nlohmann::json params = {{"Ngrid", ngrid}, {"rule", rule == Quadrature::Trapezoid ? "trapezoid" : "gregory"}};
  out.V.ambient = out.Vstar.ambient = Ambient::L2Grid;
  out.V.params = out.Vstar.params = params;
  return out;
}

linalg::Polynomial h_derivative(unsigned n) {
  using linalg::Polynomial;
  Polynomial q(1L);
  const Polynomial minus_t2 = Polynomial::monomial(2) * Polynomial(-1L);
  for (unsigned i = 0; i < n; ++i) q = minus_t2 * (q + q.derivative());
  return q;
}

namespace {

/// log |r| for a nonzero rational without passing through a double that may overflow.
double log_abs(const mpq_class& r) {
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
  return std::log(std::abs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

}  // namespace

double h_apply(const linalg::Polynomial& q, const mpq_class& x_in) {
  mpq_class x = x_in;
  x.canonicalize();
  if (x >= 1) return 0.0;
  const mpq_class t = 1 / (x - 1);
  const double td = t.get_d();
  const mpq_class qt = q(t);
  if (sgn(qt) == 0) return 0.0;
  const double log_value = log_abs(qt) + td;
  if (log_value < std::log(std::numeric_limits<double>::denorm_min())) return 0.0;
  return sgn(qt) * std::exp(log_value);
}

IntegralOperator integral_op(const std::vector<double>& alpha, const std::function<double(double)>& psi,
                             unsigned ngrid) {
  if (ngrid < 2) throw InputError("integral_op: Ngrid must be at least 2");
  if (alpha.size() != ngrid + 1) throw InputError("integral_op: alpha must hold Ngrid+1 samples");
  const double h = 1.0 / ngrid;
  std::vector<double> y(ngrid + 1);
  for (unsigned i = 0; i <= ngrid; ++i) {
    const double x = static_cast<double>(i) * h;
    y[i] = psi(x);
    if (!std::isfinite(y[i]) || y[i] < 0.0) {
      throw PreconditionError("integral_op: psi must map [0,1] into [0,1]");
    }
    if (i > 0 && y[i] >= x) {
      throw PreconditionError("integral_op: psi(x) >= x at grid point x = " + std::to_string(x));
    }
    if (i > 0 && y[i] <= y[i - 1]) throw PreconditionError("integral_op: psi is not strictly increasing");
  }
  for (unsigned i = 0; i < ngrid; ++i) {
    if (alpha[i] == 0.0 && alpha[i + 1] == 0.0) {
      throw PreconditionError("integral_op: alpha vanishes on grid cell " + std::to_string(i));
    }
  }

  IntegralOperator out;
  out.T.matrix = ComplexMatrix::Zero(ngrid + 1, ngrid + 1);
  for (unsigned i = 1; i <= ngrid; ++i) {
    const double s = y[i] * ngrid;
    const auto k = static_cast<unsigned>(std::floor(s));
    const double theta = s - k;
    for (unsigned c = 0; c < k; ++c) {
      out.T.matrix(i, c) += h / 2 * alpha[c];
      out.T.matrix(i, c + 1) += h / 2 * alpha[c + 1];
    }
    if (theta > 0.0) {
      if (k + 1 >= i) {
        out.T.matrix(i, k) += h * theta * alpha[k];
      } else {
        out.T.matrix(i, k) += h * theta * (2.0 - theta) / 2 * alpha[k];
        out.T.matrix(i, k + 1) += h * theta * theta / 2 * alpha[k + 1];
      }
    }
  }
  out.T.ambient = Ambient::L2Grid;
  out.T.params = {{"Ngrid", ngrid}};

  double a = psi(1.0);
  for (int guard = 0; guard < 100000; ++guard) {
    out.ladder.push_back(a);
    if (a < h) break;
    const double next = psi(a);
    if (!(next < a)) throw PreconditionError("integral_op: ladder does not decrease");
    a = next;
  }
  return out;
}

}  // namespace hclab::operators
