#include <algorithm>
#include <cmath>
#include <string>

#include "hclab/dynamics.hpp"

namespace hclab::dynamics {

namespace {

double weighted_dot(const std::vector<double>& w, const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

std::vector<double> sample(const linalg::Polynomial& q, unsigned ngrid) {
  std::vector<double> out(ngrid + 1);
  for (unsigned i = 0; i <= ngrid; ++i) {
    mpq_class x(i, ngrid);
    x.canonicalize();
    out[i] = operators::h_apply(q, x);
  }
  return out;
}

}  // namespace

VolterraDistance volterra_dist(unsigned ngrid, double q, const std::vector<double>& f, unsigned n_max,
                               operators::Quadrature rule) {
  if (ngrid < 16) throw InputError("volterra_dist: Ngrid must be at least 16");
  if (!(q > 0.0 && q < 1.0)) throw InputError("volterra_dist: cutoff q must lie in (0, 1)");
  if (f.size() != ngrid + 1) {
    throw InputError("volterra_dist: f needs Ngrid+1 = " + std::to_string(ngrid + 1) + " samples");
  }
  for (unsigned i = 0; i <= ngrid; ++i) {
    const double x = static_cast<double>(i) / ngrid;
    if (!std::isfinite(f[i])) throw InputError("volterra_dist: f has a non-finite sample");
    if (x >= q && f[i] != 0.0) {
      throw InputError("volterra_dist: f(" + std::to_string(x) + ") is nonzero beyond the cutoff");
    }
  }

  const std::vector<double> w = operators::interval_weights(ngrid, 0, ngrid, rule);
  VolterraDistance out;
  out.f_norm = std::sqrt(std::max(0.0, weighted_dot(w, f, f)));

  for (unsigned n = 0; n <= n_max; ++n) {
    const std::vector<double> h = sample(operators::h_derivative(n), ngrid);
    const double hn = std::sqrt(std::max(0.0, weighted_dot(w, h, h)));
    out.d.push_back(hn > 0.0 ? std::abs(weighted_dot(w, f, h)) / hn : 0.0);
  }
  if (out.f_norm > 0.0) {
    out.min_ratio = out.d[0] / out.f_norm;
    for (unsigned n = 1; n <= n_max; ++n) {
      if (out.d[n] / out.f_norm < out.min_ratio) {
        out.min_ratio = out.d[n] / out.f_norm;
        out.argmin = n;
      }
    }
    std::vector<double> xs, ys;
    for (unsigned n = 1; n <= n_max; ++n) {
      xs.push_back(n);
      ys.push_back(out.d[n]);
    }
    out.decay_exponent = fit_power_law(xs, ys);
  }

  const operators::VolterraPair vp = operators::volterra(ngrid, rule);
  const std::vector<double> h = sample(operators::h_derivative(0), ngrid);
  const std::vector<double> dh = sample(operators::h_derivative(1), ngrid);
  const Eigen::VectorXd dhv = Eigen::Map<const Eigen::VectorXd>(dh.data(), static_cast<Index>(dh.size()));
  const Eigen::VectorXd vh = vp.Vstar.matrix.real() * dhv;
  for (unsigned i = 0; i <= ngrid; ++i) out.adjoint_residual = std::max(out.adjoint_residual, std::abs(vh(i) + h[i]));
  return out;
}

}  // namespace hclab::dynamics
