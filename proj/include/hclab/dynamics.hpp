#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hclab/linalg.hpp"
#include "hclab/operators.hpp"

namespace hclab::dynamics {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::Index;

// ---- orbits ------------------------------------------------------------------

struct OrbitTrace {
  ComplexVector base;
  std::vector<ComplexVector> iterates;  // scalings[n] T^n x
  std::vector<Complex> scalings;
  std::vector<double> norms;
  bool overflow = false;  // trace stopped early at a non-finite iterate
};

/// [x, Tx, ..., T^K x], term n multiplied by scalings[n] when given (length K+1, entries nonzero).
OrbitTrace orbit(const ComplexMatrix& t, const ComplexVector& x, unsigned K,
                 const std::vector<Complex>& scalings = {});

// ---- exponential groups ------------------------------------------------------

/// exp(sum_j z_j A_j) without any commutation check.
ComplexMatrix exp_sum(const std::vector<ComplexMatrix>& as, const std::vector<Complex>& z);
/// exp(<z, A>); PreconditionError when some pair of generators does not commute within tol.
ComplexMatrix exp_group(const std::vector<ComplexMatrix>& as, const std::vector<Complex>& z, double tol = 1e-10);
/// Max-entry residual of exp(<z+w, A>) - exp(<z, A>) exp(<w, A>); no commutation check.
double group_law_residual(const std::vector<ComplexMatrix>& as, const std::vector<Complex>& z,
                          const std::vector<Complex>& w);

// ---- density -----------------------------------------------------------------

/// Square net on the plane of (Re x_coord, Re y_coord) over [-radius, radius]^2.
struct NetSpec {
  Index coord = 0;
  double radius = 1.0;
  unsigned cells = 4;
  unsigned base_samples = 256;  // number of base vectors x
};

/// The power family {lambda T^n : 0 <= n <= horizon}. When projective, lambda
/// rescales T^n x to norm radius * s with s uniform in [-1, 1]; otherwise lambda = 1.
struct PowerFamily {
  ComplexMatrix T;
  bool projective = false;
};

struct CoverageReport {
  double fraction = 0.0;
  std::vector<std::uint8_t> hits;  // cells x cells, row = first coordinate
  unsigned cells = 0;
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
};

/// Fraction of net cells hit by (x, T_a x). Each base vector draws from its own
/// generator seeded from (seed, index), so results do not depend on `threads`.
CoverageReport u3_density(const PowerFamily& family, const NetSpec& net, unsigned horizon, std::uint64_t seed,
                          unsigned threads = 1);

// ---- mixing and transitivity -------------------------------------------------

struct Ball {
  ComplexVector center;
  double radius;
};

struct HitReport {
  Ball U, V;
  std::vector<bool> hits;                // hits[n-1] for 1 <= n <= horizon
  std::optional<unsigned> window_start;  // least N with hits for every N <= n <= horizon
  bool lambda_probes = false;            // transitivity pairs were used
};

/// Probes per n: a transitivity pair when both centers lie in Lambda(T), the
/// least-norm correction u + pinv(T^n)(v - T^n u), then probe_budget random points of U.
HitReport mixing_window(const ComplexMatrix& t, const Ball& U, const Ball& V, unsigned horizon, unsigned probe_budget,
                        std::uint64_t seed = 0);

struct TransitivityPair {
  ComplexVector x;
  double residual_u = 0.0;  // |x_k - u|
  double residual_v = 0.0;  // |T^k x_k - v|, evaluated in 50-digit arithmetic
  unsigned k = 0;
};

/// x_k with x_k -> u and T^k x_k -> v, assembled linearly from unimodular Jordan-chain pairs.
/// DomainError (with the distance) when u or v is not within tol of Lambda(T).
TransitivityPair transitivity_pair(const ComplexMatrix& t, const ComplexVector& u, const ComplexVector& v, unsigned k,
                                   double tol = 1e-8);

// ---- supercyclicity probe ----------------------------------------------------

struct SupercyclicReport {
  bool applicable = false;
  std::string reason;
  std::vector<Index> ladder;    // dim ker T^n, n = 1..dim
  std::vector<double> lambdas;  // lambda_k, k = 1..K
  CoverageReport coverage;
};

/// Pairs (c + u_k^b / lambda_k, lambda_k T^k (c + u_k^b / lambda_k)) with c in ker T^k,
/// b from a seeded set B, u_k^b the least-norm solution of T^k u = b and
/// lambda_k = 2^k max(1, max_b |u_k^b|). Inapplicable unless ker T is nontrivial
/// and the kernels of the powers exhaust the space.
SupercyclicReport supercyclic_probe(const ComplexMatrix& t, const NetSpec& net, unsigned horizon, std::uint64_t seed);

// ---- Volterra distance -------------------------------------------------------

struct VolterraDistance {
  std::vector<double> d;  // d_n = |<f, h^(n)>| / |h^(n)|, n = 0..n_max
  double f_norm = 0.0;
  double min_ratio = 0.0;         // min_n d_n / |f| (0 when f = 0)
  unsigned argmin = 0;
  double adjoint_residual = 0.0;  // |V* h' + h|_inf on the grid
  double decay_exponent = 0.0;    // least-squares slope of log d_n against log n
};

/// InputError when f is nonzero at a grid point x >= q or f has the wrong length.
VolterraDistance volterra_dist(unsigned ngrid, double q, const std::vector<double>& f, unsigned n_max,
                               operators::Quadrature rule = operators::Quadrature::Gregory);

/// Least-squares slope of log y against log x over the positive entries.
double fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hclab::dynamics
