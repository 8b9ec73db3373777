#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hclab/linalg.hpp"
#include "hclab/operators.hpp"

namespace hclab::criteria {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::Index;
using linalg::RationalMatrix;
using linalg::RationalVector;
using linalg::Subspace;
using operators::WeightSequence;

// ---- Salas criteria ----------------------------------------------------------

enum class SalasVerdict { Satisfied, ViolatedAtHorizon, Inconclusive };
enum class SalasKind { Hypercyclic, Supercyclic };

std::string to_string(SalasVerdict v);

struct SalasCertificate {
  SalasKind kind = SalasKind::Hypercyclic;
  SalasVerdict verdict = SalasVerdict::Inconclusive;
  std::string reason;
  long m_max = 0;
  long n_max = 0;
  double tol = 0.0;
  /// log_traces[m][n-1] = natural log of the trace value at (m, n), 0 <= m <= m_max, 1 <= n <= n_max.
  std::vector<std::vector<double>> log_traces;
  /// Per m: min over n <= n_max and over n <= n_max/2 (natural log).
  std::vector<double> log_min;
  std::vector<double> log_min_half;
};

/// Trace max{w~(m-n+1,m), w~(m+1,m+n)^{-1}} in log space.
/// Satisfied: every trace minimum is below tol and still decreasing when n_max doubles.
/// ViolatedAtHorizon: some trace minimum is at least tol and did not decrease over the second half.
/// Inconclusive otherwise. A zero weight gives ViolatedAtHorizon with reason "range not dense".
SalasCertificate salas_hypercyclic(const WeightSequence& w, long m_max, long n_max, double tol = 1e-6);
/// As above with the ratio w~(m-n+1,m) / w~(m+1,m+n).
SalasCertificate salas_supercyclic(const WeightSequence& w, long m_max, long n_max, double tol = 1e-6);

// ---- ker-dagger, Lambda(T), EBS tuples -----------------------------------------

/// span over 1 <= n <= dim of T^n(X) cap ker T^n.
Subspace ker_dagger(const ComplexMatrix& t, double tol = linalg::kDefaultRankTol);

struct LambdaResult {
  Subspace span;
  std::vector<Complex> unimodular;  // distinct unimodular eigenvalues used
  std::vector<linalg::EigenCluster> clusters;
};

/// Lambda(T): ker-dagger spaces of T - zI summed over unimodular eigenvalues z.
/// A cluster counts as unimodular when ||z| - 1| <= unimodular_tol.
LambdaResult lambda_T_full(const ComplexMatrix& t, double tol = linalg::kDefaultRankTol,
                           double unimodular_tol = 1e-6);
Subspace lambda_T(const ComplexMatrix& t, double tol = linalg::kDefaultRankTol);

/// span of T_1^{n_1}..T_k^{n_k}(cap_j ker T_j^{2 n_j}) over n in {1..dim}^k.
/// PreconditionError naming the pair when some commutator norm exceeds tol * max(1, |T_i| |T_j|).
Subspace ebs_tuple_kernel(const std::vector<ComplexMatrix>& ts, double tol = linalg::kDefaultRankTol);

// ---- EBS perturbation ------------------------------------------------------

struct EbsPerturbation {
  operators::RationalTensorElement xi_s;
  unsigned n = 0;                  // T_xi^n = 0
  std::vector<RationalVector> u;   // u_1..u_{2n} in ker T_xi
  std::vector<RationalVector> f;   // f_1..f_{2n} in L, b(u_k, f_j) = delta_kj
  bool nilpotent_2n = false;       // T_{xi_s}^{2n} = 0
  bool chain_x1 = false;           // T_{xi_s}^n u_n = s^n x_1
  bool chain_x2 = false;           // T_{xi_s}^n u_{2n} = s^n x_2
  bool x_in_kernel = false;        // T_{xi_s}^n x_1 = T_{xi_s}^n x_2 = 0
};

/// Smallest n with T^n = 0, or nullopt if T is not nilpotent.
std::optional<unsigned> nilpotency_index(const RationalMatrix& t);

/// xi_s = xi + s eta with eta built from a biorthogonal system in ker T_xi and L.
/// DimensionError when the system of size 2n cannot be found.
EbsPerturbation ebs_perturb(const operators::RationalTensorElement& xi, const RationalVector& x1,
                            const RationalVector& x2, const mpq_class& s);

struct EbsScenario {
  operators::RationalTensorElement xi;
  RationalVector x1, x2;
};

/// Seeded integer-conjugated Jordan block of size n on K^dim with b the identity pairing.
/// DimensionError when dim < 3n + 1, where the biorthogonal system cannot exist.
EbsScenario random_ebs_scenario(std::size_t dim, unsigned n, std::uint64_t seed);

// ---- regions ---------------------------------------------------------------

enum class RegionTransform { Shift1, Exponential, Identity };
enum class RegionVerdict { IntersectsCircle, InsideDisk, OutsideClosedDisk, Indeterminate };

std::string to_string(RegionTransform t);
std::string to_string(RegionVerdict v);
RegionTransform parse_transform(const std::string& name);

struct RegionPredicate {
  std::string name;
  std::function<bool(Complex)> contains;
  /// Exact membership for rational points, when available.
  std::function<bool(const mpq_class&, const mpq_class&)> contains_exact;
  double re_min, re_max, im_min, im_max;
};

/// Interior of the triangle with vertices -1, i, -i.
RegionPredicate region_U();
/// {a + bi : 0 < b < 1, |a| < 1 - sqrt(1 - b^2)}.
RegionPredicate region_V();
/// Open disk.
RegionPredicate region_disk(Complex center, double radius);
RegionPredicate builtin_region(const std::string& name);

struct RegionReport {
  RegionVerdict verdict = RegionVerdict::Indeterminate;
  bool exact = false;          // verdict backed by an exact certificate
  std::string certificate;     // statement of the exact argument
  std::vector<Complex> witnesses;
  std::size_t samples = 0;
  std::size_t in_region = 0;
  std::size_t image_inside = 0;   // |phi(z)| < 1
  std::size_t image_outside = 0;  // |phi(z)| > 1
  bool sampling_agrees = true;
  std::uint64_t seed = 0;
};

/// PreconditionError when samples < 10^4.
RegionReport gs_region_verdict(const RegionPredicate& region, RegionTransform transform, std::size_t samples,
                               std::uint64_t seed);

// ---- symmetry obstructions -------------------------------------------------

struct SymmetryReport {
  bool applicable = false;
  std::optional<long> first_violation;  // smallest n >= 0 with |w_n| != |w_-n|
  double flip_residual = 0.0;            // |U T0 U^{-1} - T0^t|
  double max_residual = 0.0;             // worst relative orthogonality residual
  unsigned trials = 0;
  long N = 0;
  std::uint64_t seed = 0;
};

/// p holds real coefficients, lowest degree first. The window is -N-1..N and U e_n = e_{-1-n}.
SymmetryReport symmetry_obstruction(const WeightSequence& w, const std::vector<double>& p, unsigned trials, long N,
                                    std::uint64_t seed);

struct BSymmetryReport {
  bool symmetric = false;
  double symmetry_residual = 0.0;  // worst relative |b(Tu,v) - b(u,Tv)| over the battery
  std::optional<std::pair<ComplexVector, ComplexVector>> witness;
  double annihilator_residual = 0.0;  // worst relative |Phi((T+T)^n (x,y))|, n <= N
  long N = 0;
};

BSymmetryReport b_symmetry_check(const ComplexMatrix& t, const ComplexMatrix& b, const ComplexVector& x,
                                 const ComplexVector& y, long N, std::uint64_t seed = 0, unsigned battery = 32);

}  // namespace hclab::criteria
