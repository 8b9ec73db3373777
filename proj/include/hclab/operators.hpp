#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hclab/linalg.hpp"
#include "json.hpp"

namespace hclab::operators {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::Index;
using linalg::RationalMatrix;
using linalg::RationalVector;

// ---- weight sequences --------------------------------------------------------

enum class TailRule { Constant, Geometric, Zero };

/// Behaviour of w_n outside the explicit window -N..N.
///   Constant:  w_n = plus for n > N, minus for n < -N.
///   Geometric: w_{N+j} = w_N r^j and w_{-N-j} = w_{-N} r^j (|r| <= 1).
///   Zero:      w_n = 0 outside the window.
struct Tail {
  TailRule rule = TailRule::Zero;
  Complex plus = 0.0;
  Complex minus = 0.0;
  double ratio = 0.0;

  static Tail constant(Complex plus, Complex minus) { return {TailRule::Constant, plus, minus, 0.0}; }
  static Tail geometric(double ratio) { return {TailRule::Geometric, 0.0, 0.0, ratio}; }
  static Tail zero() { return {}; }
  bool operator==(const Tail& o) const = default;
};

class WeightSequence {
 public:
  /// window holds w_{-N}, ..., w_N (length 2N+1, N >= 1).
  WeightSequence(std::vector<Complex> window, Tail tail);

  static WeightSequence constant(Complex c, long N = 1);
  /// c beyond m0, 1/c below -m0, 1 in between.
  static WeightSequence genshi_hypercyclic(double c, long m0, long N = 0);
  /// c beyond m0, c/2 below -m0, 1 in between.
  static WeightSequence genshi_supercyclic(double c, long m0, long N = 0);
  /// w_n = base^{-|n|}.
  static WeightSequence symmetric_decay(double base, long N);
  static WeightSequence from_function(long N, const std::function<Complex(long)>& f, Tail tail);

  long N() const noexcept { return N_; }
  Complex at(long n) const;
  /// log |w_n| without underflow in geometric tails (-inf for a zero weight).
  double log_abs_at(long n) const;
  const std::vector<Complex>& window() const noexcept { return window_; }
  const Tail& tail() const noexcept { return tail_; }
  /// sup_n |w_n| (finite by construction).
  double sup() const;
  /// First index n with w_n = 0, searched over the window and the tail rule.
  std::optional<long> first_zero() const;
  /// The same window with every value replaced by its modulus.
  WeightSequence moduli() const;

  nlohmann::json to_json() const;
  static WeightSequence from_json(const nlohmann::json& j);
  /// Named families: "genshi-hc", "genshi-sc", "constant", "symmetric", with parameters c, m0, N.
  static WeightSequence named(const std::string& name, double c, long m0, long N);

 private:
  long N_;
  std::vector<Complex> window_;
  Tail tail_;
};

/// w'_n = w_{1-n}.
WeightSequence dual_weight(const WeightSequence& w);
/// Agreement of at(n) on |n| <= max(N)+2 and of the tail rules.
bool same_weights(const WeightSequence& a, const WeightSequence& b, double tol = 0.0);

// ---- truncated operators -----------------------------------------------------

enum class Ambient { LpZ, L1Zplus, L2Grid, Hardy };

struct TruncatedOperator {
  ComplexMatrix matrix;
  Ambient ambient = Ambient::LpZ;
  /// Index carried by the first coordinate (e.g. -N for a window -N..N).
  long offset = 0;
  /// Truncation parameters, echoed into reports.
  nlohmann::json params = nlohmann::json::object();

  Index dim() const { return matrix.rows(); }
};

/// T_w e_n = w_n e_{n-1} compressed to the window -N..N (T e_{-N} = 0).
TruncatedOperator bilateral_shift(const WeightSequence& w, long N);

struct DualCheck {
  bool exact;          // U^{-1} T^t U == T_{w'} entrywise
  double max_deviation;
};

/// Compares U^{-1} T_w^t U with T_{w'} on the window -N..N, U e_n = e_{-n}.
DualCheck dual_relation(const WeightSequence& w, long N);

// ---- Volterra ------------------------------------------------------------------

enum class Quadrature {
  Trapezoid,  // composite trapezoid
  Gregory     // trapezoid with two Gregory end corrections per interval
};

struct VolterraPair {
  TruncatedOperator V;      // (V f)(x_i) = int_0^{x_i} f
  TruncatedOperator Vstar;  // (V* f)(x_i) = int_{x_i}^1 f
  std::vector<double> grid;
};

/// Uniform grid x_i = i / Ngrid, i = 0..Ngrid. V is lower and V* upper triangular.
VolterraPair volterra(unsigned ngrid, Quadrature rule = Quadrature::Trapezoid);

/// Row-weight vector of int_{x_a}^{x_b} on the grid (a <= b), for the chosen rule.
std::vector<double> interval_weights(unsigned ngrid, unsigned a, unsigned b, Quadrature rule);

/// Q_n with h^{(n)}(x) = h(x) Q_n(1/(x-1)), h(x) = exp(1/(x-1)), h(1) = 0.
linalg::Polynomial h_derivative(unsigned n);
/// h(x) Q(1/(x-1)) with Q evaluated exactly at the rational point x; 0 at x >= 1.
double h_apply(const linalg::Polynomial& q, const mpq_class& x);

// ---- Example tap integral operator ------------------------------------------

struct IntegralOperator {
  TruncatedOperator T;         // (T f)(x_i) = int_0^{psi(x_i)} alpha f
  std::vector<double> ladder;  // a_1 = psi(1), a_{k+1} = psi(a_k), down to one grid cell
};

/// alpha sampled on the grid (Ngrid+1 values). The matrix is strictly lower
/// triangular. PreconditionError when psi(x_i) >= x_i at a grid point, psi is
/// not strictly increasing, or alpha vanishes on a whole grid cell.
IntegralOperator integral_op(const std::vector<double>& alpha, const std::function<double(double)>& psi,
                             unsigned ngrid);

// ---- finite-rank tensor operators ------------------------------------------

struct TensorElement {
  std::vector<ComplexVector> x;
  std::vector<ComplexVector> y;
  ComplexMatrix b;  // b(u, v) = u^t B v
};

struct RationalTensorElement {
  std::vector<RationalVector> x;
  std::vector<RationalVector> y;
  RationalMatrix b;
};

struct TensorOps {
  ComplexMatrix T;  // T x = sum_j b(x, y_j) x_j
  ComplexMatrix S;  // S y = sum_j b(x_j, y) y_j
};

struct RationalTensorOps {
  RationalMatrix T;
  RationalMatrix S;
};

TensorOps tensor_op(const TensorElement& xi);
RationalTensorOps tensor_op(const RationalTensorElement& xi);
/// max |b(Tx, y) - b(x, Sy)| over the given vectors (entrywise via T^t B - B S).
double duality_residual(const TensorElement& xi, const TensorOps& ops);

// ---- generators of the mixing group ---------------------------------------

struct SaanGenerators {
  unsigned k;
  std::vector<std::vector<unsigned>> multi;  // multi[i] = phi^{-1}(i)
  std::vector<RationalMatrix> exact;
  std::vector<ComplexMatrix> A;
  double coefficient_bound_slack;  // min over coefficients of 2^{-|n|} - c_{j,n}
  double l1_norm;                  // max_j induced l1 norm
  double esti_bound;               // sum of 2^{-|n|} over the truncation
};

/// Graded-lexicographic enumeration of Z_+^k, first `count` elements.
std::vector<std::vector<unsigned>> graded_lex(unsigned k, std::size_t count);

/// A_j e_{phi(m)} = (alpha_{|m|-1} / alpha_{|m|}) e_{phi(m - e_j)} for m_j >= 1.
/// Default alpha_m = 2^{m(m+1)/2}; default phi is graded_lex. A supplied
/// enumeration must be duplicate-free and closed under m -> m - e_j.
/// PreconditionError when alpha_{m+1} < 2^m alpha_m.
SaanGenerators saan_generators(unsigned k, std::size_t ntrunc,
                               const std::function<mpq_class(unsigned)>& alpha = {},
                               const std::vector<std::vector<unsigned>>& enumeration = {});

}  // namespace hclab::operators
