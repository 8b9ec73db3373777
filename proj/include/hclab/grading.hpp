#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hclab/linalg.hpp"

namespace hclab::grading {

using linalg::Polynomial;

/// deg(0).
inline constexpr long kDegNegInf = std::numeric_limits<long>::min();

/// Reduced p/q over Q with q monic; zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : num_(0L), den_(1L) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(1L) {}  // NOLINT: polynomials embed
  RationalFunction(const mpq_class& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  /// DomainError for a zero denominator.
  RationalFunction(const Polynomial& num, const Polynomial& den);

  static RationalFunction z() { return RationalFunction(Polynomial::z()); }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction operator*(const RationalFunction& o) const;
  /// DomainError on division by zero.
  RationalFunction operator/(const RationalFunction& o) const;
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Coefficient of z^deg in the expansion at infinity (0 for the zero function).
  mpq_class leading() const { return num_.leading(); }
  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// deg p - deg q, or kDegNegInf for zero.
long deg(const RationalFunction& r);

using GradedVector = std::vector<RationalFunction>;

bool is_zero(const GradedVector& x);
/// max_j deg x_j.
long delta(const GradedVector& x);
GradedVector scale(const GradedVector& x, const RationalFunction& r);
GradedVector add(const GradedVector& a, const GradedVector& b);
std::string to_string(const GradedVector& x);

struct Independence {
  bool independent = true;
  std::size_t rank = 0;
  /// When dependent: polynomials p_j, not all zero, with sum_j p_j x_j = 0.
  std::vector<Polynomial> relation;
};

/// Linear independence over Q(z), which is T-independence for componentwise multiplication by z.
Independence t_independent(const std::vector<GradedVector>& vectors);

/// Q-rank of the span of the vectors (coefficient flattening after clearing denominators).
std::size_t rational_rank(const std::vector<GradedVector>& vectors);

struct DegreeCheck {
  long d;
  bool trivial;  // z^d L cap L = {0}
};

struct N0Report {
  long delta_plus = 0;
  long delta_minus = 0;
  long n0 = 0;
  std::size_t dim = 0;
  /// A Q-basis of L whose leading-coefficient vectors are independent at each delta level.
  std::vector<GradedVector> reduced_basis;
  std::vector<DegreeCheck> checks;        // d = n0 .. n0 + 3
  std::optional<DegreeCheck> probe;       // d = n0 - 1, when n0 >= 1
  std::optional<GradedVector> counterexample;  // nonzero y in L with z^{n0-1} y in L
};

/// DomainError when L = {0}; InputError on mismatched component counts.
N0Report n0_bound(const std::vector<GradedVector>& generators);

struct Membership {
  bool member = false;
  Polynomial p;  // p y = q x componentwise, p nonzero
  Polynomial q;
  RationalFunction r;  // r = q / p
};

/// Decides whether y is a rational-function multiple of the nonzero x.
Membership f_t_x_member(const GradedVector& x, const GradedVector& y);

}  // namespace hclab::grading
