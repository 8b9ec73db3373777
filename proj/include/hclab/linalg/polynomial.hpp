#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hclab::linalg {

/// Univariate polynomial over Q; coefficients stored lowest degree first with
/// no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);
  Polynomial(const mpq_class& constant);  // NOLINT: implicit lift of scalars is intended
  Polynomial(long constant) : Polynomial(mpq_class(constant)) {}  // NOLINT

  static Polynomial monomial(unsigned degree, const mpq_class& coeff = 1);
  /// The indeterminate itself.
  static Polynomial z() { return monomial(1); }

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const noexcept { return c_; }
  mpq_class coeff(unsigned k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
  mpq_class leading() const { return is_zero() ? mpq_class(0) : c_.back(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  /// Euclidean division: (quotient, remainder). Throws DomainError on zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  mpq_class operator()(const mpq_class& x) const;
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;

  /// Human-readable form in the variable `var`, highest degree first.
  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace hclab::linalg
