#include "hclab/linalg/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "hclab/errors.hpp"

namespace hclab::linalg {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

Polynomial::Polynomial(const mpq_class& constant) {
  if (sgn(constant) != 0) c_.push_back(constant);
  if (!c_.empty()) c_.back().canonicalize();
}

Polynomial Polynomial::monomial(unsigned degree, const mpq_class& coeff) {
  std::vector<mpq_class> c(degree + 1, mpq_class(0));
  c[degree] = coeff;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<mpq_class> c(std::max(c_.size(), o.c_.size()), mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& x : out.c_) x = -x;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> c(c_.size() + o.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("Polynomial::divmod: division by zero polynomial");
  if (degree() < divisor.degree()) return {Polynomial(), *this};
  std::vector<mpq_class> rem = c_;
  std::vector<mpq_class> quot(c_.size() - divisor.c_.size() + 1, mpq_class(0));
  const mpq_class lead = divisor.c_.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const mpq_class f = rem[k + divisor.c_.size() - 1] / lead;
    quot[k] = f;
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < divisor.c_.size(); ++j) rem[k + j] -= f * divisor.c_[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpq_class> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Polynomial out(*this);
  const mpq_class lead = c_.back();
  for (auto& x : out.c_) x /= lead;
  return out;
}

mpq_class Polynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

double Polynomial::eval(double x) const {
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].get_d();
  return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].get_d();
  return acc;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const mpq_class& a = c_[k];
    if (sgn(a) == 0) continue;
    const mpq_class mag = abs(a);
    if (first) {
      if (sgn(a) < 0) out << "-";
    } else {
      out << (sgn(a) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (k == 0 || !unit) out << mag.get_str();
    if (k >= 1) out << (unit ? "" : "*") << var;
    if (k >= 2) out << "^" << k;
  }
  return out.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace hclab::linalg
