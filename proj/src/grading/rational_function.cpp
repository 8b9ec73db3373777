#include "hclab/grading.hpp"

namespace hclab::grading {

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DomainError("RationalFunction: zero denominator");
  if (num.is_zero()) {
    num_ = Polynomial(0L);
    den_ = Polynomial(1L);
    return;
  }
  const Polynomial g = linalg::gcd(num, den);
  Polynomial p = num.divmod(g).first;
  Polynomial q = den.divmod(g).first;
  const mpq_class lead = q.leading();
  const Polynomial inv(mpq_class(1) / lead);
  num_ = p * inv;
  den_ = q * inv;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return {num_ * o.den_ - o.num_ * den_, den_ * o.den_};
}

RationalFunction RationalFunction::operator-() const { return {-num_, den_}; }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return {num_ * o.num_, den_ * o.den_};
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw DomainError("RationalFunction: division by zero");
  return {num_ * o.den_, den_ * o.num_};
}

std::string RationalFunction::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

long deg(const RationalFunction& r) {
  if (r.is_zero()) return kDegNegInf;
  return static_cast<long>(r.num().degree()) - static_cast<long>(r.den().degree());
}

}  // namespace hclab::grading
