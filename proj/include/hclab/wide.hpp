#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <gmpxx.h>

namespace hclab {

/// 50 significant decimal digits.
using WideReal = boost::multiprecision::cpp_bin_float_50;
using WideComplex = boost::multiprecision::cpp_complex_50;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using WideMatrix = Mat<WideComplex>;
using WideVector = Vec<WideComplex>;

/// Conversions between the scalar flavours used by the templated solvers.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<std::complex<double>> {
  using Scalar = std::complex<double>;
  static Scalar from_rational(const mpq_class& q) { return q.get_d(); }
  static Scalar from_complex(std::complex<double> z) { return z; }
  static std::complex<double> to_complex(const Scalar& s) { return s; }
  static double magnitude(const Scalar& s) { return std::abs(s); }
};

template <>
struct ScalarOps<WideComplex> {
  using Scalar = WideComplex;
  static Scalar from_rational(const mpq_class& q) {
    return Scalar(WideReal(q.get_num().get_str()) / WideReal(q.get_den().get_str()));
  }
  static Scalar from_complex(std::complex<double> z) { return Scalar(z.real(), z.imag()); }
  static std::complex<double> to_complex(const Scalar& s) {
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
  }
  static double magnitude(const Scalar& s) { return static_cast<double>(abs(s)); }
};

template <>
struct ScalarOps<mpq_class> {
  using Scalar = mpq_class;
  static Scalar from_rational(const mpq_class& q) { return q; }
  static std::complex<double> to_complex(const Scalar& s) { return s.get_d(); }
  static double magnitude(const Scalar& s) { return std::abs(s.get_d()); }
};

template <class S>
Mat<S> promote(const Eigen::MatrixXcd& m) {
  Mat<S> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ScalarOps<S>::from_complex(m(i, j));
  return out;
}

template <class S>
Vec<S> promote(const Eigen::VectorXcd& v) {
  Vec<S> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = ScalarOps<S>::from_complex(v(i));
  return out;
}

template <class S>
Eigen::MatrixXcd demote(const Mat<S>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ScalarOps<S>::to_complex(m(i, j));
  return out;
}

template <class S>
Eigen::VectorXcd demote(const Vec<S>& v) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = ScalarOps<S>::to_complex(v(i));
  return out;
}

/// Euclidean norm evaluated in the vector's own precision, returned as double.
template <class S>
double norm2(const Vec<S>& v) {
  WideReal acc = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const WideReal m = WideReal(ScalarOps<S>::magnitude(v(i)));
    acc += m * m;
  }
  return static_cast<double>(sqrt(acc));
}

template <>
inline double norm2<std::complex<double>>(const Vec<std::complex<double>>& v) {
  return v.norm();
}

template <>
inline double norm2<WideComplex>(const Vec<WideComplex>& v) {
  WideReal acc = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += norm(v(i));
  return static_cast<double>(sqrt(acc));
}

}  // namespace hclab
