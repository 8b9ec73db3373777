#include "catch_amalgamated.hpp"
#include "hclab/nilpotent.hpp"
#include "support.hpp"

using namespace hclab;
using namespace hclab::nilpotent;
using namespace hclab::testing;

namespace {

mpq_class factorial(unsigned m) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= m; ++i) f *= i;
  return mpq_class(f);
}

mpq_class qpow(const mpq_class& z, unsigned p) {
  mpq_class r = 1;
  for (unsigned i = 0; i < p; ++i) r *= z;
  return r;
}

std::vector<Complex> random_cube(std::mt19937_64& rng, unsigned n) {
  std::vector<Complex> out(n);
  for (auto& c : out) c = uniform(rng, -1.0, 1.0);
  return out;
}

// Dense oracle: the 2n x 2n system [P; P e^{zS}] x = [u; v].
ComplexVector dense_jordan(unsigned n, Complex z, const std::vector<Complex>& u, const std::vector<Complex>& v) {
  const Index d = 2 * static_cast<Index>(n);
  const ComplexMatrix e = linalg::exp_nilpotent(linalg::backward_shift(d), z);
  ComplexMatrix sys(d, d);
  sys.topRows(n) = ComplexMatrix::Identity(d, d).topRows(n);
  sys.bottomRows(n) = e.topRows(n);
  ComplexVector rhs(d);
  for (unsigned i = 0; i < n; ++i) {
    rhs(i) = u[i];
    rhs(n + i) = v[i];
  }
  return sys.fullPivLu().solve(rhs);
}

}  // namespace

TEST_CASE("shift space structure", "[nilpotent]") {
  for (unsigned n = 1; n <= 5; ++n) {
    const ShiftSpace sp(n);
    const ComplexMatrix s = sp.shift();
    const ComplexMatrix p = sp.projection();
    CHECK(linalg::matrix_power(s, 2 * n).isZero(0.0));
    CHECK_FALSE(linalg::matrix_power(s, 2 * n - 1).isZero(0.0));
    CHECK(p * p == p);
    CHECK(sp.E().dim() == n);
    CHECK(linalg::same_subspace(linalg::Subspace::from_spanning(p * sp.E().basis()), sp.E(), 1e-14));
  }
}

TEST_CASE("build_Anz entries and factorization", "[nilpotent]") {
  CHECK(build_Anz_exact(1, 3) == RationalMatrix{{3}});
  const RationalMatrix a21 = build_Anz_exact(2, 1);
  CHECK(a21 == RationalMatrix{{1, mpq_class(1, 2)}, {mpq_class(1, 2), mpq_class(1, 6)}});
  CHECK(linalg::det_exact(a21) == mpq_class(-1, 12));
  CHECK_THROWS_AS(build_Anz_exact(3, 0), DomainError);
  CHECK_THROWS_AS(build_Anz(3, 0.0), DomainError);

  for (unsigned n = 1; n <= 6; ++n) {
    for (const mpq_class& z : {mpq_class(2), mpq_class(-3)}) CHECK(factorization_holds(n, z));
    for (const Complex z : {Complex(2.0), Complex(0.0, 1.0), Complex(-3.0)}) {
      CHECK(factorization_residual(n, z) <= 1e-12 * std::pow(std::abs(z), 2 * n - 1));
    }
  }
}

TEST_CASE("build_Anz matches its entry formula", "[nilpotent][property]") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 8);
    mpq_class z = random_rational(rng, 6, 5);
    if (z == 0) z = 1;
    const RationalMatrix a = build_Anz_exact(n, z);
    for (unsigned j = 1; j <= n; ++j)
      for (unsigned k = 1; k <= n; ++k) CHECK(a(j - 1, k - 1) == qpow(z, j + k - 1) / factorial(j + k - 1));
    CHECK(linalg::det_exact(a) != 0);
  }
}

TEST_CASE("det_Mnk recurrence against the permutation expansion", "[nilpotent]") {
  for (unsigned k = 1; k <= 8; ++k) CHECK(det_Mnk(1, k).recurrence == 1);
  CHECK(det_Mnk(2, 1).recurrence == mpq_class(1, 6));
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned k = 1; k <= 8; ++k) CHECK(det_Mnk(n, k).agree());
  for (unsigned n = 1; n <= 6; ++n)
    for (unsigned k = 1; k <= 4; ++k) CHECK(det_Mnk(n, k).recurrence == leibniz_det(build_Mnk(n, k)));
}

TEST_CASE("build_Mnk entries", "[nilpotent]") {
  const RationalMatrix m = build_Mnk(3, 2);
  for (unsigned j = 1; j <= 3; ++j)
    for (unsigned l = 1; l <= 3; ++l) CHECK(m(j - 1, l - 1) == factorial(2 + 3 - l) / factorial(2 + 3 - l + j - 1));
}

TEST_CASE("jordan_solve closed form on K^2", "[nilpotent]") {
  const auto sol = jordan_solve<mpq_class>(1, mpq_class(4), {mpq_class(1)}, {mpq_class(0)});
  REQUIRE(sol.x.size() == 2);
  CHECK(sol.x[0] == 1);
  CHECK(sol.x[1] == mpq_class(-1, 4));
  CHECK(sol.ex[0] == 0);
  CHECK(sol.ex[1] == mpq_class(-1, 4));
  CHECK(sol.residual_u == 0.0);
  CHECK(sol.residual_v == 0.0);
}

TEST_CASE("jordan_solve residuals and dense agreement", "[nilpotent][property]") {
  std::mt19937_64 rng(22);
  for (unsigned n = 1; n <= 5; ++n) {
    for (unsigned e = 1; e <= 10; ++e) {
      const double r = std::ldexp(1.0, static_cast<int>(e));
      const Complex z = std::polar(r, uniform(rng, 0.0, 6.283185307179586));
      const auto u = random_cube(rng, n), v = random_cube(rng, n);
      const auto sol = jordan_solve<WideComplex>(n, ScalarOps<WideComplex>::from_complex(z),
                                                 std::vector<WideComplex>(u.begin(), u.end()),
                                                 std::vector<WideComplex>(v.begin(), v.end()));
      CHECK(sol.residual_u <= 1e-10);
      CHECK(sol.residual_v <= 1e-10);
      if (r <= 16.0) {
        const ComplexVector oracle = dense_jordan(n, z, u, v);
        for (unsigned i = 0; i < 2 * n; ++i) {
          CHECK(std::abs(ScalarOps<WideComplex>::to_complex(sol.x[i]) - oracle(i)) <= 1e-8 * std::max(1.0, oracle.norm()));
        }
      }
    }
  }
}

TEST_CASE("jordan_solve exact and floating paths agree", "[nilpotent][property]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 4);
    mpq_class z = random_rational(rng, 8, 3);
    if (z == 0) z = 2;
    std::vector<mpq_class> u(n), v(n);
    for (auto& q : u) q = random_rational(rng);
    for (auto& q : v) q = random_rational(rng);
    const auto exact = jordan_solve<mpq_class>(n, z, u, v);
    std::vector<Complex> uf, vf;
    for (const auto& q : u) uf.push_back(q.get_d());
    for (const auto& q : v) vf.push_back(q.get_d());
    const auto approx = jordan_solve<Complex>(n, z.get_d(), uf, vf);
    for (unsigned i = 0; i < 2 * n; ++i) CHECK(std::abs(approx.x[i] - exact.x[i].get_d()) <= 1e-9);
    CHECK(exact.residual_u == 0.0);
    CHECK(exact.residual_v == 0.0);
  }
}

TEST_CASE("jordan_solve tail decays like |z|^-j", "[nilpotent][property]") {
  std::mt19937_64 rng(24);
  for (unsigned n = 1; n <= 4; ++n) {
    const auto u = random_cube(rng, n), v = random_cube(rng, n);
    const std::vector<WideComplex> uw(u.begin(), u.end()), vw(v.begin(), v.end());
    std::vector<double> c(n, 0.0);
    const auto base = jordan_solve<WideComplex>(n, WideComplex(2), uw, vw);
    for (unsigned j = 1; j <= n; ++j) c[j - 1] = ScalarOps<WideComplex>::magnitude(base.x[n + j - 1]) * std::pow(2.0, j);
    for (double r = 4.0; r <= 1024.0; r *= 2.0) {
      const auto sol = jordan_solve<WideComplex>(n, WideComplex(r), uw, vw);
      for (unsigned j = 1; j <= n; ++j) {
        const double tail = ScalarOps<WideComplex>::magnitude(sol.x[n + j - 1]);
        // Coefficients converge from above or below; allow the fitted constant to grow by a bounded factor.
        CHECK(tail <= 4.0 * std::max(c[j - 1], 1.0) * std::pow(r, -static_cast<double>(j)));
      }
    }
  }
}

TEST_CASE("similarity_J intertwines S and e^S - I", "[nilpotent]") {
  CHECK(similarity_J(1) == RationalMatrix::identity(2));
  for (unsigned n = 1; n <= 5; ++n) {
    const RationalMatrix j = similarity_J(n);
    const std::size_t d = 2 * n;
    RationalMatrix s(d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) s(i, i + 1) = 1;
    // e^S - I as sum_{m >= 1} S^m / m!, built independently of the library.
    RationalMatrix es(d, d);
    RationalMatrix sp = s;
    for (unsigned m = 1; m < d; ++m) {
      es = es + sp * (1 / factorial(m));
      sp = sp * s;
    }
    CHECK(j * s == es * j);
    CHECK(linalg::det_exact(j) != 0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < r; ++c) CHECK(j(r, c) == 0);
  }
}

TEST_CASE("discrete_pair closed forms on K^2", "[nilpotent]") {
  for (const unsigned j : {1U, 3U, 8U, 100U}) {
    const auto p = discrete_pair<mpq_class>(1, j, {mpq_class(1)}, {mpq_class(0)});
    CHECK(p.x[0] == 1);
    CHECK(p.x[1] == mpq_class(-1, static_cast<long>(j)));
    CHECK(p.shifted[0] == 0);
    CHECK(p.shifted[1] == mpq_class(-1, static_cast<long>(j)));
    const auto q = discrete_pair<mpq_class>(1, j, {mpq_class(0)}, {mpq_class(1)});
    CHECK(q.x[0] == 0);
    CHECK(q.x[1] == mpq_class(1, static_cast<long>(j)));
    CHECK(q.shifted[0] == 1);
  }
}

TEST_CASE("discrete_pair errors decay like 1/j", "[nilpotent][property]") {
  std::mt19937_64 rng(25);
  for (unsigned n = 2; n <= 4; ++n) {
    const auto u = random_cube(rng, n), v = random_cube(rng, n);
    const std::vector<WideComplex> uw(u.begin(), u.end()), vw(v.begin(), v.end());
    double scaled_at_4 = 0.0, previous = std::numeric_limits<double>::infinity();
    unsigned j0 = 0;
    for (unsigned j = 4; j <= 4096; j *= 2) {
      const auto p = discrete_pair<WideComplex>(n, j, uw, vw);
      const double err = std::max(p.error_u, p.error_v);
      if (j == 4) scaled_at_4 = err * j;
      CHECK(err * j <= 1.5 * scaled_at_4);
      if (err > previous) j0 = j;
      previous = err;
    }
    CHECK(j0 <= 16);
  }
}

TEST_CASE("apply_unipotent_power is the binomial expansion", "[nilpotent][property]") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const unsigned half = 1 + static_cast<unsigned>(rng() % 4);
    const unsigned j = static_cast<unsigned>(rng() % 20);
    const ComplexVector x = random_vector(rng, 2 * half);
    const ComplexMatrix step = ComplexMatrix::Identity(2 * half, 2 * half) + linalg::backward_shift(2 * half);
    const ComplexVector oracle = linalg::matrix_power(step, j) * x;
    const auto got = apply_unipotent_power<Complex>(j, std::vector<Complex>(x.data(), x.data() + x.size()));
    for (Index i = 0; i < x.size(); ++i) CHECK(std::abs(got[i] - oracle(i)) <= 1e-9 * std::max(1.0, oracle.norm()));
    const Complex z = random_complex(rng, 3.0);
    const ComplexVector eo = linalg::exp_nilpotent(linalg::backward_shift(2 * half), z) * x;
    const auto ex = apply_exp_shift<Complex>(z, std::vector<Complex>(x.data(), x.data() + x.size()));
    for (Index i = 0; i < x.size(); ++i) CHECK(std::abs(ex[i] - eo(i)) <= 1e-10 * std::max(1.0, eo.norm()));
  }
}

TEST_CASE("tensor shift tuple commutes and is nilpotent", "[nilpotent]") {
  const auto tt = TensorShiftTuple::build({1, 2, 1});
  REQUIRE(tt.dim == 2 * 4 * 2);
  for (std::size_t a = 0; a < tt.k(); ++a) {
    CHECK(linalg::matrix_power(tt.T[a], 2 * tt.blocks[a]).isZero(0.0));
    for (std::size_t b = 0; b < tt.k(); ++b) CHECK(tt.T[a] * tt.T[b] == tt.T[b] * tt.T[a]);
  }
  CHECK(tt.e_indices.size() == 1 * 2 * 1);
  for (Index f = 0; f < tt.dim; ++f) CHECK(tt.flat_index(tt.multi_index(f)) == f);
}

TEST_CASE("tensor_approach with k = 1 matches jordan_solve", "[nilpotent]") {
  const auto tt = TensorShiftTuple::build({2});
  ComplexVector u = ComplexVector::Zero(4), v = ComplexVector::Zero(4);
  u << 0.5, -0.25, 0, 0;
  v << 0.1, 0.7, 0, 0;
  std::vector<ComplexVector> zs;
  for (int m = 1; m <= 8; ++m) zs.push_back(ComplexVector::Constant(1, Complex(2.0 * m)));
  const auto ta = tensor_approach(tt, zs, u, v, 7);
  const auto js = jordan_solve<Complex>(2, Complex(16.0), {0.5, -0.25}, {0.1, 0.7});
  for (Index i = 0; i < 4; ++i) CHECK(std::abs(ta.x(i) - js.x[static_cast<std::size_t>(i)]) <= 1e-10);
}

TEST_CASE("tensor_approach converges for growing and mixed sequences", "[nilpotent]") {
  const auto tt = TensorShiftTuple::build({1, 1});
  ComplexVector u = ComplexVector::Zero(4);
  u(tt.flat_index({0, 0})) = 1.0;
  const ComplexVector v = u;
  const ComplexMatrix s2 = linalg::backward_shift(2);
  for (const bool mixed : {false, true}) {
    std::vector<ComplexVector> zs;
    for (int m = 1; m <= 256; ++m) {
      ComplexVector z(2);
      z << double(m), mixed ? 1.0 : double(m);
      zs.push_back(z);
    }
    double previous = std::numeric_limits<double>::infinity();
    for (const std::size_t m : {4U, 16U, 64U, 256U}) {
      const auto ta = tensor_approach(tt, zs, u, v, m - 1);
      // Oracle image: Kronecker product of the factor exponentials.
      const ComplexMatrix e = linalg::kron(linalg::exp_nilpotent(s2, zs[m - 1](0)), linalg::exp_nilpotent(s2, zs[m - 1](1)));
      const double eu = (ta.x - u).norm();
      const double ev = (e * ta.x - v).norm();
      CHECK(std::abs(eu - ta.error_u) <= 1e-9);
      CHECK(std::abs(ev - ta.error_v) <= 1e-9 * std::max(1.0, ev));
      CHECK(std::max(eu, ev) <= previous);
      previous = std::max(eu, ev);
    }
    CHECK(previous < 0.05);
  }
}

TEST_CASE("tensor_approach rejects stalled sequences", "[nilpotent]") {
  const auto tt = TensorShiftTuple::build({1, 1});
  ComplexVector u = ComplexVector::Zero(4);
  std::vector<ComplexVector> zs(5, ComplexVector::Constant(2, Complex(1.0)));
  CHECK_THROWS_AS(tensor_approach(tt, zs, u, u, 4), PreconditionError);
}

TEST_CASE("detect_partition splits on a tenfold jump", "[nilpotent]") {
  ComplexVector z(3);
  z << 1000.0, 2.0, 900.0;
  CHECK(detect_partition(z) == std::vector<bool>{true, false, true});
  z << 5.0, 4.0, 3.0;
  CHECK(detect_partition(z) == std::vector<bool>{true, true, true});
}

TEST_CASE("unimodular_approach on the shift of K^2", "[nilpotent]") {
  const ComplexMatrix s = linalg::backward_shift(2);
  ComplexVector e1 = ComplexVector::Zero(2);
  e1(0) = 1.0;
  for (const unsigned k : {1U, 7U, 64U}) {
    const auto plus = unimodular_approach<Complex>(s, Complex(1.0), e1, k);
    CHECK(plus.chain_length == 1);
    CHECK(std::abs(plus.u(0)) <= 1e-14);
    CHECK(std::abs(plus.u(1) - 1.0 / k) <= 1e-14);
    CHECK(plus.u_image_error == Catch::Approx(1.0 / k).margin(1e-14));
    CHECK(plus.v_error == Catch::Approx(1.0 / k).margin(1e-14));
    const auto minus = unimodular_approach<Complex>(s, Complex(-1.0), e1, k);
    CHECK(std::abs(minus.u(1) - (k % 2 ? -1.0 : 1.0) / k) <= 1e-14);
    CHECK(minus.u_norm == Catch::Approx(plus.u_norm));
    CHECK(minus.v_error == Catch::Approx(plus.v_error));
  }
  const auto zero = unimodular_approach<Complex>(s, Complex(1.0), ComplexVector::Zero(2), 5);
  CHECK(zero.u.isZero(0.0));
  CHECK(zero.v.isZero(0.0));
}

TEST_CASE("unimodular_approach rejects bad inputs", "[nilpotent]") {
  const ComplexMatrix s = linalg::backward_shift(3);
  ComplexVector e3 = ComplexVector::Zero(3);
  e3(2) = 1.0;
  CHECK_THROWS_AS(unimodular_approach<Complex>(s, Complex(1.0), e3, 4), DomainError);
  ComplexVector e1 = ComplexVector::Zero(3);
  e1(0) = 1.0;
  CHECK_THROWS_AS(unimodular_approach<Complex>(s, Complex(2.0), e1, 4), DomainError);
  CHECK_THROWS_AS(unimodular_approach<Complex>(s, Complex(1.0), e1, 0), InputError);
}

TEST_CASE("unimodular_approach limits shrink with k", "[nilpotent][property]") {
  std::mt19937_64 rng(27);
  for (unsigned half = 1; half <= 3; ++half) {
    const Index d = 2 * half;
    const ComplexMatrix s = linalg::backward_shift(d);
    ComplexVector x = ComplexVector::Zero(d);
    for (unsigned i = 0; i < half; ++i) x(i) = random_complex(rng);
    const WideComplex z = ScalarOps<WideComplex>::from_complex(std::polar(1.0, uniform(rng, 0.0, 6.0)));
    double previous = std::numeric_limits<double>::infinity();
    for (unsigned k = 64; k <= 4096; k *= 4) {
      const auto p = unimodular_approach<WideComplex>(promote<WideComplex>(s), z, promote<WideComplex>(x), k);
      const double worst = std::max({p.u_norm, p.u_image_error, p.v_error, p.v_image_norm});
      CHECK(worst < previous);
      CHECK(worst * k <= 200.0 * std::max(1.0, x.norm()));
      previous = worst;
    }
  }
}
