#include "catch_amalgamated.hpp"
#include "hclab/criteria.hpp"
#include "support.hpp"

using namespace hclab;
using namespace hclab::criteria;
using namespace hclab::testing;
using operators::Tail;

namespace {

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

RationalVector random_rational_vector(std::mt19937_64& rng, std::size_t d) {
  RationalVector v(d);
  for (auto& q : v) q = random_rational(rng);
  return v;
}

}  // namespace

TEST_CASE("Salas hypercyclic verdicts", "[criteria]") {
  CHECK(salas_hypercyclic(WeightSequence::genshi_hypercyclic(2.0, 3), 8, 256).verdict == SalasVerdict::Satisfied);
  CHECK(salas_hypercyclic(WeightSequence::constant(1.0), 8, 256).verdict == SalasVerdict::ViolatedAtHorizon);
  const auto two = salas_hypercyclic(WeightSequence::constant(2.0), 8, 64);
  CHECK(two.verdict == SalasVerdict::ViolatedAtHorizon);
  // Closed form: the trace at (m, n) is 2^n.
  for (std::size_t m = 0; m < two.log_traces.size(); ++m) {
    REQUIRE(two.log_traces[m].size() == 64);
    for (long n = 1; n <= 64; ++n) CHECK(two.log_traces[m][n - 1] == Catch::Approx(n * std::log(2.0)));
  }
  const auto dead = salas_hypercyclic(WeightSequence({1.0, 0.0, 1.0}, Tail::constant(1.0, 1.0)), 8, 64);
  CHECK(dead.verdict == SalasVerdict::ViolatedAtHorizon);
  CHECK(dead.reason == "range not dense");
  CHECK_THROWS_AS(salas_hypercyclic(WeightSequence::constant(1.0), 4, 64), InputError);
}

TEST_CASE("Salas supercyclic verdicts", "[criteria]") {
  CHECK(salas_supercyclic(WeightSequence::genshi_supercyclic(2.0, 3), 8, 256).verdict == SalasVerdict::Satisfied);
  CHECK(salas_supercyclic(WeightSequence::constant(1.0), 8, 256).verdict == SalasVerdict::ViolatedAtHorizon);
  const auto sym = salas_supercyclic(WeightSequence::symmetric_decay(2.0, 4), 8, 128);
  CHECK(sym.verdict == SalasVerdict::ViolatedAtHorizon);
  // At m = 0 the ratio is 2^{-n(n-1)/2} / 2^{-n(n+1)/2} = 2^n.
  for (long n = 1; n <= 128; ++n) CHECK(sym.log_traces[0][n - 1] == Catch::Approx(n * std::log(2.0)));
}

TEST_CASE("Salas verdicts depend only on moduli", "[criteria][property]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const long N = 2 + static_cast<long>(rng() % 6);
    std::vector<Complex> window(static_cast<std::size_t>(2 * N + 1));
    for (auto& w : window) w = std::polar(uniform(rng, 0.3, 3.0), uniform(rng, 0.0, 6.2));
    const Complex plus = uniform(rng, 0.5, 3.0), minus = uniform(rng, 0.3, 2.0);
    const WeightSequence w(window, Tail::constant(plus, minus));
    std::vector<Complex> twisted = window;
    for (auto& t : twisted) t *= std::polar(1.0, uniform(rng, 0.0, 6.2));
    const WeightSequence rot(twisted, Tail::constant(plus * std::polar(1.0, 1.0), minus * std::polar(1.0, -2.0)));
    for (const auto& variant : {w.moduli(), rot}) {
      const auto a = salas_hypercyclic(w, 8, 128), b = salas_hypercyclic(variant, 8, 128);
      CHECK(a.verdict == b.verdict);
      for (std::size_t m = 0; m < a.log_min.size(); ++m) CHECK(a.log_min[m] == Catch::Approx(b.log_min[m]).margin(1e-12));
      CHECK(salas_supercyclic(w, 8, 128).verdict == salas_supercyclic(variant, 8, 128).verdict);
    }
  }
}

TEST_CASE("ker_dagger examples", "[criteria]") {
  const ComplexMatrix s4 = linalg::backward_shift(4);
  CHECK(linalg::same_subspace(ker_dagger(s4), linalg::Subspace::coordinate(4, {0, 1}), 1e-10));
  ComplexMatrix inv = ComplexMatrix::Identity(3, 3);
  inv(0, 2) = 2.0;
  CHECK(ker_dagger(inv).dim() == 0);
  ComplexMatrix tail(2, 2);
  tail << 2.0, 1.0, 0.0, 3.0;
  CHECK(linalg::same_subspace(ker_dagger(block_diag(s4, tail)), linalg::Subspace::coordinate(6, {0, 1}), 1e-10));
}

TEST_CASE("lambda_T examples", "[criteria]") {
  const ComplexMatrix s4 = linalg::backward_shift(4);
  const ComplexMatrix u = ComplexMatrix::Identity(4, 4) + s4;
  CHECK(linalg::same_subspace(lambda_T(u), linalg::Subspace::coordinate(4, {0, 1}), 1e-8));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = 3.0;
  CHECK(lambda_T(d).dim() == 0);
  ComplexMatrix rot = ComplexMatrix::Zero(3, 3);
  for (Index i = 0; i < 3; ++i) rot(i, i) = std::polar(1.0, 0.7 * (i + 1));
  CHECK(lambda_T(rot).dim() == 0);
  const auto full = lambda_T_full(u);
  CHECK(full.unimodular.size() == 1);
}

TEST_CASE("ker_dagger of T lies in Lambda(I + T)", "[criteria][property]") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 15; ++trial) {
    const Index d = 2 + static_cast<Index>(rng() % 6);
    // Jordan structure with integer-conjugation keeps the eigenvalue cluster tight.
    ComplexMatrix n = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i + 1 < d; ++i) n(i, i + 1) = (rng() % 3 == 0) ? 0.0 : 1.0;
    ComplexMatrix p = ComplexMatrix::Identity(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = i + 1; j < d; ++j) p(i, j) = static_cast<double>(static_cast<int>(rng() % 3) - 1);
    const ComplexMatrix t = p * n * p.inverse();
    const auto kd = ker_dagger(t);
    const auto lam = lambda_T(ComplexMatrix::Identity(d, d) + t);
    CHECK(lam.contains(kd, 1e-6));
  }
}

TEST_CASE("EBS tuple kernel", "[criteria]") {
  const ComplexMatrix s3 = linalg::backward_shift(3);
  CHECK(linalg::same_subspace(ebs_tuple_kernel({s3}), ker_dagger(s3), 1e-10));
  const ComplexMatrix s2 = linalg::backward_shift(2);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const auto k2 = ebs_tuple_kernel({linalg::kron(s2, id), linalg::kron(id, s2)});
  CHECK(linalg::same_subspace(k2, linalg::Subspace::coordinate(4, {0}), 1e-10));
  CHECK(ebs_tuple_kernel({ComplexMatrix::Zero(3, 3), ComplexMatrix::Zero(3, 3)}).dim() == 0);
  ComplexMatrix other = ComplexMatrix::Zero(3, 3);
  other(1, 0) = 1.0;
  CHECK_THROWS_AS(ebs_tuple_kernel({s3, other}), PreconditionError);
}

TEST_CASE("EBS perturbation from the zero element", "[criteria]") {
  std::mt19937_64 rng(43);
  operators::RationalTensorElement xi{{}, {}, RationalMatrix::identity(4)};
  const RationalVector x1 = random_rational_vector(rng, 4), x2 = random_rational_vector(rng, 4);
  const mpq_class s(3, 2);
  const auto res = ebs_perturb(xi, x1, x2, s);
  CHECK(res.n == 1);
  const auto ts = operators::tensor_op(res.xi_s).T;
  CHECK(ts * res.u[0] == linalg::scale(x1, s));
  CHECK(ts * res.u[1] == linalg::scale(x2, s));
  CHECK(linalg::is_zero(ts * x1));
  CHECK(linalg::is_zero(ts * x2));
  CHECK(res.nilpotent_2n);
}

TEST_CASE("EBS perturbation identities hold exactly", "[criteria][property]") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const unsigned n = 1 + static_cast<unsigned>(seed % 3);
    const std::size_t dim = seed % 2 ? 10 : 3 * n + 1;
    const auto sc = random_ebs_scenario(dim, n, seed);
    for (const mpq_class& s : {mpq_class(1, 10), mpq_class(1), mpq_class(10)}) {
      const auto res = ebs_perturb(sc.xi, sc.x1, sc.x2, s);
      REQUIRE(res.n == n);
      const RationalMatrix t = operators::tensor_op(res.xi_s).T;
      mpq_class sn = 1;
      for (unsigned i = 0; i < n; ++i) sn *= s;
      const RationalMatrix tn = t.power(n);
      CHECK(t.power(2 * n).is_zero());
      CHECK(tn * res.u[n - 1] == linalg::scale(sc.x1, sn));
      CHECK(tn * res.u[2 * n - 1] == linalg::scale(sc.x2, sn));
      CHECK(linalg::is_zero(tn * sc.x1));
      CHECK(linalg::is_zero(tn * sc.x2));
      CHECK((res.nilpotent_2n && res.chain_x1 && res.chain_x2 && res.x_in_kernel));
      // Biorthogonality b(u_k, f_j) = delta_kj with b the identity pairing.
      for (std::size_t k = 0; k < res.u.size(); ++k)
        for (std::size_t j = 0; j < res.f.size(); ++j) {
          mpq_class dot = 0;
          for (std::size_t i = 0; i < dim; ++i) dot += res.u[k][i] * res.f[j][i];
          CHECK(dot == (k == j ? 1 : 0));
        }
    }
  }
  CHECK_THROWS_AS(random_ebs_scenario(6, 2, 1), DimensionError);
}

TEST_CASE("nilpotency index", "[criteria]") {
  RationalMatrix s(4, 4);
  for (std::size_t i = 0; i + 1 < 4; ++i) s(i, i + 1) = 1;
  CHECK(nilpotency_index(s) == 4U);
  CHECK_FALSE(nilpotency_index(RationalMatrix::identity(3)).has_value());
  CHECK(nilpotency_index(RationalMatrix::zero(2, 2)) == 1U);
}

TEST_CASE("region verdicts for the built-in regions", "[criteria][property]") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto u_shift = gs_region_verdict(region_U(), RegionTransform::Shift1, 10000, seed);
    CHECK(u_shift.verdict == RegionVerdict::IntersectsCircle);
    CHECK(u_shift.exact);
    CHECK(gs_region_verdict(region_U(), RegionTransform::Exponential, 10000, seed).verdict == RegionVerdict::InsideDisk);
    CHECK(gs_region_verdict(region_V(), RegionTransform::Shift1, 10000, seed).verdict ==
          RegionVerdict::OutsideClosedDisk);
    const auto v_exp = gs_region_verdict(region_V(), RegionTransform::Exponential, 10000, seed);
    CHECK(v_exp.verdict == RegionVerdict::IntersectsCircle);
    for (const Complex& wtn : v_exp.witnesses) {
      CHECK(region_V().contains(wtn));
      CHECK(std::abs(std::abs(std::exp(wtn)) - 1.0) <= 1e-12);
    }
  }
  const Complex witness(-0.2, 0.6);
  CHECK(region_U().contains(witness));
  CHECK(std::abs(1.0 + witness) == Catch::Approx(1.0));
  CHECK_THROWS_AS(gs_region_verdict(region_U(), RegionTransform::Shift1, 100, 1), PreconditionError);
}

TEST_CASE("region membership matches the defining inequalities", "[criteria][property]") {
  std::mt19937_64 rng(44);
  const auto u = region_U();
  const auto v = region_V();
  for (int i = 0; i < 2000; ++i) {
    const double a = uniform(rng, -1.2, 1.2), b = uniform(rng, -1.2, 1.2);
    const bool in_u = a > -1.0 && a < 0.0 && std::abs(b) < 1.0 + a;
    const bool in_v = b > 0.0 && b < 1.0 && std::abs(a) < 1.0 - std::sqrt(1.0 - b * b);
    CHECK(u.contains({a, b}) == in_u);
    CHECK(v.contains({a, b}) == in_v);
  }
  CHECK(region_disk({0.0, 0.0}, 1.0).contains({0.5, 0.5}));
  CHECK_FALSE(region_disk({0.0, 0.0}, 1.0).contains({1.0, 0.0}));
}

TEST_CASE("symmetry obstruction", "[criteria]") {
  const auto sym = WeightSequence::symmetric_decay(2.0, 60);
  const auto rep = symmetry_obstruction(sym, {1.0, 1.0}, 100, 50, 7);
  CHECK(rep.applicable);
  CHECK(rep.max_residual <= 1e-10);
  CHECK(rep.flip_residual <= 1e-12);
  CHECK(symmetry_obstruction(sym, {0.0, 1.0}, 50, 50, 8).max_residual <= 1e-10);

  std::vector<Complex> window = {0.5, 1.0, 1.0, 2.0, 0.5};
  const auto bad = symmetry_obstruction(WeightSequence(window, Tail::zero()), {1.0, 1.0}, 10, 5, 1);
  CHECK_FALSE(bad.applicable);
  CHECK(bad.first_violation == 1L);
}

TEST_CASE("b-symmetry checks", "[criteria]") {
  const Index d = 9;
  ComplexMatrix shift = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i + 1 < d; ++i) shift(i, i + 1) = 1.0;
  ComplexMatrix flip = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) flip(i, d - 1 - i) = 1.0;
  std::mt19937_64 rng(45);
  const ComplexVector x = random_vector(rng, d), y = random_vector(rng, d);
  const auto rep = b_symmetry_check(shift, flip, x, y, 20, 1);
  CHECK(rep.symmetric);
  CHECK(rep.symmetry_residual <= 1e-12);
  CHECK(rep.annihilator_residual <= 1e-9);

  ComplexMatrix diag = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) diag(i, i) = random_complex(rng);
  CHECK(b_symmetry_check(diag, ComplexMatrix::Identity(d, d), x, y, 20, 2).symmetric);

  const ComplexMatrix generic_t = random_matrix(rng, d, d);
  const auto generic = b_symmetry_check(generic_t, ComplexMatrix::Identity(d, d), x, y, 20, 3);
  CHECK_FALSE(generic.symmetric);
  REQUIRE(generic.witness.has_value());
  const auto& [wu, wv] = *generic.witness;
  const Complex lhs = (generic_t * wu).dot(wv.conjugate());
  const Complex rhs = wu.dot((generic_t * wv).conjugate());
  CHECK(std::abs(lhs - rhs) > 1e-6 * wu.norm() * wv.norm());
}

TEST_CASE("the annihilating functional vanishes on symmetric orbits", "[criteria][property]") {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 3 + static_cast<Index>(rng() % 6);
    // T = B^{-1} M^t B with symmetric B is b-symmetric for b(u, v) = u^t B v.
    ComplexMatrix b = random_matrix(rng, d, d);
    b = (b + b.transpose()).eval() + 4.0 * ComplexMatrix::Identity(d, d);
    const ComplexMatrix m = random_matrix(rng, d, d);
    const ComplexMatrix t = b.inverse() * m.transpose() * b;
    const ComplexMatrix sym_t = 0.5 * (t + b.inverse() * t.transpose() * b);
    const ComplexVector x = random_vector(rng, d), y = random_vector(rng, d);
    const auto rep = b_symmetry_check(sym_t, b, x, y, 10, static_cast<std::uint64_t>(trial));
    CHECK(rep.symmetric);
    CHECK(rep.annihilator_residual <= 1e-9);
  }
}
