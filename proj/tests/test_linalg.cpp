#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace hclab;
using namespace hclab::testing;
using linalg::Subspace;

TEST_CASE("kernel and image of the backward shift", "[linalg]") {
  const auto ki = linalg::kernel_and_image(linalg::backward_shift(4));
  CHECK(ki.kernel.dim() == 1);
  CHECK(ki.image.dim() == 3);
  CHECK(linalg::same_subspace(ki.kernel, Subspace::coordinate(4, {0}), 1e-12));
  CHECK(linalg::same_subspace(ki.image, Subspace::coordinate(4, {0, 1, 2}), 1e-12));
}

TEST_CASE("kernel and image of identity and zero", "[linalg]") {
  const auto id = linalg::kernel_and_image(ComplexMatrix::Identity(5, 5));
  CHECK(id.kernel.dim() == 0);
  CHECK(id.image.dim() == 5);
  const auto zero = linalg::kernel_and_image(ComplexMatrix::Zero(3, 3));
  CHECK(zero.kernel.dim() == 3);
  CHECK(zero.image.dim() == 0);
}

TEST_CASE("kernel_and_image rejects non-finite entries", "[linalg]") {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(linalg::kernel_and_image(a), InputError);
}

TEST_CASE("rank-nullity on random low-rank products", "[linalg][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index rows = 2 + static_cast<Index>(rng() % 7);
    const Index cols = 2 + static_cast<Index>(rng() % 7);
    const Index r = static_cast<Index>(rng() % static_cast<std::uint64_t>(std::min(rows, cols) + 1));
    const ComplexMatrix a = random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
    const auto ki = linalg::kernel_and_image(a);
    REQUIRE(ki.kernel.dim() + ki.image.dim() == cols);
    CHECK(ki.image.dim() == r);
    if (ki.kernel.dim() > 0) CHECK((a * ki.kernel.basis()).norm() < 1e-10 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("intersect of coordinate planes", "[linalg]") {
  const Subspace u = Subspace::coordinate(3, {0, 1});
  const Subspace v = Subspace::coordinate(3, {1, 2});
  CHECK(linalg::same_subspace(linalg::intersect(u, v), Subspace::coordinate(3, {1}), 1e-12));
  CHECK(linalg::same_subspace(linalg::intersect(u, u), u, 1e-12));
  CHECK_THROWS_AS(linalg::intersect(u, Subspace::coordinate(4, {0})), InputError);
}

TEST_CASE("intersect obeys the dimension formula", "[linalg][property]") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 3 + static_cast<Index>(rng() % 5);
    const Index du = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(d));
    const Index dv = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(d));
    // A shared block makes the intersection nontrivial on some trials.
    const Index shared = static_cast<Index>(rng() % static_cast<std::uint64_t>(std::min(du, dv) + 1));
    const ComplexMatrix common = random_matrix(rng, d, shared);
    ComplexMatrix a(d, du), b(d, dv);
    a << common, random_matrix(rng, d, du - shared);
    b << common, random_matrix(rng, d, dv - shared);
    const Subspace u = Subspace::from_spanning(a);
    const Subspace v = Subspace::from_spanning(b);
    const Subspace w = linalg::intersect(u, v);
    CHECK(w.dim() == u.dim() + v.dim() - u.sum(v).dim());
    CHECK(u.contains(w, 1e-9));
    CHECK(v.contains(w, 1e-9));
    CHECK(linalg::same_subspace(w, linalg::intersect(v, u), 1e-9));
  }
}

TEST_CASE("random subspaces in general position meet trivially", "[linalg]") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace u = Subspace::from_spanning(random_matrix(rng, 5, 3));
    const Subspace v = Subspace::from_spanning(random_matrix(rng, 5, 2));
    CHECK(linalg::intersect(u, v).dim() == 0);
  }
}

TEST_CASE("subspace projection and distance", "[linalg]") {
  std::mt19937_64 rng(14);
  const Subspace u = Subspace::from_spanning(random_matrix(rng, 6, 3));
  const ComplexVector x = random_vector(rng, 6);
  const ComplexVector p = u.project(x);
  CHECK((u.project(p) - p).norm() < 1e-12);
  CHECK(u.distance(x) == Catch::Approx((x - p).norm()).margin(1e-12));
  CHECK(u.distance(p) < 1e-12);
  ComplexMatrix dependent(6, 3);
  dependent << u.basis().col(0), u.basis().col(1), u.basis().col(0) + 2.0 * u.basis().col(1);
  CHECK(Subspace::from_spanning(dependent).dim() == 2);
}

TEST_CASE("exp_nilpotent closed forms", "[linalg]") {
  const Complex z(0.3, -2.0);
  const ComplexMatrix e2 = linalg::exp_nilpotent(linalg::backward_shift(2), z);
  CHECK(e2(0, 0) == Complex(1.0));
  CHECK(e2(0, 1) == z);
  CHECK(e2(1, 0) == Complex(0.0));
  CHECK(e2(1, 1) == Complex(1.0));
  CHECK(linalg::exp_nilpotent(linalg::backward_shift(5), 0.0) == ComplexMatrix::Identity(5, 5));
  const ComplexMatrix e3 = linalg::exp_nilpotent(linalg::backward_shift(3), z);
  CHECK(std::abs(e3(0, 2) - z * z / 2.0) < 1e-15);
  CHECK_THROWS_AS(linalg::exp_nilpotent(ComplexMatrix::Identity(3, 3), 1.0), DomainError);
}

TEST_CASE("exp_nilpotent group law and inverse", "[linalg][property]") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + static_cast<Index>(rng() % 11);
    const ComplexMatrix s = linalg::backward_shift(d);
    const Complex z = random_complex(rng, 8.0), w = random_complex(rng, 8.0);
    const ComplexMatrix lhs = linalg::exp_nilpotent(s, z) * linalg::exp_nilpotent(s, w);
    const ComplexMatrix rhs = linalg::exp_nilpotent(s, z + w);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    const ComplexMatrix id = linalg::exp_nilpotent(s, z) * linalg::exp_nilpotent(s, -z);
    CHECK((id - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12 * std::pow(8.0 * std::sqrt(2.0), d - 1));
  }
}

TEST_CASE("det_exact small cases", "[linalg]") {
  CHECK(linalg::det_exact(RationalMatrix{{1}}) == 1);
  CHECK(linalg::det_exact(RationalMatrix{{1, mpq_class(1, 2)}, {mpq_class(1, 2), mpq_class(1, 6)}}) == mpq_class(-1, 12));
}

TEST_CASE("det_exact matches the permutation expansion", "[linalg][property]") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const RationalMatrix a = random_rational_matrix(rng, n, n);
    CHECK(linalg::det_exact(a) == leibniz_det(a));
  }
}

TEST_CASE("det_exact is multiplicative and matches floating determinants", "[linalg][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalMatrix a = random_rational_matrix(rng, 5, 5);
    const RationalMatrix b = random_rational_matrix(rng, 5, 5);
    CHECK(linalg::det_exact(a * b) == linalg::det_exact(a) * linalg::det_exact(b));
    const RationalMatrix c = random_rational_matrix(rng, 6, 6);
    const double exact = linalg::det_exact(c).get_d();
    const double floating = c.to_complex().determinant().real();
    CHECK(std::abs(floating - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("rational matrix inverse, rank and kernel", "[linalg]") {
  std::mt19937_64 rng(18);
  const RationalMatrix a = random_rational_matrix(rng, 4, 4);
  if (linalg::det_exact(a) != 0) CHECK(a * a.inverse() == RationalMatrix::identity(4));
  const RationalMatrix low = random_rational_matrix(rng, 5, 2) * random_rational_matrix(rng, 2, 5);
  CHECK(low.rank() <= 2);
  for (const auto& k : low.kernel_basis()) CHECK(linalg::is_zero(low * k));
  CHECK(low.rank() + low.kernel_basis().size() == 5);
  CHECK_THROWS_AS(RationalMatrix::zero(2, 2).inverse(), DomainError);
}

TEST_CASE("eigenvalues of small matrices", "[linalg]") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 0.5;
  auto ev = linalg::eigenvalues(d);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(ev[0] - 0.5) < 1e-12);
  CHECK(std::abs(ev[1] - 2.0) < 1e-12);

  const ComplexMatrix u = ComplexMatrix::Identity(4, 4) + linalg::backward_shift(4);
  const auto clusters = linalg::cluster_eigenvalues(linalg::eigenvalues(u), 2.0);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].multiplicity == 4);
  CHECK(std::abs(clusters[0].center - 1.0) < 1e-6);

  ComplexMatrix companion(2, 2);
  companion << 0.0, 1.0, 1.0, 0.0;
  auto roots = linalg::eigenvalues(companion);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] + 1.0) < 1e-12);
  CHECK(std::abs(roots[1] - 1.0) < 1e-12);
  CHECK_THROWS_AS(linalg::eigenvalues(ComplexMatrix::Identity(65, 65)), DimensionError);
}

TEST_CASE("eigenvalue residuals are small", "[linalg][property]") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + static_cast<Index>(rng() % 10);
    const ComplexMatrix a = random_matrix(rng, d, d);
    const auto ev = linalg::eigenvalues(a);
    REQUIRE(static_cast<Index>(ev.size()) == d);
    for (const Complex& l : ev) CHECK(linalg::eigen_residual(a, l) < 1e-10);
  }
}

TEST_CASE("polynomial division and gcd", "[linalg][property]") {
  using linalg::Polynomial;
  std::mt19937_64 rng(20);
  auto poly = [&rng](int deg) {
    std::vector<mpq_class> c(static_cast<std::size_t>(deg) + 1);
    for (auto& q : c) q = random_rational(rng);
    c.back() = 1;
    return Polynomial(c);
  };
  for (int trial = 0; trial < 40; ++trial) {
    const Polynomial a = poly(static_cast<int>(rng() % 6));
    const Polynomial b = poly(1 + static_cast<int>(rng() % 3));
    const auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    const Polynomial common = poly(1);
    const Polynomial g = linalg::gcd(a * common, b * common);
    CHECK(g.leading() == 1);
    CHECK((a * common).divmod(g).second.is_zero());
    CHECK((b * common).divmod(g).second.is_zero());
    CHECK(g.degree() >= 1);
  }
  CHECK_THROWS_AS(Polynomial::z().divmod(Polynomial()), DomainError);
  CHECK(Polynomial(std::vector<mpq_class>{1, 0, 3}).derivative() == Polynomial(std::vector<mpq_class>{0, 6}));
  CHECK(Polynomial(std::vector<mpq_class>{-1, 0, 1}).to_string() == "z^2 - 1");
}
