#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "elsos/angle.hpp"
#include "elsos/group_algebra.hpp"
#include "elsos/groups.hpp"
#include "elsos/linalg.hpp"
#include "elsos/rational.hpp"
#include "elsos/rotation_rep.hpp"
#include "oracles.hpp"

using namespace elsos;
using Catch::Matchers::WithinAbs;

TEST_CASE("rational helpers", "[rational]") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 5) == 0);
  // generalized binomial: binom(-1, k) = (-1)^k
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(-2, 2) == 3);
  CHECK(make_rational(6, -4) == make_rational(-3, 2));
  CHECK(to_string(make_rational(2, 6)) == "1/3");
}

TEST_CASE("Heisenberg law agrees with integer matrices", "[groups]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 500; ++t) {
    const HeisenbergElt g{d(rng), d(rng), d(rng)}, h{d(rng), d(rng), d(rng)};
    const auto gh = g * h;
    const auto m = oracle::mul(oracle::heis_matrix(g.a, g.b, g.c), oracle::heis_matrix(h.a, h.b, h.c));
    REQUIRE(m.m[0][1] == gh.a);
    REQUIRE(m.m[1][2] == gh.b);
    REQUIRE(m.m[0][2] == gh.c);
    REQUIRE(g * inverse(g) == HeisenbergElt::identity());
  }
}

TEST_CASE("Heisenberg group axioms", "[groups][property]") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 300; ++t) {
    const HeisenbergElt a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)}, c{d(rng), d(rng), d(rng)};
    REQUIRE((a * b) * c == a * (b * c));
    const Heisenberg3Elt u{{d(rng), d(rng), d(rng)}, {d(rng), d(rng), d(rng)}, d(rng)};
    const Heisenberg3Elt v{{d(rng), d(rng), d(rng)}, {d(rng), d(rng), d(rng)}, d(rng)};
    const Heisenberg3Elt w{{d(rng), d(rng), d(rng)}, {d(rng), d(rng), d(rng)}, d(rng)};
    REQUIRE((u * v) * w == u * (v * w));
    REQUIRE(u * inverse(u) == Heisenberg3Elt::identity());
  }
  // [x, y] = z
  const auto x = HeisenbergElt::x(), y = HeisenbergElt::y();
  CHECK(x * y * inverse(x) * inverse(y) == HeisenbergElt::z());
}

TEST_CASE("finite matrices", "[groups]") {
  const auto e12 = FiniteMatrixElt::elementary(3, 5, 1, 2, 3);
  CHECK(e12.at(1, 2) == 3);
  CHECK(e12.determinant() == 1);
  CHECK(e12 * inverse(e12) == FiniteMatrixElt::identity(3, 5));
  CHECK_THROWS_AS(FiniteMatrixElt::elementary(3, 5, 2, 2, 1), std::invalid_argument);
  // [e_12(1), e_23(1)] = e_13(1)
  const auto a = FiniteMatrixElt::elementary(3, 7, 1, 2, 1);
  const auto b = FiniteMatrixElt::elementary(3, 7, 2, 3, 1);
  CHECK(a * b * inverse(a) * inverse(b) == FiniteMatrixElt::elementary(3, 7, 1, 3, 1));
  CHECK(mod(-3, 5) == 2);
}

TEST_CASE("group algebra", "[algebra]") {
  using heis::bar;
  const auto x = HeisenbergElt::x(), y = HeisenbergElt::y();
  const auto X = heis::X();
  // X = 2 - x - x^-1
  CHECK(X.coefficient(HeisenbergElt::identity()) == 2);
  CHECK(X.coefficient(x) == -1);
  CHECK(X.coefficient(inverse(x)) == -1);
  CHECK(X.is_self_adjoint());
  CHECK(X.augmentation() == 0);

  const auto p = bar(x) * bar(y);
  CHECK((p * bar(x)).star() == bar(x).star() * p.star());

  const auto lap = heis::laplacian();
  CHECK(lap.coefficient(HeisenbergElt::identity()) == 4);
  CHECK(lap == X + heis::Y());

  const auto id = heis::sos_identity();
  CHECK(id.lhs == id.rhs);
  CHECK(id.squares.size() == 8);
}

TEST_CASE("group algebra associativity", "[algebra][property]") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-2, 2), c(-3, 3);
  auto random_elt = [&] {
    AlgebraElement<HeisenbergElt> a;
    for (int t = 0; t < 4; ++t) a.add_term({d(rng), d(rng), d(rng)}, Rational(c(rng)));
    return a;
  };
  for (int t = 0; t < 40; ++t) {
    const auto a = random_elt(), b = random_elt(), e = random_elt();
    REQUIRE((a * b) * e == a * (b * e));
    REQUIRE((a + b) * e == a * e + b * e);
    REQUIRE((a * b).star() == b.star() * a.star());
  }
}

TEST_CASE("Steinberg relations in SL_3(Z/q)", "[algebra]") {
  for (std::int64_t q : {2, 3, 5}) CHECK(steinberg_check(3, q).pass());
}

TEST_CASE("Farey grid", "[angle]") {
  const auto g = farey_grid(5, GridRange::Half);
  // 0/1 1/2 1/3 1/4 1/5 2/5
  REQUIRE(g.size() == 6);
  CHECK(g.front().str() == "0/1");
  CHECK(g.back().str() == "2/5");
  CHECK(farey_grid(5, GridRange::Full).size() == 10);
  // sum of Euler phi up to 60, plus 1 for 0/1
  std::int64_t total = 0;
  for (std::int64_t q = 1; q <= 60; ++q)
    for (std::int64_t p = 0; p < q; ++p) total += std::gcd(p, q) == 1;
  CHECK(static_cast<std::int64_t>(farey_grid(60, GridRange::Full).size()) == total);
  CHECK_THROWS_AS(RationalAngle(2, 4), std::invalid_argument);
  CHECK(RationalAngle::reduced(-1, 4).str() == "3/4");
  for (const auto& a : farey_grid_below(20, 0.1)) CHECK(a.theta() <= 0.1);
}

TEST_CASE("pi_theta is a representation", "[rotation]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-7, 7);
  for (const auto& angle : {RationalAngle(1, 3), RationalAngle(2, 7), RationalAngle(5, 12)}) {
    for (int t = 0; t < 50; ++t) {
      const HeisenbergElt g{d(rng), d(rng), d(rng)}, h{d(rng), d(rng), d(rng)};
      const ComplexMatrix lhs = pi_theta(angle, g * h);
      const ComplexMatrix rhs = pi_theta(angle, g) * pi_theta(angle, h);
      REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
    // z is the scalar e^{2 pi i theta}
    const ComplexMatrix z = pi_theta(angle, HeisenbergElt::z());
    const std::complex<double> w = std::polar(1.0, 2 * std::numbers::pi * angle.theta());
    CHECK((z - w * ComplexMatrix::Identity(angle.q(), angle.q())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("X, Y, Z at an angle", "[rotation]") {
  const RationalAngle a(2, 7);
  const RealMatrix X = x_theta(a).matrix();
  const ComplexMatrix fromX = evaluate(a, heis::X());
  CHECK((fromX - X.cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-12);
  const ComplexMatrix fromY = evaluate(a, heis::Y());
  CHECK((fromY - y_theta(a).matrix().cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-12);
  const ComplexMatrix fromZ = evaluate(a, heis::Z());
  CHECK((fromZ - z_theta(a) * ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
  // Y's spectrum is 2 - 2 cos(2 pi k / q)
  auto ev = oracle::jacobi_eigenvalues(y_theta(a).matrix());
  std::vector<double> expect;
  for (int k = 0; k < 7; ++k) expect.push_back(2 - 2 * std::cos(2 * std::numbers::pi * k / 7));
  std::sort(expect.begin(), expect.end());
  for (std::size_t k = 0; k < 7; ++k) CHECK_THAT(ev[k], WithinAbs(expect[k], 1e-12));
}

TEST_CASE("almost Mathieu at q = 2", "[rotation]") {
  // [[lambda, 2], [2, -lambda]] has eigenvalues +-sqrt(lambda^2 + 4)
  for (double lambda : {1.0, 2.0, 4.0}) {
    const auto H = almost_mathieu(RationalAngle(1, 2), lambda);
    CHECK_THAT(operator_norm(H), WithinAbs(std::sqrt(lambda * lambda + 4), 1e-12));
  }
  CHECK_THROWS_AS(almost_mathieu(RationalAngle(1, 2), 0.0), std::invalid_argument);
}

TEST_CASE("eigensolver against Jacobi", "[linalg]") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n01;
  for (int dim : {1, 2, 5, 17, 40}) {
    RealMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = n01(rng);
    a = (a + a.transpose()).eval();
    const auto ev = eigenvalues(RealOperator(a));
    const auto ref = oracle::jacobi_eigenvalues(a);
    for (int k = 0; k < dim; ++k) REQUIRE_THAT(ev(k), WithinAbs(ref[static_cast<std::size_t>(k)], 1e-10));
  }
  for (int dim : {2, 6, 13}) {
    ComplexMatrix h(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) h(i, j) = {n01(rng), n01(rng)};
    h = (h + h.adjoint()).eval();
    const auto ev = eigenvalues(ComplexOperator(h));
    const auto ref = oracle::hermitian_eigenvalues(h);
    for (int k = 0; k < dim; ++k) REQUIRE_THAT(ev(k), WithinAbs(ref[static_cast<std::size_t>(k)], 1e-10));
  }
}

TEST_CASE("eigenvalues are roots of the characteristic polynomial", "[linalg]") {
  const RationalAngle a(3, 8);
  const RealMatrix m = (x_theta(a) + y_theta(a)).matrix();
  const auto c = oracle::characteristic_polynomial(m);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(oracle::eval_poly(c, eigenvalues(RealOperator(m))(k))) < 1e-8);
}

TEST_CASE("Hermitian operator guards", "[linalg]") {
  RealMatrix bad(2, 2);
  bad << 1, 2, 3, 4;
  CHECK_THROWS_AS(RealOperator(bad), LinalgError);
  CHECK_THROWS_AS(RealOperator(RealMatrix(2, 3)), LinalgError);
  RealMatrix nan = RealMatrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(RealOperator(nan), LinalgError);
  CHECK_THROWS_AS(min_eigenvalue(RealOperator()), LinalgError);
}

TEST_CASE("kron", "[linalg]") {
  RealMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const RealMatrix k = kron<double>(a, b);
  CHECK(k(0, 1) == 1);
  CHECK(k(3, 2) == 4);
  CHECK(k(2, 1) == 3);
  // spectrum of a kron product is the product of spectra
  const auto A = x_theta(RationalAngle(1, 3)), B = y_theta(RationalAngle(1, 3));
  const auto ev = eigenvalues(kron(A, B));
  std::vector<double> expect;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) expect.push_back(eigenvalues(A)(i) * eigenvalues(B)(j));
  std::sort(expect.begin(), expect.end());
  for (int k2 = 0; k2 < 9; ++k2) CHECK_THAT(ev(k2), WithinAbs(expect[static_cast<std::size_t>(k2)], 1e-12));
  // the cap is on the output dimension and is inclusive; columns keep this cheap
  CHECK_THROWS_AS(kron<double>(RealMatrix::Ones(145, 1), RealMatrix::Ones(145, 1)), LinalgError);
  CHECK(kron<double>(RealMatrix::Ones(144, 1), RealMatrix::Ones(144, 1)).rows() == 20736);
}

TEST_CASE("spectral projection", "[linalg]") {
  const auto P = spectral_projection(y_theta(RationalAngle(1, 6)), 1.5, CutMode::AtMost);
  // eigenvalues of Y at q=6: 0, 1, 1, 3, 3, 4
  CHECK(P.rank == 3);
  const RealMatrix m = P.matrix.matrix();
  CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(spectral_projection(y_theta(RationalAngle(1, 6)), 1.0, CutMode::AtMost), LinalgError);
  const auto Q = spectral_projection(y_theta(RationalAngle(1, 6)), 1.5, CutMode::GreaterThan);
  CHECK(Q.rank == 3);
  CHECK((Q.matrix.matrix() + m - RealMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}
