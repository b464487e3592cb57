#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "elsos/augmentation.hpp"
#include "oracles.hpp"

using namespace elsos;
using heis::bar;

namespace {

using Elt = AlgebraElement<HeisenbergElt>;

Elt random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2), c(-3, 3);
  Elt a;
  for (int t = 0; t < 3; ++t) a.add_term({d(rng), d(rng), d(rng)}, Rational(c(rng)));
  return a;
}

GradedElement random_graded(std::mt19937_64& rng, int N) {
  std::uniform_int_distribution<int> e(0, 2), c(-3, 3);
  GradedElement a(N);
  for (int t = 0; t < 3; ++t) a.add({e(rng), e(rng), e(rng) / 2}, Rational(c(rng)));
  return a;
}

}  // namespace

TEST_CASE("commutation rule holds in the group ring", "[graded]") {
  const auto x = HeisenbergElt::x(), y = HeisenbergElt::y(), z = HeisenbergElt::z();
  const Elt lhs = bar(y) * bar(x);
  const Elt rhs = bar(x) * bar(y) + bar(z) - bar(z) * bar(x) - bar(z) * bar(y) + bar(z) * bar(y) * bar(x);
  CHECK(lhs == rhs);
}

TEST_CASE("graded products", "[graded]") {
  // yb xb at N = 4, expanded by hand from the commutation rule; zb yb xb is
  // degree 4 and survives as xb yb zb + zb^2
  GradedElement expect(4);
  expect.add({1, 1, 0}, 1);
  expect.add({0, 0, 1}, 1);
  expect.add({1, 0, 1}, -1);
  expect.add({0, 1, 1}, -1);
  expect.add({1, 1, 1}, 1);
  expect.add({0, 0, 2}, 1);
  CHECK(graded_word(4, "yx") == expect);

  GradedElement yyxx(4);
  yyxx.add({2, 2, 0}, 1);
  yyxx.add({1, 1, 1}, 4);
  yyxx.add({0, 0, 2}, 2);
  CHECK(graded_mul(graded_word(4, "yy"), graded_word(4, "xx")) == yyxx);

  GradedElement X(4);
  X.add({2, 0, 0}, -1);
  X.add({3, 0, 0}, -1);
  X.add({4, 0, 0}, -1);
  CHECK(to_graded(heis::X(), 4) == X);

  CHECK_THROWS_AS(graded_word(4, "xw"), std::invalid_argument);
  CHECK_THROWS_AS(GradedElement(11), std::invalid_argument);
  CHECK_THROWS_AS(graded_mul(GradedElement(4), GradedElement(5)), std::invalid_argument);
}

TEST_CASE("truncation drops high degrees", "[graded]") {
  CHECK(graded_word(3, "xxyy").is_zero());
  CHECK(graded_word(4, "zzx").is_zero());
  CHECK(graded_word(5, "zzx").lowest_degree() == 5);
}

TEST_CASE("to_graded is a ring homomorphism", "[graded][property]") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const auto a = random_element(rng), b = random_element(rng);
    REQUIRE(to_graded(a * b, 5) == graded_mul(to_graded(a, 5), to_graded(b, 5)));
    REQUIRE(to_graded(a + b, 5) == to_graded(a, 5) + to_graded(b, 5));
    REQUIRE(graded_star(to_graded(a, 5)) == to_graded(a.star(), 5));
  }
}

TEST_CASE("graded product is associative and star is an anti-involution", "[graded][property]") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    const auto a = random_graded(rng, 6), b = random_graded(rng, 6), c = random_graded(rng, 6);
    REQUIRE(graded_mul(graded_mul(a, b), c) == graded_mul(a, graded_mul(b, c)));
    REQUIRE(graded_star(graded_star(a)) == a);
    REQUIRE(graded_star(graded_mul(a, b)) == graded_mul(graded_star(b), graded_star(a)));
  }
}

TEST_CASE("graded dimensions", "[graded]") {
  for (int n = 0; n <= 10; ++n) {
    int count = 0;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) count += (i + j + 2 * k == n);
    REQUIRE(graded_dimension(n) == count);
    REQUIRE(graded_dimension_formula(n) == count);
    REQUIRE(static_cast<int>(monomials_of_degree(n).size()) == count);
  }
  CHECK(graded_dimension_formula(4) == 9);
}

TEST_CASE("the degree-four functional", "[graded]") {
  const auto r = phi_report();
  CHECK(r.delta_squared == 0);
  CHECK(r.box == 4);
  CHECK(r.z_square == 2);
  CHECK(r.self_adjoint);
  for (const auto& [R, v] : r.witness) CHECK(v == -1);
  // phi on hand-built degree-four elements
  CHECK(evaluate_phi(graded_word(4, "xxxx")) == 1);
  CHECK(evaluate_phi(graded_word(4, "zz")) == -2);
  CHECK(evaluate_phi(graded_word(4, "xxyy")) == -1);
  CHECK_THROWS_AS(evaluate_phi(GradedElement(3)), std::invalid_argument);
}

TEST_CASE("Gram matrix", "[graded]") {
  const auto g = gram_matrix_check();
  CHECK(g.matches);
  CHECK(g.psd);
  RealMatrix m(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = to_double(g.matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
  const auto ev = oracle::jacobi_eigenvalues(m);
  const double expect[] = {0, 1, 1, 2};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(ev[static_cast<std::size_t>(k)] - expect[k]) <= 1e-12);
}

TEST_CASE("rewriting chain", "[graded]") {
  for (const auto& step : intermediate_chain()) {
    INFO(step.lhs << " = " << step.rhs);
    CHECK(step.holds());
  }
}
