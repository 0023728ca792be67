#include "doctest.h"

#include "wcat/arith.hpp"
#include "wcat/error.hpp"

using namespace wcat;

namespace {

ValueTable table(std::initializer_list<long> v, std::uint64_t base = 0) {
  std::vector<Integer> values;
  for (long x : v) values.emplace_back(x);
  return ValueTable(base, values);
}

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("valuation") {
  CHECK(valuation(2, Integer(12)) == 2);
  CHECK(valuation(7, Integer(49)) == 2);
  CHECK(valuation(2, Integer(5)) == 0);
  CHECK(valuation(3, Integer(-54)) == 3);
  CHECK(valuation(2, Integer("1267650600228229401496703205376")) == 100);
  CHECK_THROWS_WITH_AS(valuation(2, Integer(0)), "valuation undefined at zero", DomainError);
  CHECK_THROWS_AS(valuation(1, Integer(4)), DomainError);
}

TEST_CASE("digit sums") {
  CHECK(digit_sum(2, std::uint64_t{4}) == 1);
  CHECK(digit_sum(2, std::uint64_t{15}) == 4);
  CHECK(digit_sum(5, std::uint64_t{35}) == 3);
  CHECK(digit_sum(2, std::uint64_t{0}) == 0);
  CHECK(digit_sum(3, Integer(2 * 13 + 1)) == 1);
  CHECK_THROWS_AS(digit_sum(1, std::uint64_t{3}), DomainError);
}

TEST_CASE("finite differences on windows") {
  const auto b = table({1, 9, 25, 49});
  CHECK(finite_difference(b, 1).values() == ints({8, 16, 24}));
  CHECK(finite_difference(b, 0) == b);
  CHECK(finite_difference(b, 3).values() == ints({0}));
  CHECK(finite_difference(b, 2).base_point() == 0);
  CHECK_THROWS_AS(finite_difference(b, 4), DomainError);
  try {
    finite_difference(b, 4);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find('5') != std::string::npos);
  }
}

TEST_CASE("shift is window bookkeeping") {
  const auto f = table({3, 1, 4, 1, 5}, 10);
  const auto s = f.shifted(2);
  CHECK(s.base_point() == 12);
  CHECK(s.values() == ints({4, 1, 5}));
  CHECK(s.at(13) == 1);
  CHECK_THROWS(f.at(9));
  CHECK_THROWS(ValueTable(0, {}));
}

TEST_CASE("Newton coefficients") {
  CHECK(newton_coefficients(table({1, 9, 25})) == ints({1, 8, 8}));
  CHECK(newton_coefficients(table({7, 7, 7})) == ints({7, 0, 0}));
  CHECK(newton_coefficients(table({0, 1, 2, 3})) == ints({0, 1, 0, 0}));
  CHECK_THROWS_AS(newton_coefficients(table({1, 2}, 3)), DomainError);
}

TEST_CASE("Lucas binomials") {
  CHECK(binomial_mod_p(4, 2, 2) == 0);
  CHECK(binomial_mod_p(123, 0, 7) == 1);
  CHECK(binomial_mod_p(5, 2, 5) == 0);
  CHECK(binomial_mod_p(10, 3, 7) == 120 % 7);
  CHECK(binomial_mod_p(3, 5, 7) == 0);
  CHECK_THROWS_AS(binomial_mod_p(4, 2, 4), DomainError);
  for (unsigned n = 0; n < 40; ++n) {
    for (unsigned m = 0; m <= n; ++m) {
      Integer c;
      mpz_bin_uiui(c.get_mpz_t(), n, m);
      for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
        CHECK(binomial_mod_p(n, m, p) == mpz_fdiv_ui(c.get_mpz_t(), p));
      }
    }
  }
}

TEST_CASE("primality by trial division") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(is_prime(1000003));
}

TEST_CASE("multinomial") {
  const std::vector<unsigned> parts{2, 1, 1};
  CHECK(multinomial(parts) == 12);
  const std::vector<unsigned> none{};
  CHECK(multinomial(none) == 1);
}

TEST_CASE("modulus arithmetic") {
  const Modulus m(7);
  CHECK(m.reduce(Integer(-1)) == 6);
  CHECK(m.reduce(std::int64_t{-15}) == 6);
  CHECK(m.mul(6, 6) == 1);
  CHECK(m.inverse(3) == 5);
  CHECK_THROWS_AS(Modulus(9).inverse(3), DomainError);
  CHECK_THROWS_AS(Modulus(1), DomainError);
  const Modulus big((std::uint64_t{1} << 62) - 57);
  CHECK(big.mul(big.value() - 1, big.value() - 1) == 1);
}

TEST_CASE("integer polynomials") {
  const auto p = IntPolynomial::from_ints({1, 4, 4, 0, 0});
  CHECK(p.degree() == 2);
  CHECK(p.evaluate(Integer(3)) == 49);
  CHECK(p.evaluate_mod(3, Modulus(7)) == 0);
  CHECK(IntPolynomial().degree() == -1);
  CHECK(IntPolynomial::from_ints({0, 0}).is_zero());
  CHECK((p - p).is_zero());
  CHECK(IntPolynomial::from_ints({1, 1}) * IntPolynomial::from_ints({1, -1}) == IntPolynomial::from_ints({1, 0, -1}));
  CHECK(IntPolynomial::from_ints({1, -34}).reduced(Modulus(7)) == std::vector<std::uint64_t>{1, 1});
  CHECK(IntPolynomial::from_ints({1, 7}).reduced(Modulus(7)) == std::vector<std::uint64_t>{1});
}

TEST_CASE("polynomial from Newton coefficients") {
  // 1 + 8x + 8 C(x,2) = 4x^2 + 4x + 1
  const auto p = polynomial_from_newton(ints({1, 8, 8}));
  CHECK(p == IntPolynomial::from_ints({1, 4, 4}));
  CHECK_THROWS_AS(polynomial_from_newton(ints({0, 0, 1})), DomainError);
}

TEST_CASE("series division") {
  const auto s = series_divide(IntPolynomial::from_ints({1, 1}), IntPolynomial::from_ints({1, 0, 4}), 7, 6);
  CHECK(s.coefficients == std::vector<std::uint64_t>{1, 1, 3, 3, 2, 2});
  CHECK(series_divide(IntPolynomial::from_ints({1}), IntPolynomial::from_ints({1}), 5, 4).coefficients ==
        std::vector<std::uint64_t>{1, 0, 0, 0});
  CHECK(series_divide(IntPolynomial::from_ints({1}), IntPolynomial::from_ints({1, -1}), 5, 4).coefficients ==
        std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK_THROWS_WITH_AS(
      series_divide(IntPolynomial::from_ints({1}), IntPolynomial::from_ints({7, 1}), 7, 4),
      doctest::Contains("non-invertible constant term"), DomainError);
}

TEST_CASE("exact series division over Z") {
  // 1/(1 - x - x^2): Fibonacci
  const auto f = series_divide_exact(IntPolynomial::from_ints({1}), IntPolynomial::from_ints({1, -1, -1}), 10);
  CHECK(f == ints({1, 1, 2, 3, 5, 8, 13, 21, 34, 55}));
  CHECK_THROWS(series_divide_exact(IntPolynomial::from_ints({1}), IntPolynomial::from_ints({2, 1}), 3));
}
