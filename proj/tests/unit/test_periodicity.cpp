#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "wcat/catalan.hpp"
#include "wcat/error.hpp"
#include "wcat/periodicity.hpp"

using namespace wcat;

TEST_CASE("truncation index") {
  const auto morse = WeightFunction::morse();
  CHECK(truncation_index(morse, 7, 100) == 3u);
  CHECK(truncation_index(morse, 11, 100) == 5u);
  CHECK(truncation_index(morse, 9, 100) == 1u);
  CHECK(truncation_index(morse, 27, 100) == 4u);
  CHECK_FALSE(truncation_index(morse, 2, 100));
  CHECK_FALSE(truncation_index(WeightFunction::ones(), 3, 50));
  CHECK(truncation_index(WeightFunction::parse("table:2,3,5"), 6, 10) == 1u);
  CHECK_FALSE(truncation_index(WeightFunction::parse("table:2,3,5"), 7, 10));
}

TEST_CASE("continued fraction numerator and denominator") {
  const auto pq = continued_fraction_pq(WeightFunction::morse(), 2);
  CHECK(pq.numerator == IntPolynomial::from_ints({1, -34}));
  CHECK(pq.denominator == IntPolynomial::from_ints({1, -35, 25}));
  const auto pq3 = continued_fraction_pq(WeightFunction::morse(), 3);
  const Modulus seven(7);
  CHECK(pq3.numerator.reduced(seven) == std::vector<std::uint64_t>{1, 1});
  CHECK(pq3.denominator.reduced(seven) == std::vector<std::uint64_t>{1, 0, 4});
  // 2 and 3 give the same series mod 7
  CHECK(pq.numerator.reduced(seven) == pq3.numerator.reduced(seven));
  CHECK(pq.denominator.reduced(seven) == pq3.denominator.reduced(seven));
  const auto zero = continued_fraction_pq(WeightFunction::ones(), 0);
  CHECK(zero.numerator == IntPolynomial::from_ints({1}));
  CHECK(zero.denominator == IntPolynomial::from_ints({1, -1}));
}

TEST_CASE("P/Q expands to the height-capped path series") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto b = WeightFunction::polynomial(IntPolynomial({Integer(coef(rng)), Integer(coef(rng)), Integer(coef(rng))}));
    for (std::size_t k = 0; k <= 6; ++k) {
      const auto pq = continued_fraction_pq(b, k);
      const auto series = series_divide_exact(pq.numerator, pq.denominator, 20);
      // cut after b(k): paths reach at most height k + 1
      const auto capped = weighted_catalan_sequence(b, 19, k + 1);
      for (std::size_t n = 0; n < 20; ++n) CHECK(series[n] == capped[n]);
    }
  }
}

TEST_CASE("cycle detection on explicit sequences") {
  std::vector<std::uint64_t> seq;
  for (int i = 0; i < 5; ++i) seq.push_back(9);
  const std::uint64_t cycle[] = {1, 2, 3, 0, 0, 4};
  for (int i = 0; i < 60; ++i) seq.push_back(cycle[i % 6]);
  const auto r = detect_period(seq, 10, 4);
  CHECK(r.detected);
  CHECK(r.preperiod == 5);
  CHECK(r.period == 6);
  CHECK(r.window == seq.size());
  const auto naive = oracle::naive_period(seq);
  REQUIRE(naive);
  CHECK(naive->preperiod == r.preperiod);
  CHECK(naive->period == r.period);

  const std::vector<std::uint64_t> constant(20, 3);
  CHECK(detect_period(constant, 5, 2).period == 1);

  std::vector<std::uint64_t> growing;
  for (std::uint64_t i = 0; i < 50; ++i) growing.push_back(i);
  CHECK_FALSE(detect_period(growing, 100, 3).detected);
  CHECK_THROWS_AS(detect_period(growing, 100, 0), DomainError);
}

TEST_CASE("generator form pulls terms lazily") {
  std::uint64_t a = 0, b = 1;
  const auto fib = [&]() {
    const std::uint64_t out = a;
    const std::uint64_t next = (a + b) % 10;
    a = b;
    b = next;
    return out;
  };
  const auto r = detect_period(fib, 10, 200, 2);
  CHECK(r.detected);
  CHECK(r.period == 60);
  CHECK(r.preperiod == 0);
  CHECK(r.window <= 200);
}

TEST_CASE("purely periodic sufficient condition") {
  const auto pq = continued_fraction_pq(WeightFunction::morse(), 3);
  CHECK(pure_periodicity_sufficient(pq, 7).holds);
  PQPair bad{IntPolynomial::from_ints({1, 1, 1}), IntPolynomial::from_ints({1, 1}), 0};
  const auto v = pure_periodicity_sufficient(bad, 7);
  CHECK_FALSE(v.holds);
  CHECK_FALSE(v.reasons.empty());
  PQPair unit_lead{IntPolynomial::from_ints({1}), IntPolynomial::from_ints({1, 3}), 0};
  CHECK_FALSE(pure_periodicity_sufficient(unit_lead, 9).holds);
  CHECK(pure_periodicity_sufficient(unit_lead, 7).holds);
}

TEST_CASE("Morse numbers mod 7 and mod 11") {
  const auto seven = analyze_catalan_period(WeightFunction::morse(), 7);
  CHECK(seven.detected);
  CHECK(seven.certified);
  CHECK(seven.truncation == 3u);
  CHECK(seven.preperiod == 0);
  CHECK(seven.period == 12);
  CHECK(seven.window == kDefaultMaxTerms);

  const auto eleven = analyze_catalan_period(WeightFunction::morse(), 11);
  CHECK(eleven.detected);
  CHECK(eleven.period == 55);
}

TEST_CASE("capped generation equals the full sequence modulo m") {
  for (std::uint64_t m : {7u, 11u, 27u, 81u}) {
    const auto k = truncation_index(WeightFunction::morse(), m, 100);
    REQUIRE(k);
    CHECK(weighted_catalan_sequence_mod(WeightFunction::morse(), 300, m, *k) ==
          weighted_catalan_sequence_mod(WeightFunction::morse(), 300, m));
  }
}

TEST_CASE("uncertified moduli still report what the window shows") {
  const auto r = analyze_catalan_period(WeightFunction::ones(), 2, 400);
  CHECK_FALSE(r.certified);
  CHECK_FALSE(r.truncation);
  // Catalan numbers are odd exactly at n = 2^k - 1; the run of zeros after
  // 255 covers too little of the window to count as a cycle.
  CHECK_FALSE(r.detected);
  // and each later odd term at 2^k - 1 lands before the zero run gets long enough
  CHECK_FALSE(analyze_catalan_period(WeightFunction::ones(), 2, 3000).detected);
  CHECK_THROWS_AS(analyze_catalan_period(WeightFunction::ones(), 1), DomainError);
}
