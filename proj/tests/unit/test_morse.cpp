#include "doctest.h"

#include "wcat/catalan.hpp"
#include "wcat/error.hpp"
#include "wcat/morse.hpp"

using namespace wcat;

TEST_CASE("first Morse numbers") {
  CHECK(morse_number(0) == 1);
  CHECK(morse_number(1) == 1);
  CHECK(morse_number(2) == 10);
  CHECK(morse_number(3) == 325);
  CHECK(morse_number(4) == 22150);
  CHECK(morse_number(30) == weighted_catalan(WeightFunction::morse(), 30));
}

TEST_CASE("profile expressions") {
  CHECK(parse_profile_expression("cb") == ProfileExpression::weighted);
  CHECK(parse_profile_expression("cb-c") == ProfileExpression::minus_catalan);
  CHECK(parse_profile_expression("cb-1") == ProfileExpression::minus_one);
  CHECK(to_string(ProfileExpression::minus_catalan) == "cb-c");
  CHECK_THROWS_AS(parse_profile_expression("c"), ParseError);
}

TEST_CASE("2-adic valuations of Morse numbers") {
  const auto profile = valuation_profile(WeightFunction::morse(), ProfileExpression::weighted, 2, 1, 300,
                                         ProfileEngine::exact);
  CHECK(profile.exact);
  REQUIRE(profile.rows.size() == 300);
  for (const auto& row : profile.rows) {
    REQUIRE(row.valuation);
    CHECK(*row.valuation == digit_sum(2, static_cast<std::uint64_t>(row.n + 1)) - 1);
  }
}

TEST_CASE("modular engine agrees with exact values and marks vanishing rows") {
  const auto b = WeightFunction::morse();
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (auto expr : {ProfileExpression::weighted, ProfileExpression::minus_catalan, ProfileExpression::minus_one}) {
      const auto exact = valuation_profile(b, expr, p, 1, 120, ProfileEngine::exact);
      const auto mod = valuation_profile(b, expr, p, 1, 120, ProfileEngine::modular);
      CHECK_FALSE(mod.exact);
      CHECK(mod.precision > 0);
      for (std::size_t i = 0; i < exact.rows.size(); ++i) {
        const auto& e = exact.rows[i];
        const auto& m = mod.rows[i];
        CAPTURE(p);
        CAPTURE(e.n);
        if (m.lower_bound) {
          CHECK(m.bound == mod.precision);
          CHECK((!e.valuation || *e.valuation >= m.bound));
        } else {
          CHECK(m.valuation == e.valuation);
        }
      }
    }
  }
  // L_1 - 1 = 0 exactly
  const auto zero = valuation_profile(b, ProfileExpression::minus_one, 3, 1, 1, ProfileEngine::exact);
  CHECK_FALSE(zero.rows[0].valuation);
  CHECK_FALSE(zero.rows[0].lower_bound);
  CHECK_THROWS_AS(valuation_profile(b, ProfileExpression::weighted, 4, 1, 5), DomainError);
  CHECK_THROWS_AS(valuation_profile(b, ProfileExpression::weighted, 2, 5, 1), DomainError);
}

TEST_CASE("p-adic fitting on synthetic data") {
  std::vector<PadicDatum> data;
  for (std::size_t n = 1; n <= 300; ++n) {
    if (n == 23) continue;
    data.push_back({n, valuation(2, Integer(static_cast<long>(n) - 23)), false});
  }
  const auto fit = fit_padic_alpha(data, 2, 6);
  CHECK(fit.consistent);
  CHECK(fit.certified_depth == 6);
  CHECK(fit.residue == 23);
  CHECK(fit.digits == std::vector<unsigned>{1, 1, 1, 0, 1, 0});
  CHECK(fit.data_used == data.size());

  // a lower bound alone does not separate residues
  const auto weak = fit_padic_alpha({{8, 3, true}}, 2, 3);
  CHECK(weak.consistent);
  CHECK(weak.certified_depth == 3);
  CHECK(weak.residue == 0);

  std::vector<PadicDatum> clash{{1, 0, false}, {2, 0, false}};
  const auto bad = fit_padic_alpha(clash, 2, 2);
  CHECK_FALSE(bad.consistent);
  CHECK_FALSE(bad.conflicts.empty());

  CHECK_THROWS_AS(fit_padic_alpha({}, 2, 3), DomainError);
  CHECK_THROWS_AS(fit_padic_alpha(data, 2, 80), ResourceError);
}

TEST_CASE("periods modulo powers of 3") {
  for (unsigned r = 3; r <= 6; ++r) {
    const auto v = mod3r_period_check(r);
    CAPTURE(r);
    CHECK(v.report.detected);
    CHECK(v.divides);
    CHECK(v.bound % v.report.period == 0);
    CHECK(v.report.window >= 20 * v.bound);
  }
  CHECK(mod3r_period_check(3).bound == 2);
  CHECK_THROWS_AS(mod3r_period_check(2), DomainError);
}

TEST_CASE("conjecture selectors") {
  CHECK(ConjectureSpec::parse("2adic").kind == ConjectureKind::two_adic);
  CHECK(ConjectureSpec::parse("2adic-general:3").k == 3);
  CHECK(ConjectureSpec::parse("5adic").id() == "5adic");
  CHECK_THROWS_AS(ConjectureSpec::parse("7adic"), ParseError);
  CHECK_THROWS_AS(ConjectureSpec::parse("2adic-general:x"), ParseError);
}

TEST_CASE("2-adic conjecture over a window") {
  const auto report = conjecture_report(ConjectureSpec::parse("2adic"), 4096, 6);
  CHECK(report.consistent);
  REQUIRE(report.constant);
  CHECK(*report.constant == 2);
  REQUIRE(report.fit);
  CHECK(report.fit->certified_depth == 6);
  CHECK(report.fit->residue == 23);
}

TEST_CASE("5-adic conjecture over a window") {
  const auto report = conjecture_report(ConjectureSpec::parse("5adic"), 4096, 3);
  CHECK(report.consistent);
  REQUIRE(report.fit);
  CHECK(report.fit->residue == 35);
  CHECK(report.fit->digits == std::vector<unsigned>{0, 2, 1});
  bool even_checked = false;
  for (const auto& p : report.patterns) {
    if (p.label.find("even") != std::string::npos) {
      even_checked = true;
      CHECK(p.holds);
    }
  }
  CHECK(even_checked);
}

TEST_CASE("3-adic conjecture over a window") {
  const auto report = conjecture_report(ConjectureSpec::parse("3adic"), 1000, 4);
  CHECK(report.consistent);
  REQUIRE(report.fit);
  CHECK(report.fit->certified_depth == 4);
  CHECK(report.fit->residue == 35);
  CHECK_FALSE(report.groups.empty());
  for (const auto& p : report.patterns) CHECK(p.holds);
  CHECK_THROWS_AS(conjecture_report(ConjectureSpec::parse("3adic"), 3, 2), DomainError);
}
