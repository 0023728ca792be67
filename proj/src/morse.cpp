#include "wcat/morse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "wcat/catalan.hpp"
#include "wcat/error.hpp"

namespace wcat {

Integer morse_number(std::size_t n) { return weighted_catalan(WeightFunction::morse(), n); }

ProfileExpression parse_profile_expression(const std::string& text) {
  if (text == "cb") return ProfileExpression::weighted;
  if (text == "cb-c") return ProfileExpression::minus_catalan;
  if (text == "cb-1") return ProfileExpression::minus_one;
  throw ParseError("unknown expression '" + text + "' (expected cb, cb-c or cb-1)");
}

std::string to_string(ProfileExpression e) {
  switch (e) {
    case ProfileExpression::weighted: return "cb";
    case ProfileExpression::minus_catalan: return "cb-c";
    case ProfileExpression::minus_one: return "cb-1";
  }
  return "cb";
}

namespace {

// Largest K with p^K < 2^62.
unsigned modular_precision(unsigned long p) {
  unsigned k = 0;
  unsigned __int128 power = 1;
  while (power * p < (static_cast<unsigned __int128>(1) << 62)) {
    power *= p;
    ++k;
  }
  return k;
}

unsigned valuation_u64(unsigned long p, std::uint64_t v) {
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

ValuationProfile valuation_profile(const WeightFunction& b, ProfileExpression expr, unsigned long p,
                                   std::size_t first, std::size_t last, ProfileEngine engine) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (first > last) throw DomainError("empty range " + std::to_string(first) + ".." + std::to_string(last));
  ValuationProfile profile;
  profile.weight = b.spec();
  profile.expression = expr;
  profile.p = p;
  profile.exact = engine == ProfileEngine::exact ||
                  (engine == ProfileEngine::automatic && last <= kExactProfileLimit);

  if (profile.exact) {
    const auto values = weighted_catalan_sequence(b, last);
    std::vector<Integer> catalan;
    if (expr == ProfileExpression::minus_catalan) catalan = weighted_catalan_sequence(WeightFunction::ones(), last);
    for (std::size_t n = first; n <= last; ++n) {
      Integer v = values[n];
      if (expr == ProfileExpression::minus_catalan) v -= catalan[n];
      if (expr == ProfileExpression::minus_one) v -= 1;
      ValuationRow row;
      row.n = n;
      if (v != 0) row.valuation = valuation(p, v);
      profile.rows.push_back(row);
    }
    return profile;
  }

  const unsigned k = modular_precision(p);
  const std::uint64_t m = pow_u64(p, k);
  profile.precision = k;
  const Modulus mod(m);
  const auto values = weighted_catalan_sequence_mod(b, last, m);
  std::vector<std::uint64_t> catalan;
  if (expr == ProfileExpression::minus_catalan) {
    catalan = weighted_catalan_sequence_mod(WeightFunction::ones(), last, m);
  }
  for (std::size_t n = first; n <= last; ++n) {
    std::uint64_t v = values[n];
    if (expr == ProfileExpression::minus_catalan) v = mod.sub(v, catalan[n]);
    if (expr == ProfileExpression::minus_one) v = mod.sub(v, 1);
    ValuationRow row;
    row.n = n;
    if (v == 0) {
      row.lower_bound = true;
      row.bound = k;
    } else {
      row.valuation = valuation_u64(p, v);
    }
    profile.rows.push_back(row);
  }
  return profile;
}

namespace {

inline constexpr std::size_t kCandidateCap = 1 << 16;

// xi_p(n - c) in Z/p^d, capped at d.
unsigned capped_valuation(std::uint64_t n, std::uint64_t c, unsigned long p, unsigned d, std::uint64_t pd) {
  const std::uint64_t diff = ((n % pd) + pd - c) % pd;
  if (diff == 0) return d;
  return valuation_u64(p, diff);
}

bool admits(const PadicDatum& datum, std::uint64_t c, unsigned long p, unsigned d, std::uint64_t pd) {
  const unsigned v = capped_valuation(datum.n, c, p, d, pd);
  const unsigned want = std::min(datum.t, d);
  return datum.lower_bound ? v >= want : v == want;
}

}  // namespace

PadicFit fit_padic_alpha(const std::vector<PadicDatum>& data, unsigned long p, unsigned depth) {
  if (p < 2) throw DomainError("p must be at least 2");
  if (data.empty()) throw DomainError("no data to fit");
  if (static_cast<long double>(depth) * std::log2(static_cast<long double>(p)) >= 62) {
    throw ResourceError("depth " + std::to_string(depth) + " too large for base " + std::to_string(p));
  }
  PadicFit fit;
  fit.p = p;
  fit.depth = depth;
  fit.data_used = data.size();

  std::vector<std::uint64_t> candidates{0};
  std::uint64_t pd = 1;
  for (unsigned d = 1; d <= depth; ++d) {
    const std::uint64_t step = pd;
    pd *= p;
    std::vector<std::uint64_t> next;
    for (std::uint64_t c : candidates) {
      for (unsigned long digit = 0; digit < p; ++digit) {
        const std::uint64_t ext = c + digit * step;
        bool ok = true;
        for (const auto& datum : data) {
          if (!admits(datum, ext, p, d, pd)) {
            ok = false;
            break;
          }
        }
        if (ok) next.push_back(ext);
      }
    }
    if (next.empty()) {
      fit.consistent = false;
      // Report the violations of the extension that explains the most data.
      std::vector<PadicConflict> best;
      std::uint64_t best_ext = 0;
      bool have = false;
      for (std::uint64_t c : candidates) {
        for (unsigned long digit = 0; digit < p; ++digit) {
          const std::uint64_t ext = c + digit * step;
          std::vector<PadicConflict> bad;
          for (const auto& datum : data) {
            if (!admits(datum, ext, p, d, pd)) {
              bad.push_back({datum.n, capped_valuation(datum.n, ext, p, d, pd), datum.t});
              if (have && bad.size() >= best.size()) break;
            }
          }
          if (!have || bad.size() < best.size()) {
            best = std::move(bad);
            best_ext = ext;
            have = true;
          }
        }
      }
      (void)best_ext;
      if (best.size() > 32) best.resize(32);
      fit.conflicts = std::move(best);
      break;
    }
    if (next.size() > kCandidateCap) {
      fit.ambiguous = true;
      break;
    }
    candidates = std::move(next);
    if (candidates.size() == 1) {
      fit.certified_depth = d;
      fit.residue = Integer(static_cast<unsigned long>(candidates.front()));
    } else {
      fit.ambiguous = true;
    }
  }
  Integer r = fit.residue;
  for (unsigned i = 0; i < fit.certified_depth; ++i) {
    fit.digits.push_back(static_cast<unsigned>(mpz_fdiv_ui(r.get_mpz_t(), p)));
    r /= static_cast<unsigned long>(p);
  }
  return fit;
}

Mod3Verdict mod3r_period_check(unsigned r, std::size_t window) {
  if (r < 3) throw DomainError("r must be at least 3");
  if (r > 39) throw ResourceError("3^r must stay below 2^63");
  Mod3Verdict v;
  v.r = r;
  v.modulus = pow_u64(3, r);
  v.bound = 2 * pow_u64(3, r - 3);
  if (window == 0) window = 20 * v.bound + 64;
  v.report = analyze_catalan_period(WeightFunction::morse(), v.modulus, window);
  v.divides = v.report.detected && v.bound % v.report.period == 0;
  return v;
}

ConjectureSpec ConjectureSpec::parse(const std::string& text) {
  ConjectureSpec s;
  if (text == "2adic") {
    s.kind = ConjectureKind::two_adic;
  } else if (text == "5adic") {
    s.kind = ConjectureKind::five_adic;
  } else if (text == "3adic") {
    s.kind = ConjectureKind::three_adic;
  } else if (text.rfind("2adic-general:", 0) == 0) {
    s.kind = ConjectureKind::two_adic_general;
    const std::string tail = text.substr(14);
    try {
      std::size_t used = 0;
      const unsigned long k = std::stoul(tail, &used);
      if (used != tail.size() || k == 0 || k > 64) throw std::invalid_argument("range");
      s.k = static_cast<unsigned>(k);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in '" + text + "' (expected 2adic-general:K with 1 <= K <= 64)");
    }
  } else {
    throw ParseError("unknown conjecture '" + text + "' (expected 2adic, 2adic-general:K, 5adic or 3adic)");
  }
  return s;
}

std::string ConjectureSpec::id() const {
  switch (kind) {
    case ConjectureKind::two_adic: return "2adic";
    case ConjectureKind::two_adic_general: return "2adic-general:" + std::to_string(k);
    case ConjectureKind::five_adic: return "5adic";
    case ConjectureKind::three_adic: return "3adic";
  }
  return "2adic";
}

namespace {

void note_unexplained(ConjectureReport& report, std::size_t n) {
  report.consistent = false;
  if (!report.first_unexplained || n < *report.first_unexplained) report.first_unexplained = n;
}

ConjectureReport two_adic_report(const ConjectureSpec& which, std::size_t window, unsigned depth) {
  ConjectureReport report;
  report.id = which.id();
  report.window = window;
  report.first_n = 2;
  report.depth = depth;
  const WeightFunction b = which.kind == ConjectureKind::two_adic
                               ? WeightFunction::morse()
                               : WeightFunction::preset("morse-power:" + std::to_string(which.k));
  const auto profile = valuation_profile(b, ProfileExpression::minus_catalan, 2, 2, window);

  // c is the least excess of xi_2 over s_2(n); xi_2(n - alpha) = 0 for half of all n.
  std::optional<int> c;
  for (const auto& row : profile.rows) {
    if (!row.valuation) continue;
    const int excess = static_cast<int>(*row.valuation) - static_cast<int>(digit_sum(2, std::uint64_t{row.n}));
    c = c ? std::min(*c, excess) : excess;
  }
  report.constant = c;
  if (!c) {
    report.consistent = false;
    return report;
  }
  std::vector<PadicDatum> data;
  for (const auto& row : profile.rows) {
    const int s = static_cast<int>(digit_sum(2, std::uint64_t{row.n}));
    if (row.valuation) {
      data.push_back({row.n, static_cast<unsigned>(static_cast<int>(*row.valuation) - s - *c), false});
    } else if (row.lower_bound) {
      const int t = static_cast<int>(row.bound) - s - *c;
      if (t > 0) data.push_back({row.n, static_cast<unsigned>(t), true});
    } else {
      note_unexplained(report, row.n);  // the difference vanishes exactly
    }
  }
  report.fit = fit_padic_alpha(data, 2, depth);
  if (!report.fit->consistent) {
    for (const auto& conflict : report.fit->conflicts) note_unexplained(report, conflict.n);
  }
  return report;
}

ConjectureReport five_adic_report(std::size_t window, unsigned depth) {
  ConjectureReport report;
  report.id = "5adic";
  report.window = window;
  report.first_n = 4;
  report.depth = depth;
  const auto profile = valuation_profile(WeightFunction::morse(), ProfileExpression::weighted, 5, 4, window);
  PatternCheck even{"n even: xi_5(L_n) = 2", true, 0, {}};
  std::vector<PadicDatum> data;
  for (const auto& row : profile.rows) {
    if (row.n % 2 == 0) {
      ++even.checked;
      if (!row.valuation || *row.valuation != 2) {
        even.holds = false;
        if (!even.first_failure) even.first_failure = row.n;
        note_unexplained(report, row.n);
      }
      continue;
    }
    if (row.valuation) {
      if (*row.valuation < 3) {
        note_unexplained(report, row.n);
      } else {
        data.push_back({row.n, *row.valuation - 3, false});
      }
    } else if (row.lower_bound) {
      data.push_back({row.n, row.bound - 3, true});
    }
  }
  report.patterns.push_back(even);
  if (!data.empty()) {
    report.fit = fit_padic_alpha(data, 5, depth);
    if (!report.fit->consistent) {
      for (const auto& conflict : report.fit->conflicts) note_unexplained(report, conflict.n);
    }
  }
  return report;
}

ConjectureReport three_adic_report(std::size_t window, unsigned depth) {
  ConjectureReport report;
  report.id = "3adic";
  report.window = window;
  report.first_n = 3;
  report.depth = depth;
  const auto profile = valuation_profile(WeightFunction::morse(), ProfileExpression::minus_one, 3, 3, window);

  struct Rule {
    std::string label;
    std::function<bool(std::size_t)> applies;
    unsigned value;
  };
  const std::vector<Rule> rules = {
      {"n even: 2", [](std::size_t n) { return n % 2 == 0; }, 2},
      {"n = 1 mod 6: 6", [](std::size_t n) { return n % 6 == 1; }, 6},
      {"n = 3 mod 6: 4", [](std::size_t n) { return n % 6 == 3; }, 4},
      {"n = 5, 11 mod 18: 5", [](std::size_t n) { return n % 18 == 5 || n % 18 == 11; }, 5},
  };
  for (const auto& rule : rules) {
    PatternCheck check{rule.label, true, 0, {}};
    for (const auto& row : profile.rows) {
      if (!rule.applies(row.n)) continue;
      ++check.checked;
      if (!row.valuation || *row.valuation != rule.value) {
        check.holds = false;
        if (!check.first_failure) check.first_failure = row.n;
      }
    }
    if (!check.holds) note_unexplained(report, *check.first_failure);
    report.patterns.push_back(check);
  }

  // Odd n: alpha mod 3^d must make xi_3(L_n - 1) a function of
  // (xi_3(n - alpha), leading digit of (n - alpha) / 3^xi).
  std::vector<std::pair<std::size_t, unsigned>> odd;
  for (const auto& row : profile.rows) {
    if (row.n % 2 == 1 && row.valuation) odd.emplace_back(row.n, *row.valuation);
  }
  auto single_valued = [&](std::uint64_t a, std::uint64_t pd) {
    std::map<std::pair<unsigned, unsigned>, unsigned> seen;
    for (const auto& [n, v] : odd) {
      const std::uint64_t x = ((n % pd) + pd - a) % pd;
      if (x == 0) continue;
      const unsigned xi = valuation_u64(3, x);
      const unsigned digit = static_cast<unsigned>((x / pow_u64(3, xi)) % 3);
      auto [it, inserted] = seen.emplace(std::make_pair(xi, digit), v);
      if (!inserted && it->second != v) return false;
    }
    return true;
  };
  std::vector<std::uint64_t> candidates{0};
  std::uint64_t pd = 1;
  unsigned certified = 0;
  std::uint64_t alpha = 0;
  for (unsigned d = 1; d <= depth; ++d) {
    const std::uint64_t step = pd;
    pd *= 3;
    std::vector<std::uint64_t> next;
    for (std::uint64_t c : candidates) {
      for (unsigned digit = 0; digit < 3; ++digit) {
        if (single_valued(c + digit * step, pd)) next.push_back(c + digit * step);
      }
    }
    std::vector<unsigned> listed;
    for (std::size_t i = 0; i < next.size() && i < 16; ++i) listed.push_back(static_cast<unsigned>(next[i]));
    report.candidates_by_depth.push_back(listed);
    if (next.empty()) {
      report.consistent = false;
      break;
    }
    if (next.size() == 1) {
      certified = d;
      alpha = next.front();
    }
    if (next.size() > kCandidateCap) break;
    candidates = std::move(next);
  }

  PadicFit fit;
  fit.p = 3;
  fit.depth = depth;
  fit.certified_depth = certified;
  fit.residue = Integer(static_cast<unsigned long>(alpha));
  fit.data_used = odd.size();
  fit.consistent = report.consistent || certified > 0;
  fit.ambiguous = report.candidates_by_depth.empty() || report.candidates_by_depth.back().size() != 1;
  for (std::uint64_t a = alpha, i = 0; i < certified; ++i, a /= 3) fit.digits.push_back(static_cast<unsigned>(a % 3));
  report.fit = fit;

  if (certified > 0) {
    const std::uint64_t pc = pow_u64(3, certified);
    std::map<std::pair<unsigned, unsigned>, GroupRow> groups;
    for (const auto& [n, v] : odd) {
      const std::uint64_t x = ((n % pc) + pc - alpha) % pc;
      unsigned xi = certified;
      unsigned digit = 0;
      if (x != 0) {
        xi = valuation_u64(3, x);
        digit = static_cast<unsigned>((x / pow_u64(3, xi)) % 3);
      }
      GroupRow& g = groups[{xi, digit}];
      g.xi = xi;
      g.digit = digit;
      ++g.count;
      if (std::find(g.values.begin(), g.values.end(), v) == g.values.end()) g.values.push_back(v);
    }
    for (auto& [key, g] : groups) {
      std::sort(g.values.begin(), g.values.end());
      report.groups.push_back(g);
    }
  }
  return report;
}

}  // namespace

ConjectureReport conjecture_report(const ConjectureSpec& which, std::size_t window, unsigned depth) {
  if (window < 5) throw DomainError("window must reach at least n = 5");
  switch (which.kind) {
    case ConjectureKind::two_adic:
    case ConjectureKind::two_adic_general: return two_adic_report(which, window, depth);
    case ConjectureKind::five_adic: return five_adic_report(window, depth);
    case ConjectureKind::three_adic: return three_adic_report(window, depth);
  }
  throw DomainError("unknown conjecture");
}

}  // namespace wcat
