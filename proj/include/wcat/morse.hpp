// Morse link numbers L_n = C_n^b with b(x) = (2x+1)^2: valuation profiles,
// periods mod 3^r and p-adic fits for the valuation conjectures.
#ifndef WCAT_MORSE_HPP
#define WCAT_MORSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcat/arith.hpp"
#include "wcat/periodicity.hpp"
#include "wcat/weights.hpp"

namespace wcat {

Integer morse_number(std::size_t n);

/// Which sequence a profile takes valuations of: C_n^b, C_n^b - C_n or C_n^b - 1.
enum class ProfileExpression { weighted, minus_catalan, minus_one };

ProfileExpression parse_profile_expression(const std::string& text);  // cb | cb-c | cb-1
std::string to_string(ProfileExpression e);

struct ValuationRow {
  std::size_t n = 0;
  /// Absent when the expression vanishes (exact engine) or vanishes modulo
  /// p^K (modular engine; then `lower_bound` is set and the valuation is >= K).
  std::optional<unsigned> valuation;
  bool lower_bound = false;
  unsigned bound = 0;
};

struct ValuationProfile {
  std::string weight;
  ProfileExpression expression = ProfileExpression::weighted;
  unsigned long p = 2;
  bool exact = true;
  unsigned precision = 0;  // K for the modular engine
  std::vector<ValuationRow> rows;
};

enum class ProfileEngine { automatic, exact, modular };

/// Largest n the automatic engine still evaluates in exact integers.
inline constexpr std::size_t kExactProfileLimit = 400;

/// Valuations for n in [first, last]. The modular engine works mod p^K with
/// the largest K such that p^K < 2^62.
ValuationProfile valuation_profile(const WeightFunction& b, ProfileExpression expr, unsigned long p,
                                   std::size_t first, std::size_t last,
                                   ProfileEngine engine = ProfileEngine::automatic);

struct PadicDatum {
  std::size_t n = 0;
  unsigned t = 0;             // observed xi_p(n - alpha)
  bool lower_bound = false;   // t is only a lower bound
};

struct PadicConflict {
  std::size_t n = 0;
  unsigned expected = 0;  // xi_p(n - alpha) for the closest candidate, capped at the depth
  unsigned observed = 0;
};

struct PadicFit {
  unsigned long p = 2;
  unsigned depth = 0;            // requested D
  std::vector<unsigned> digits;  // least significant first, certified part only
  unsigned certified_depth = 0;
  Integer residue = 0;           // alpha mod p^certified_depth
  bool consistent = true;
  bool ambiguous = false;        // more than one residue survives at some level <= D
  std::size_t data_used = 0;
  std::vector<PadicConflict> conflicts;
};

/// Each datum demands alpha = n mod p^t and, when t < D and exact, alpha != n
/// mod p^{t+1}. Residues mod p^d are refined one digit at a time.
PadicFit fit_padic_alpha(const std::vector<PadicDatum>& data, unsigned long p, unsigned depth);

struct Mod3Verdict {
  unsigned r = 3;
  std::uint64_t modulus = 27;
  std::uint64_t bound = 2;  // 2 * 3^(r-3)
  PeriodReport report;
  bool divides = false;
};

/// Period of L_n mod 3^r against the bound 2*3^(r-3). The default window is
/// 20 bound-lengths plus slack for the preperiod.
Mod3Verdict mod3r_period_check(unsigned r, std::size_t window = 0);

enum class ConjectureKind { two_adic, two_adic_general, five_adic, three_adic };

struct ConjectureSpec {
  ConjectureKind kind = ConjectureKind::two_adic;
  unsigned k = 1;  // exponent for the generalized 2-adic family

  static ConjectureSpec parse(const std::string& text);  // 2adic | 2adic-general:K | 5adic | 3adic
  std::string id() const;
};

struct GroupRow {
  unsigned xi = 0;     // xi_3(n - alpha), capped at the certified depth
  unsigned digit = 0;  // leading digit of (n - alpha) / 3^xi, 0 when xi is capped
  std::vector<unsigned> values;  // distinct xi_3(L_n - 1) in this group
  std::size_t count = 0;
};

struct PatternCheck {
  std::string label;
  bool holds = true;
  std::size_t checked = 0;
  std::optional<std::size_t> first_failure;
};

struct ConjectureReport {
  std::string id;
  std::size_t window = 0;  // n ranges over [first_n, window]
  std::size_t first_n = 2;
  unsigned depth = 0;
  bool consistent = true;
  std::optional<std::size_t> first_unexplained;
  std::optional<int> constant;  // c or c_k for the 2-adic forms
  std::optional<PadicFit> fit;
  std::vector<PatternCheck> patterns;
  std::vector<GroupRow> groups;  // 3-adic only
  std::vector<std::vector<unsigned>> candidates_by_depth;  // 3-adic only
};

/// Evidence over n <= window for one of the Morse valuation conjectures.
ConjectureReport conjecture_report(const ConjectureSpec& which, std::size_t window, unsigned depth);

}  // namespace wcat

#endif  // WCAT_MORSE_HPP
