#include "wcat/periodicity.hpp"

#include <numeric>
#include <unordered_map>

#include "wcat/catalan.hpp"
#include "wcat/error.hpp"

namespace wcat {

std::optional<std::size_t> truncation_index(const WeightFunction& b, std::uint64_t m, std::size_t bound) {
  const Modulus mod(m);
  std::size_t last = bound;
  if (auto size = b.domain_size()) {
    if (*size == 0) return std::nullopt;
    last = std::min<std::uint64_t>(last, *size - 1);
  }
  std::uint64_t prefix = 1 % m;
  for (std::size_t k = 0; k <= last; ++k) {
    prefix = mod.mul(prefix, b.eval_mod(k, mod));
    if (prefix == 0) return k;
  }
  return std::nullopt;
}

namespace {

// Signed sums over index sets with pairwise gaps >= 2: coefficient k is
// (-1)^k * sum over such k-subsets of the product of the chosen values.
IntPolynomial gap_two_polynomial(const std::vector<Integer>& values) {
  std::vector<Integer> before_prev{Integer(1)};  // sums over the prefix ending two back
  std::vector<Integer> prev{Integer(1)};
  for (const auto& w : values) {
    std::vector<Integer> cur = prev;
    cur.resize(std::max(prev.size(), before_prev.size() + 1), 0);
    for (std::size_t k = 0; k < before_prev.size(); ++k) cur[k + 1] += w * before_prev[k];
    before_prev = std::move(prev);
    prev = std::move(cur);
  }
  for (std::size_t k = 1; k < prev.size(); k += 2) prev[k] = -prev[k];
  return IntPolynomial(std::move(prev));
}

}  // namespace

PQPair continued_fraction_pq(const WeightFunction& b, std::size_t n) {
  std::vector<Integer> levels;
  levels.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) levels.push_back(b.eval(i));
  PQPair pq;
  pq.truncation = n;
  pq.denominator = gap_two_polynomial(levels);
  pq.numerator = gap_two_polynomial(std::vector<Integer>(levels.begin() + 1, levels.end()));
  return pq;
}

namespace {

bool shifts_agree(const std::vector<std::uint64_t>& r, std::size_t from, std::size_t shift) {
  for (std::size_t t = from; t + shift < r.size(); ++t) {
    if (r[t] != r[t + shift]) return false;
  }
  return true;
}

}  // namespace

PeriodReport detect_period(const std::vector<std::uint64_t>& residues, std::uint64_t modulus,
                           std::size_t state_width) {
  if (state_width == 0) throw DomainError("state width must be at least 1");
  PeriodReport report;
  report.modulus = modulus;
  report.window = residues.size();
  report.state_width = state_width;
  const std::size_t n = residues.size();
  if (n < state_width) return report;

  std::unordered_map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i + state_width <= n; ++i) {
    std::string key(reinterpret_cast<const char*>(residues.data() + i), state_width * sizeof(std::uint64_t));
    auto [it, inserted] = first_seen.emplace(std::move(key), i);
    if (inserted) continue;
    const std::size_t start = it->second;
    const std::size_t distance = i - start;
    // Demand one full repetition of the cycle inside the window.
    if (start + 2 * distance > n || !shifts_agree(residues, start, distance)) {
      it->second = i;
      continue;
    }
    std::size_t period = distance;
    for (std::size_t d = 1; d < distance; ++d) {
      if (distance % d == 0 && shifts_agree(residues, start, d)) {
        period = d;
        break;
      }
    }
    std::size_t pre = start;
    while (pre > 0 && residues[pre - 1] == residues[pre - 1 + period]) --pre;
    // A cycle confined to a short tail of the window is not evidence.
    if (2 * (n - pre) < n) return report;
    report.detected = true;
    report.period = period;
    report.preperiod = pre;
    return report;
  }
  return report;
}

PeriodReport detect_period(const std::function<std::uint64_t()>& next, std::uint64_t modulus,
                           std::size_t max_terms, std::size_t state_width) {
  std::vector<std::uint64_t> residues;
  residues.reserve(max_terms);
  for (std::size_t i = 0; i < max_terms; ++i) residues.push_back(next() % modulus);
  return detect_period(residues, modulus, state_width);
}

PurityVerdict pure_periodicity_sufficient(const PQPair& pq, std::uint64_t modulus) {
  const Modulus m(modulus);
  const auto p = pq.numerator.reduced(m);
  const auto q = pq.denominator.reduced(m);
  PurityVerdict v;
  const long deg_p = static_cast<long>(p.size()) - 1;
  const long deg_q = static_cast<long>(q.size()) - 1;
  bool ok = true;
  if (deg_p >= deg_q) {
    ok = false;
    v.reasons.push_back("deg P = " + std::to_string(deg_p) + " is not below deg Q = " + std::to_string(deg_q) +
                        " mod " + std::to_string(modulus));
  } else {
    v.reasons.push_back("deg P = " + std::to_string(deg_p) + " < deg Q = " + std::to_string(deg_q));
  }
  if (q.empty()) {
    v.reasons.push_back("Q vanishes mod " + std::to_string(modulus));
    v.holds = false;
    return v;
  }
  if (std::gcd(q.front(), modulus) != 1) {
    ok = false;
    v.reasons.push_back("Q(0) = " + std::to_string(q.front()) + " shares a factor with the modulus");
  } else {
    v.reasons.push_back("Q(0) = " + std::to_string(q.front()) + " is a unit");
  }
  if (std::gcd(q.back(), modulus) != 1) {
    ok = false;
    v.reasons.push_back("leading coefficient " + std::to_string(q.back()) + " of Q shares a factor with the modulus");
  } else {
    v.reasons.push_back("leading coefficient " + std::to_string(q.back()) + " of Q is a unit");
  }
  v.holds = ok;
  return v;
}

PeriodReport analyze_catalan_period(const WeightFunction& b, std::uint64_t modulus, std::size_t max_terms,
                                    std::optional<std::size_t> state_width) {
  if (max_terms == 0) throw DomainError("max_terms must be positive");
  const auto k = truncation_index(b, modulus, max_terms);
  std::vector<std::uint64_t> residues;
  std::size_t width = state_width.value_or(kDefaultStateWidth);
  if (k) {
    // Paths reaching height k + 1 pick up every factor b(0)..b(k), so they
    // vanish mod m and the DP may stop at height k.
    residues = weighted_catalan_sequence_mod(b, max_terms - 1, modulus, *k);
    if (!state_width) {
      const auto q = continued_fraction_pq(b, *k).denominator.reduced(Modulus(modulus));
      width = std::max<std::size_t>(1, q.empty() ? 1 : q.size() - 1);
    }
  } else {
    residues = weighted_catalan_sequence_mod(b, max_terms - 1, modulus);
  }
  PeriodReport report = detect_period(residues, modulus, width);
  report.certified = k.has_value();
  report.truncation = k;
  return report;
}

}  // namespace wcat
