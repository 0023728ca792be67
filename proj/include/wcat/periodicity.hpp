// Rational form of the truncated continued fraction for sum C_n^b x^n, the
// prefix-product criterion for eventual periodicity mod m, and cycle
// detection on residue sequences.
#ifndef WCAT_PERIODICITY_HPP
#define WCAT_PERIODICITY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wcat/arith.hpp"
#include "wcat/weights.hpp"

namespace wcat {

/// Least k <= bound with m | b(0) b(1) ... b(k), if any. Table weights are
/// scanned only as far as they are defined.
std::optional<std::size_t> truncation_index(const WeightFunction& b, std::uint64_t m, std::size_t bound);

struct PQPair {
  IntPolynomial numerator;    // P
  IntPolynomial denominator;  // Q
  std::size_t truncation = 0;
};

/// P/Q equal to the continued fraction cut after the b(n) level:
/// P sums over gap-2 index sets in [1, n], Q over [0, n], sign (-x)^k.
PQPair continued_fraction_pq(const WeightFunction& b, std::size_t n);

struct PeriodReport {
  std::uint64_t modulus = 2;
  bool detected = false;
  std::size_t preperiod = 0;
  std::size_t period = 0;  // meaningful only when detected
  std::size_t window = 0;  // terms examined
  bool certified = false;  // eventual periodicity guaranteed by the truncation criterion
  std::optional<std::size_t> truncation;
  std::size_t state_width = 1;
};

inline constexpr std::size_t kDefaultStateWidth = 8;

/// Finds the first repeated run of `state_width` consecutive residues, checks
/// the resulting cycle against the rest of the window and reduces it to the
/// minimal period. The periodic part must cover at least half the window.
/// No cycle within the window is reported, not thrown.
PeriodReport detect_period(const std::vector<std::uint64_t>& residues, std::uint64_t modulus,
                           std::size_t state_width);

/// Generator form: pulls up to max_terms residues, in order, from `next`.
PeriodReport detect_period(const std::function<std::uint64_t()>& next, std::uint64_t modulus,
                           std::size_t max_terms, std::size_t state_width);

struct PurityVerdict {
  bool holds = false;
  std::vector<std::string> reasons;
};

/// deg P < deg Q and Q(0), lead(Q) units mod m, all after reducing mod m.
PurityVerdict pure_periodicity_sufficient(const PQPair& pq, std::uint64_t modulus);

inline constexpr std::size_t kDefaultMaxTerms = 5000;

/// Period of C_n^b mod m over max_terms terms. When a truncation index k is
/// found the sequence is generated with paths capped at height k and the
/// state width is the degree of Q mod m.
PeriodReport analyze_catalan_period(const WeightFunction& b, std::uint64_t modulus,
                                    std::size_t max_terms = kDefaultMaxTerms,
                                    std::optional<std::size_t> state_width = {});

}  // namespace wcat

#endif  // WCAT_PERIODICITY_HPP
