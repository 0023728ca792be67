// Weight functions b: Z>=0 -> Z, their epsilon sequences, and the divisibility
// hypotheses of the valuation theorems.
#ifndef WCAT_WEIGHTS_HPP
#define WCAT_WEIGHTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcat/arith.hpp"

namespace wcat {

/// A weight function, either polynomial (presets expand to polynomials) or a
/// finite table of values starting at 0.
///
/// Textual form: `preset:NAME`, `poly:c0,c1,...` (ascending), `table:v0,v1,...`.
/// Presets: ones, matchings, alt-even, alt-odd, morse, morse-power:K.
class WeightFunction {
 public:
  enum class Kind { polynomial, table, preset };

  static WeightFunction polynomial(IntPolynomial p);
  static WeightFunction table(std::vector<Integer> values);
  static WeightFunction preset(const std::string& name);
  static WeightFunction parse(const std::string& spec);

  static WeightFunction ones() { return preset("ones"); }
  static WeightFunction morse() { return preset("morse"); }

  Kind kind() const noexcept { return kind_; }
  bool is_polynomial() const noexcept { return kind_ != Kind::table; }
  /// Polynomial form; throws DomainError for table weights.
  const IntPolynomial& as_polynomial() const;
  /// Number of defined arguments, or nullopt when defined everywhere.
  std::optional<std::uint64_t> domain_size() const;

  Integer eval(std::uint64_t x) const;
  std::uint64_t eval_mod(std::uint64_t x, const Modulus& m) const;
  /// b(base), ..., b(base+len-1).
  ValueTable window(std::uint64_t base, std::size_t len) const;

  /// Canonical spec string (parse(spec()) reproduces this weight).
  std::string spec() const;

 private:
  WeightFunction() = default;
  void require_defined(std::uint64_t x) const;

  Kind kind_ = Kind::polynomial;
  std::string preset_name_;
  IntPolynomial poly_;
  std::vector<Integer> table_;
};

/// Digits eps_n in [0, q) with Δ^n f ≡ eps_n q^n (mod q^{n+1}).
struct EpsilonSequence {
  unsigned long q = 2;
  std::vector<unsigned> bits;
  /// Highest order whose constancy mod q^{n+1} was certified; for polynomial
  /// weights membership is certified at every order.
  std::size_t verified_order = 0;
  bool exact = false;

  unsigned operator[](std::size_t n) const { return n < bits.size() ? bits[n] : 0; }
};

/// True when q^n | Δ^n b(x) for every n and x >= 0 (exact; polynomial weights only).
bool in_function_class(const IntPolynomial& b, unsigned long q);

/// eps_0..eps_{max_order} of the weight. Polynomial weights are certified for
/// all arguments through their Newton coefficients; table weights are checked
/// on the table window starting at base_point.
EpsilonSequence epsilon_of_weight(const WeightFunction& b, std::size_t max_order,
                                  unsigned long q = 2, std::uint64_t base_point = 0);

/// Epsilon digits of an arbitrary function given on a window: membership
/// q^n | Δ^n f is checked at every point of the window for each order.
EpsilonSequence epsilon_of_table(const ValueTable& f, std::size_t max_order, unsigned long q);

enum class Theorem { classic, main, conjecture, q_main };

struct TheoremSelector {
  Theorem theorem = Theorem::main;
  unsigned long q = 2;  // only used for q_main

  static TheoremSelector parse(const std::string& text);  // ps | main | conj | qmain:Q
  std::string id() const;
};

struct ClauseResult {
  std::string clause;
  bool holds = true;
};

struct ConditionWitness {
  std::string clause;
  std::size_t order = 0;
  std::uint64_t x = 0;
  Integer value;
};

struct ConditionReport {
  std::string theorem_id;
  bool holds = true;
  /// true: verdict covers all x >= 0; false: verified on [window_begin, window_end) only.
  bool exact = false;
  std::uint64_t window_begin = 0;
  std::uint64_t window_end = 0;
  std::vector<ClauseResult> clauses;
  std::vector<ConditionWitness> witnesses;
};

/// Evaluates the hypotheses of the chosen theorem. For polynomial weights the
/// window argument is ignored and the verdict is exact.
ConditionReport check_conditions(const WeightFunction& b, const TheoremSelector& theorem,
                                 std::uint64_t window_begin = 0, std::uint64_t window_end = 0);

}  // namespace wcat

#endif  // WCAT_WEIGHTS_HPP
