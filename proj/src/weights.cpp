#include "wcat/weights.hpp"

#include <charconv>
#include <functional>
#include <sstream>

#include "wcat/error.hpp"

namespace wcat {

namespace {

constexpr const char* kGrammar =
    "expected preset:NAME (ones, matchings, alt-even, alt-odd, morse, morse-power:K), "
    "poly:c0,c1,... or table:v0,v1,...";

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty entry in '" + text + "'; " + kGrammar);
    item = item.substr(first, last - first + 1);
    Integer v;
    if (v.set_str(item, 10) != 0) throw ParseError("not an integer: '" + item + "'; " + kGrammar);
    out.push_back(v);
  }
  if (out.empty()) throw ParseError(std::string("empty coefficient list; ") + kGrammar);
  return out;
}

IntPolynomial preset_polynomial(const std::string& name) {
  if (name == "ones") return IntPolynomial::from_ints({1});
  if (name == "matchings") return IntPolynomial::from_ints({1, 1});
  if (name == "alt-even") return IntPolynomial::from_ints({1, 2, 1});
  if (name == "alt-odd") return IntPolynomial::from_ints({2, 3, 1});
  if (name == "morse") return IntPolynomial::from_ints({1, 4, 4});
  const std::string prefix = "morse-power:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    unsigned long k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k == 0 || k > 64) {
      throw ParseError("morse-power needs an exponent 1..64, got '" + digits + "'");
    }
    // (1 + 2x)^{2k}
    std::vector<Integer> c(2 * k + 1);
    for (unsigned long j = 0; j <= 2 * k; ++j) {
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), 2 * k, j);
      c[j] = b * pow_integer(2, j);
    }
    return IntPolynomial(std::move(c));
  }
  throw ParseError("unknown preset '" + name + "'; " + kGrammar);
}

std::string join(const std::vector<Integer>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ",";
    out += v[i].get_str();
  }
  return out;
}

bool divides(const Integer& d, const Integer& v) {
  return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

bool is_prime_power(unsigned long q) {
  if (q < 2) return false;
  unsigned long p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

WeightFunction WeightFunction::polynomial(IntPolynomial p) {
  WeightFunction w;
  w.kind_ = Kind::polynomial;
  w.poly_ = std::move(p);
  return w;
}

WeightFunction WeightFunction::table(std::vector<Integer> values) {
  if (values.empty()) throw DomainError("table weight must not be empty");
  WeightFunction w;
  w.kind_ = Kind::table;
  w.table_ = std::move(values);
  return w;
}

WeightFunction WeightFunction::preset(const std::string& name) {
  WeightFunction w;
  w.kind_ = Kind::preset;
  w.preset_name_ = name;
  w.poly_ = preset_polynomial(name);
  return w;
}

WeightFunction WeightFunction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("bad weight spec '" + spec + "'; " + kGrammar);
  const std::string head = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (head == "preset") return preset(body);
  if (head == "poly") return polynomial(IntPolynomial(parse_integer_list(body)));
  if (head == "table") return table(parse_integer_list(body));
  throw ParseError("bad weight spec '" + spec + "'; " + kGrammar);
}

const IntPolynomial& WeightFunction::as_polynomial() const {
  if (!is_polynomial()) throw DomainError("table weight has no polynomial form");
  return poly_;
}

std::optional<std::uint64_t> WeightFunction::domain_size() const {
  if (kind_ == Kind::table) return table_.size();
  return std::nullopt;
}

void WeightFunction::require_defined(std::uint64_t x) const {
  if (kind_ == Kind::table && x >= table_.size()) {
    throw DomainError("table weight defined on [0, " + std::to_string(table_.size()) +
                      "); extend it to cover b(" + std::to_string(x) + ")");
  }
}

Integer WeightFunction::eval(std::uint64_t x) const {
  require_defined(x);
  if (kind_ == Kind::table) return table_[x];
  return poly_.evaluate(Integer(static_cast<unsigned long>(x)));
}

std::uint64_t WeightFunction::eval_mod(std::uint64_t x, const Modulus& m) const {
  require_defined(x);
  if (kind_ == Kind::table) return m.reduce(table_[x]);
  return poly_.evaluate_mod(x, m);
}

ValueTable WeightFunction::window(std::uint64_t base, std::size_t len) const {
  if (len == 0) throw DomainError("empty window");
  require_defined(base + len - 1);
  std::vector<Integer> v;
  v.reserve(len);
  for (std::size_t i = 0; i < len; ++i) v.push_back(eval(base + i));
  return ValueTable(base, std::move(v));
}

std::string WeightFunction::spec() const {
  switch (kind_) {
    case Kind::preset:
      return "preset:" + preset_name_;
    case Kind::table:
      return "table:" + join(table_);
    case Kind::polynomial:
      return "poly:" + (poly_.is_zero() ? std::string("0") : join(poly_.coefficients()));
  }
  return {};
}

bool in_function_class(const IntPolynomial& b, unsigned long q) {
  if (b.is_zero()) return true;
  std::vector<Integer> v;
  for (long x = 0; x <= b.degree(); ++x) v.push_back(b.evaluate(Integer(x)));
  const auto newton = newton_coefficients(ValueTable(0, std::move(v)));
  for (std::size_t j = 0; j < newton.size(); ++j) {
    if (!divides(pow_integer(q, j), newton[j])) return false;
  }
  return true;
}

EpsilonSequence epsilon_of_table(const ValueTable& f, std::size_t max_order, unsigned long q) {
  if (q < 2) throw DomainError("epsilon base must be at least 2");
  if (f.size() < max_order + 1) {
    throw DomainError("epsilon up to order " + std::to_string(max_order) + " needs " +
                      std::to_string(max_order + 1) + " values, got " + std::to_string(f.size()));
  }
  EpsilonSequence eps;
  eps.q = q;
  bool constant_so_far = true;
  std::vector<Integer> diff = f.values();
  for (std::size_t n = 0; n <= max_order; ++n) {
    const Integer qn = pow_integer(q, n);
    const Integer qn1 = qn * q;
    for (std::size_t i = 0; i < diff.size(); ++i) {
      if (!divides(qn, diff[i])) {
        throw DomainError("function not in F (base " + std::to_string(q) + "): " +
                          qn.get_str() + " does not divide Δ^" + std::to_string(n) + " f(" +
                          std::to_string(f.base_point() + i) + ") = " + diff[i].get_str());
      }
    }
    Integer digit = diff[0] / qn;
    mpz_fdiv_r_ui(digit.get_mpz_t(), digit.get_mpz_t(), q);
    eps.bits.push_back(static_cast<unsigned>(digit.get_ui()));
    if (diff.size() >= 2 && constant_so_far) {
      for (std::size_t i = 1; i < diff.size(); ++i) {
        if (!divides(qn1, Integer(diff[i] - diff[0]))) {
          constant_so_far = false;
          break;
        }
      }
      if (constant_so_far) eps.verified_order = n;
    } else {
      constant_so_far = false;
    }
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    if (!diff.empty()) diff.pop_back();
  }
  return eps;
}

EpsilonSequence epsilon_of_weight(const WeightFunction& b, std::size_t max_order, unsigned long q,
                                  std::uint64_t base_point) {
  if (q < 2) throw DomainError("epsilon base must be at least 2");
  if (!b.is_polynomial()) {
    const std::uint64_t size = *b.domain_size();
    if (base_point >= size) throw DomainError("window base outside table");
    return epsilon_of_table(b.window(base_point, size - base_point), max_order, q);
  }
  const IntPolynomial& p = b.as_polynomial();
  if (!in_function_class(p, q)) {
    // Locate the offending Newton coefficient for the message.
    std::vector<Integer> v;
    for (long x = 0; x <= p.degree(); ++x) v.push_back(p.evaluate(Integer(x)));
    const auto newton = newton_coefficients(ValueTable(0, std::move(v)));
    for (std::size_t j = 0; j < newton.size(); ++j) {
      const Integer qj = pow_integer(q, j);
      if (!divides(qj, newton[j])) {
        throw DomainError("weight " + b.spec() + " not in F (base " + std::to_string(q) +
                          "): " + qj.get_str() + " does not divide Δ^" + std::to_string(j) +
                          " b(0) = " + newton[j].get_str());
      }
    }
  }
  const std::size_t deg = p.is_zero() ? 0 : static_cast<std::size_t>(p.degree());
  const std::size_t len = std::max(max_order, deg) + 1;
  // Digits past the degree vanish, so keeping all of them makes eps[n] exact for every n.
  EpsilonSequence eps = epsilon_of_table(b.window(base_point, len), len - 1, q);
  eps.verified_order = len - 1;
  eps.exact = true;
  return eps;
}

TheoremSelector TheoremSelector::parse(const std::string& text) {
  if (text == "ps") return {Theorem::classic, 2};
  if (text == "main") return {Theorem::main, 2};
  if (text == "conj") return {Theorem::conjecture, 2};
  const std::string prefix = "qmain:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    unsigned long q = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || q < 2) {
      throw ParseError("qmain needs a base q >= 2, got '" + digits + "'");
    }
    return {Theorem::q_main, q};
  }
  throw ParseError("unknown theorem '" + text + "'; expected ps, main, conj or qmain:Q");
}

std::string TheoremSelector::id() const {
  switch (theorem) {
    case Theorem::classic:
      return "ps";
    case Theorem::main:
      return "main";
    case Theorem::conjecture:
      return "conj";
    case Theorem::q_main:
      return "qmain:" + std::to_string(q);
  }
  return {};
}

namespace {

// A clause "d(n) | Δ^n b(x) for all x" for orders n in [first_order, ...).
struct DifferenceClause {
  std::string name;
  std::size_t first_order;
  std::size_t last_order;  // 0: unbounded
  std::function<Integer(std::size_t)> divisor;
};

}  // namespace

ConditionReport check_conditions(const WeightFunction& b, const TheoremSelector& sel,
                                 std::uint64_t window_begin, std::uint64_t window_end) {
  ConditionReport report;
  report.theorem_id = sel.id();

  ValueTable window(0, {Integer(0)});
  if (b.is_polynomial()) {
    const IntPolynomial& p = b.as_polynomial();
    // Δ^n b is a polynomial of degree deg - n: divisibility at deg - n + 1
    // consecutive points is equivalent to divisibility of its Newton
    // coefficients, hence to divisibility everywhere.
    const std::size_t len = static_cast<std::size_t>(std::max(1L, p.degree())) + 1;
    window = b.window(0, len);
    report.exact = true;
  } else {
    const std::uint64_t size = *b.domain_size();
    if (window_end == 0) window_end = size;
    if (window_end > size) {
      throw DomainError("window end " + std::to_string(window_end) + " beyond table size " +
                        std::to_string(size));
    }
    if (window_end < window_begin + 2) throw DomainError("window must cover at least 2 points");
    window = b.window(window_begin, window_end - window_begin);
  }
  report.window_begin = window.base_point();
  report.window_end = window.base_point() + window.size();

  const Integer b0 = b.eval(0);
  auto add_witness = [&](const std::string& clause, std::size_t order, std::uint64_t x,
                         const Integer& value) {
    if (report.witnesses.size() < 32) report.witnesses.push_back({clause, order, x, value});
  };
  auto point_clause = [&](const std::string& name, bool ok, std::size_t order, std::uint64_t x,
                          const Integer& value) {
    report.clauses.push_back({name, ok});
    if (!ok) add_witness(name, order, x, value);
  };

  std::vector<DifferenceClause> diff_clauses;
  switch (sel.theorem) {
    case Theorem::classic:
      point_clause("b(0) odd", mpz_odd_p(b0.get_mpz_t()) != 0, 0, 0, b0);
      diff_clauses.push_back({"2^(n+1) | Δ^n b for n >= 1", 1, 0,
                              [](std::size_t n) { return pow_integer(2, n + 1); }});
      break;
    case Theorem::main:
      point_clause("b(0) odd", mpz_odd_p(b0.get_mpz_t()) != 0, 0, 0, b0);
      diff_clauses.push_back({"4 | Δb", 1, 1, [](std::size_t) { return Integer(4); }});
      diff_clauses.push_back({"2^n | Δ^n b for n >= 2", 2, 0,
                              [](std::size_t n) { return pow_integer(2, n); }});
      break;
    case Theorem::conjecture: {
      point_clause("b(0) odd", mpz_odd_p(b0.get_mpz_t()) != 0, 0, 0, b0);
      diff_clauses.push_back({"2^(n-s_2(n)) | Δ^n b for n >= 2", 2, 0, [](std::size_t n) {
                                return pow_integer(2, n - digit_sum(2, std::uint64_t{n}));
                              }});
      const Integer d = b.eval(1) - b0;
      point_clause("b(0) ≡ b(1) mod 4", mpz_divisible_ui_p(d.get_mpz_t(), 4) != 0, 1, 0, d);
      break;
    }
    case Theorem::q_main: {
      const unsigned long q = sel.q;
      if (!is_prime_power(q)) throw DomainError(std::to_string(q) + " is not a prime power");
      Integer r = b0 - 1;
      point_clause("b(0) ≡ 1 mod q", mpz_divisible_ui_p(r.get_mpz_t(), q) != 0, 0, 0, b0);
      diff_clauses.push_back({"q^2 | Δb", 1, 1, [q](std::size_t) { return pow_integer(q, 2); }});
      diff_clauses.push_back({"q^n | Δ^n b for n >= 2", 2, 0,
                              [q](std::size_t n) { return pow_integer(q, n); }});
      break;
    }
  }

  for (const auto& clause : diff_clauses) {
    bool ok = true;
    std::vector<Integer> diff = window.values();
    for (std::size_t n = 1; n < window.size(); ++n) {
      for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
      diff.pop_back();
      if (n < clause.first_order) continue;
      if (clause.last_order != 0 && n > clause.last_order) break;
      const Integer d = clause.divisor(n);
      for (std::size_t i = 0; i < diff.size(); ++i) {
        if (!divides(d, diff[i])) {
          ok = false;
          add_witness(clause.name, n, window.base_point() + i, diff[i]);
          break;
        }
      }
    }
    report.clauses.push_back({clause.name, ok});
  }
  report.holds = report.witnesses.empty();
  return report;
}

}  // namespace wcat
