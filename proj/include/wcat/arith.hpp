// Exact integer utilities shared by every other module: p-adic valuations,
// digit sums, forward differences on value windows, Lucas binomials, integer
// polynomials and truncated power series over Z/mZ.
#ifndef WCAT_ARITH_HPP
#define WCAT_ARITH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wcat {

using Integer = mpz_class;

/// Largest a with q^a | n. Sign of n is ignored; n = 0 and q < 2 throw DomainError.
unsigned valuation(unsigned long q, const Integer& n);

/// Sum of the base-q digits of n >= 0.
unsigned digit_sum(unsigned long q, const Integer& n);
unsigned digit_sum(unsigned long q, std::uint64_t n);

Integer pow_integer(unsigned long base, unsigned long exponent);

/// Values f(base), f(base+1), ... of an integer function on a contiguous window.
class ValueTable {
 public:
  ValueTable(std::uint64_t base_point, std::vector<Integer> values);

  std::uint64_t base_point() const noexcept { return base_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Integer>& values() const noexcept { return values_; }
  const Integer& operator[](std::size_t i) const { return values_[i]; }
  /// Value at the absolute argument x (must lie inside the window).
  const Integer& at(std::uint64_t x) const;

  /// The shift S^k: same function, window starting k later.
  ValueTable shifted(std::size_t k) const;

  bool operator==(const ValueTable&) const = default;

 private:
  std::uint64_t base_;
  std::vector<Integer> values_;
};

/// order-th forward difference; the window shrinks by one entry per order.
ValueTable finite_difference(const ValueTable& table, std::size_t order);

/// [Δ^0 f(0), Δ^1 f(0), ...] for a table based at 0.
std::vector<Integer> newton_coefficients(const ValueTable& table);

bool is_prime(std::uint64_t n);

/// C(n, m) mod p by Lucas' theorem; p must be prime.
std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t m, std::uint64_t p);

/// Exact multinomial coefficient (sum parts)! / prod(parts!).
Integer multinomial(std::span<const unsigned> parts);

/// Arithmetic in Z/mZ for 2 <= m < 2^63.
class Modulus {
 public:
  explicit Modulus(std::uint64_t m);

  std::uint64_t value() const noexcept { return m_; }
  std::uint64_t reduce(const Integer& x) const;
  std::uint64_t reduce(std::int64_t x) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + (m_ - b);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m_);
  }
  /// Multiplicative inverse; throws DomainError when gcd(a, m) != 1.
  std::uint64_t inverse(std::uint64_t a) const;

 private:
  std::uint64_t m_;
};

/// Integer polynomial, ascending coefficients, no trailing zeros.
/// The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);
  static IntPolynomial from_ints(std::initializer_list<long> coefficients);

  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of x^k (zero beyond the degree).
  Integer coefficient(std::size_t k) const;
  Integer evaluate(const Integer& x) const;
  std::uint64_t evaluate_mod(std::uint64_t x, const Modulus& m) const;

  /// Coefficients reduced into [0, m), trailing zero residues dropped.
  std::vector<std::uint64_t> reduced(const Modulus& m) const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  bool operator==(const IntPolynomial& other) const { return coeffs_ == other.coeffs_; }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

/// Polynomial whose Newton expansion is sum c_j * C(x, j). Throws DomainError
/// if the result does not have integer coefficients.
IntPolynomial polynomial_from_newton(std::span<const Integer> newton);

/// Truncated power series over Z/mZ.
struct ModSeries {
  std::uint64_t modulus = 2;
  std::vector<std::uint64_t> coefficients;

  bool operator==(const ModSeries&) const = default;
};

/// First `order` coefficients of P/Q over Z/mZ. Q(0) must be a unit mod m.
ModSeries series_divide(const IntPolynomial& numerator, const IntPolynomial& denominator,
                        std::uint64_t modulus, std::size_t order);

/// Same over residue coefficient vectors already reduced mod m.
ModSeries series_divide(std::span<const std::uint64_t> numerator,
                        std::span<const std::uint64_t> denominator, const Modulus& m,
                        std::size_t order);

/// P*Q truncated to `order` terms, over Z/mZ.
ModSeries series_multiply(const ModSeries& a, std::span<const std::uint64_t> b, std::size_t order);

/// Exact power-series quotient over Z; Q(0) must be +-1.
std::vector<Integer> series_divide_exact(const IntPolynomial& numerator,
                                         const IntPolynomial& denominator, std::size_t order);

}  // namespace wcat

#endif  // WCAT_ARITH_HPP
