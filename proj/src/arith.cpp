#include "wcat/arith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wcat/error.hpp"

namespace wcat {

namespace {

void require_base(unsigned long q) {
  if (q < 2) throw DomainError("base must be at least 2, got " + std::to_string(q));
}

}  // namespace

unsigned valuation(unsigned long q, const Integer& n) {
  require_base(q);
  if (n == 0) throw DomainError("valuation undefined at zero");
  Integer r = abs(n);
  unsigned count = 0;
  // Strip powers of two with a bit scan; everything else by repeated division.
  if (q == 2) return static_cast<unsigned>(mpz_scan1(r.get_mpz_t(), 0));
  while (mpz_divisible_ui_p(r.get_mpz_t(), q) != 0) {
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), q);
    ++count;
  }
  return count;
}

unsigned digit_sum(unsigned long q, const Integer& n) {
  require_base(q);
  if (n < 0) throw DomainError("digit sum needs a nonnegative argument");
  if (n.fits_ulong_p()) return digit_sum(q, static_cast<std::uint64_t>(n.get_ui()));
  Integer r = n;
  unsigned sum = 0;
  while (r != 0) {
    sum += static_cast<unsigned>(mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), q));
  }
  return sum;
}

unsigned digit_sum(unsigned long q, std::uint64_t n) {
  require_base(q);
  unsigned sum = 0;
  while (n != 0) {
    sum += static_cast<unsigned>(n % q);
    n /= q;
  }
  return sum;
}

Integer pow_integer(unsigned long base, unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

ValueTable::ValueTable(std::uint64_t base_point, std::vector<Integer> values)
    : base_(base_point), values_(std::move(values)) {
  if (values_.empty()) throw DomainError("value table must not be empty");
}

const Integer& ValueTable::at(std::uint64_t x) const {
  if (x < base_ || x - base_ >= values_.size()) {
    throw DomainError("argument " + std::to_string(x) + " outside table window [" +
                      std::to_string(base_) + ", " + std::to_string(base_ + values_.size()) +
                      ")");
  }
  return values_[x - base_];
}

ValueTable ValueTable::shifted(std::size_t k) const {
  if (k >= values_.size()) {
    throw DomainError("shift by " + std::to_string(k) + " needs at least " +
                      std::to_string(k + 1) + " values");
  }
  return ValueTable(base_ + k, std::vector<Integer>(values_.begin() + static_cast<long>(k),
                                                    values_.end()));
}

ValueTable finite_difference(const ValueTable& table, std::size_t order) {
  if (order >= table.size()) {
    throw DomainError("difference of order " + std::to_string(order) + " needs a window of " +
                      std::to_string(order + 1) + " values, got " +
                      std::to_string(table.size()));
  }
  std::vector<Integer> v = table.values();
  for (std::size_t k = 0; k < order; ++k) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
  }
  return ValueTable(table.base_point(), std::move(v));
}

std::vector<Integer> newton_coefficients(const ValueTable& table) {
  if (table.base_point() != 0) {
    throw DomainError("Newton coefficients need a table based at 0");
  }
  std::vector<Integer> v = table.values();
  std::vector<Integer> out;
  out.reserve(v.size());
  while (!v.empty()) {
    out.push_back(v.front());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const Modulus mod(p);
  std::uint64_t result = 1;
  while (m != 0 || n != 0) {
    const std::uint64_t nd = n % p;
    const std::uint64_t md = m % p;
    if (md > nd) return 0;
    // Small binomial C(nd, md) mod p with both digits < p.
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t i = 0; i < md; ++i) {
      num = mod.mul(num, nd - i);
      den = mod.mul(den, i + 1);
    }
    result = mod.mul(result, mod.mul(num, mod.inverse(den)));
    n /= p;
    m /= p;
  }
  return result % p;
}

Integer multinomial(std::span<const unsigned> parts) {
  Integer result = 1;
  unsigned long total = 0;
  for (unsigned part : parts) {
    Integer b;
    total += part;
    mpz_bin_uiui(b.get_mpz_t(), total, part);
    result *= b;
  }
  return result;
}

Modulus::Modulus(std::uint64_t m) : m_(m) {
  if (m < 2 || m >= (std::uint64_t{1} << 63)) {
    throw DomainError("modulus must satisfy 2 <= m < 2^63, got " + std::to_string(m));
  }
}

std::uint64_t Modulus::reduce(const Integer& x) const {
  return mpz_fdiv_ui(x.get_mpz_t(), m_);
}

std::uint64_t Modulus::reduce(std::int64_t x) const {
  const auto m = static_cast<std::int64_t>(m_);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Modulus::inverse(std::uint64_t a) const {
  Integer inv;
  const Integer av(static_cast<unsigned long>(a));
  const Integer mv(static_cast<unsigned long>(m_));
  if (mpz_invert(inv.get_mpz_t(), av.get_mpz_t(), mv.get_mpz_t()) == 0) {
    throw DomainError(std::to_string(a) + " is not invertible modulo " + std::to_string(m_));
  }
  return inv.get_ui();
}

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {
  normalize();
}

IntPolynomial IntPolynomial::from_ints(std::initializer_list<long> coefficients) {
  std::vector<Integer> c;
  for (long v : coefficients) c.emplace_back(v);
  return IntPolynomial(std::move(c));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Integer(0);
}

Integer IntPolynomial::evaluate(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::uint64_t IntPolynomial::evaluate_mod(std::uint64_t x, const Modulus& m) const {
  const std::uint64_t xr = x % m.value();
  std::uint64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = m.add(m.mul(acc, xr), m.reduce(*it));
  }
  return acc;
}

std::vector<std::uint64_t> IntPolynomial::reduced(const Modulus& m) const {
  std::vector<std::uint64_t> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(m.reduce(c));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const Integer mag = abs(c);
    if (k == 0 || mag != 1) os << mag;
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

IntPolynomial polynomial_from_newton(std::span<const Integer> newton) {
  // sum c_j C(x, j) with rational monomial coefficients, accumulated as
  // numerators over the common denominator (deg)!.
  const std::size_t n = newton.size();
  if (n == 0) return {};
  Integer denom;
  mpz_fac_ui(denom.get_mpz_t(), n - 1);
  std::vector<Integer> acc(n, 0);
  std::vector<Integer> falling{1};  // x(x-1)...(x-j+1), ascending coefficients
  for (std::size_t j = 0; j < n; ++j) {
    Integer jfac;
    mpz_fac_ui(jfac.get_mpz_t(), j);
    const Integer scale = newton[j] * (denom / jfac);
    for (std::size_t k = 0; k < falling.size(); ++k) acc[k] += scale * falling[k];
    std::vector<Integer> next(falling.size() + 1, 0);
    for (std::size_t k = 0; k < falling.size(); ++k) {
      next[k + 1] += falling[k];
      next[k] -= falling[k] * static_cast<long>(j);
    }
    falling = std::move(next);
  }
  for (auto& c : acc) {
    if (mpz_divisible_p(c.get_mpz_t(), denom.get_mpz_t()) == 0) {
      throw DomainError("Newton coefficients do not give an integer polynomial");
    }
    c /= denom;
  }
  return IntPolynomial(std::move(acc));
}

ModSeries series_divide(std::span<const std::uint64_t> numerator,
                        std::span<const std::uint64_t> denominator, const Modulus& m,
                        std::size_t order) {
  const std::uint64_t q0 = denominator.empty() ? 0 : denominator[0] % m.value();
  if (std::gcd(q0, m.value()) != 1) throw DomainError("non-invertible constant term");
  const std::uint64_t inv = m.inverse(q0);
  ModSeries out{m.value(), std::vector<std::uint64_t>(order, 0)};
  for (std::size_t n = 0; n < order; ++n) {
    std::uint64_t acc = n < numerator.size() ? numerator[n] % m.value() : 0;
    const std::size_t top = std::min(n, denominator.size() - 1);
    for (std::size_t j = 1; j <= top; ++j) {
      acc = m.sub(acc, m.mul(denominator[j] % m.value(), out.coefficients[n - j]));
    }
    out.coefficients[n] = m.mul(acc, inv);
  }
  return out;
}

ModSeries series_divide(const IntPolynomial& numerator, const IntPolynomial& denominator,
                        std::uint64_t modulus, std::size_t order) {
  const Modulus m(modulus);
  std::vector<std::uint64_t> p;
  std::vector<std::uint64_t> q;
  for (const auto& c : numerator.coefficients()) p.push_back(m.reduce(c));
  for (const auto& c : denominator.coefficients()) q.push_back(m.reduce(c));
  if (q.empty()) throw DomainError("non-invertible constant term");
  return series_divide(p, q, m, order);
}

ModSeries series_multiply(const ModSeries& a, std::span<const std::uint64_t> b, std::size_t order) {
  const Modulus m(a.modulus);
  ModSeries out{a.modulus, std::vector<std::uint64_t>(order, 0)};
  for (std::size_t i = 0; i < std::min(order, a.coefficients.size()); ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < order; ++j) {
      out.coefficients[i + j] = m.add(out.coefficients[i + j], m.mul(a.coefficients[i], b[j] % m.value()));
    }
  }
  return out;
}

std::vector<Integer> series_divide_exact(const IntPolynomial& numerator,
                                         const IntPolynomial& denominator, std::size_t order) {
  const Integer q0 = denominator.coefficient(0);
  if (q0 != 1 && q0 != -1) throw DomainError("exact series division needs Q(0) = +-1");
  std::vector<Integer> a(order);
  const auto dq = static_cast<std::size_t>(std::max(0L, denominator.degree()));
  for (std::size_t n = 0; n < order; ++n) {
    Integer acc = numerator.coefficient(n);
    for (std::size_t j = 1; j <= std::min(n, dq); ++j) acc -= denominator.coefficient(j) * a[n - j];
    a[n] = acc * q0;
  }
  return a;
}

}  // namespace wcat
