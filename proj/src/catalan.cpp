#include "wcat/catalan.hpp"

#include <algorithm>

#include "wcat/error.hpp"

namespace wcat {

namespace {

// Weights needed for paths of semilength <= last: up-steps leave heights
// 0..last-1, and never more than max_height - 1 when capped.
std::size_t weight_levels(std::size_t last, std::optional<std::size_t> max_height) {
  std::size_t levels = last;
  if (max_height) levels = std::min(levels, *max_height);
  return levels;
}

void require_table_covers(const WeightFunction& b, std::uint64_t shift, std::size_t levels) {
  if (levels == 0) return;
  if (auto size = b.domain_size(); size && shift + levels > *size) {
    throw DomainError("table weight too short: paths need b up to height " +
                      std::to_string(shift + levels - 1) + " but the table has " +
                      std::to_string(*size) + " entries");
  }
}

// Generic height-indexed Dyck path DP. `up(h, v)` returns v * b(h).
template <typename Value, typename Add, typename Up>
std::vector<Value> dyck_sequence(std::size_t last, std::size_t height_cap, Value zero, Value one,
                                 Add add, Up up) {
  std::vector<Value> result;
  result.reserve(last + 1);
  result.push_back(one);
  if (last == 0) return result;
  const std::size_t top = std::min(last, height_cap);
  std::vector<Value> cur(top + 2, zero);
  std::vector<Value> next(top + 2, zero);
  cur[0] = one;
  const std::size_t steps = 2 * last;
  for (std::size_t t = 1; t <= steps; ++t) {
    // Height after t steps is at most min(t, 2*last - t) and has parity t.
    const std::size_t reach = std::min({t, steps - t, top});
    for (std::size_t h = t % 2; h <= reach; h += 2) {
      Value v = zero;
      if (h > 0) v = up(h - 1, cur[h - 1]);
      if (h + 1 <= top) v = add(v, cur[h + 1]);
      next[h] = v;
    }
    std::swap(cur, next);
    if (t % 2 == 0) result.push_back(cur[0]);
  }
  return result;
}

}  // namespace

std::vector<Integer> weighted_catalan_sequence(const WeightFunction& b, std::size_t last,
                                               std::optional<std::size_t> max_height) {
  const std::size_t levels = weight_levels(last, max_height);
  require_table_covers(b, 0, levels);
  std::vector<Integer> w;
  w.reserve(levels);
  for (std::size_t h = 0; h < levels; ++h) w.push_back(b.eval(h));
  return dyck_sequence<Integer>(
      last, max_height.value_or(last), Integer(0), Integer(1),
      [](const Integer& a, const Integer& c) { return Integer(a + c); },
      [&w](std::size_t h, const Integer& v) { return Integer(v * w[h]); });
}

Integer weighted_catalan(const WeightFunction& b, std::size_t n, std::uint64_t shift) {
  if (n == 0) return 1;
  require_table_covers(b, shift, n);
  std::vector<Integer> w;
  w.reserve(n);
  for (std::size_t h = 0; h < n; ++h) w.push_back(b.eval(shift + h));
  // Single semilength: run the full DP and keep the last entry.
  auto seq = dyck_sequence<Integer>(
      n, n, Integer(0), Integer(1),
      [](const Integer& a, const Integer& c) { return Integer(a + c); },
      [&w](std::size_t h, const Integer& v) { return Integer(v * w[h]); });
  return seq.back();
}

std::vector<std::uint64_t> weighted_catalan_sequence_mod(const WeightFunction& b, std::size_t last,
                                                         std::uint64_t modulus,
                                                         std::optional<std::size_t> max_height) {
  const Modulus m(modulus);
  const std::size_t levels = weight_levels(last, max_height);
  require_table_covers(b, 0, levels);
  std::vector<std::uint64_t> w;
  w.reserve(levels);
  for (std::size_t h = 0; h < levels; ++h) w.push_back(b.eval_mod(h, m));
  return dyck_sequence<std::uint64_t>(
      last, max_height.value_or(last), 0, 1 % modulus,
      [&m](std::uint64_t a, std::uint64_t c) { return m.add(a, c); },
      [&m, &w](std::size_t h, std::uint64_t v) { return m.mul(v, w[h]); });
}

std::uint64_t weighted_catalan_mod(const WeightFunction& b, std::size_t n, std::uint64_t modulus) {
  return weighted_catalan_sequence_mod(b, n, modulus).back();
}

Integer q_weighted_catalan(const WeightFunction& b, unsigned q, std::size_t n) {
  if (q < 2) throw DomainError("branching q must be at least 2");
  if (n == 0) return 1;
  require_table_covers(b, 0, n);
  // F_x(k): weighted count of q-ary trees with k vertices whose root sits
  // behind x non-right edges. A vertex at depth x has at least x ancestors, so
  // F_x is needed only up to k = n - x.
  std::vector<Integer> deeper{Integer(1)};  // F_n restricted to k = 0
  for (std::size_t x = n; x-- > 0;) {
    const std::size_t span = n - x;
    const Integer bx = b.eval(x);
    // G(s) = sum over n_1 + ... + n_{q-1} = s of prod F_{x+1}(n_i).
    std::vector<Integer> g(span, 0);
    g[0] = 1;
    for (unsigned c = 0; c + 1 < q; ++c) {
      std::vector<Integer> h(span, 0);
      for (std::size_t i = 0; i < span; ++i) {
        if (g[i] == 0) continue;
        for (std::size_t j = 0; i + j < span && j < deeper.size(); ++j) h[i + j] += g[i] * deeper[j];
      }
      g = std::move(h);
    }
    std::vector<Integer> f(span + 1, 0);
    f[0] = 1;
    for (std::size_t k = 1; k <= span; ++k) {
      Integer acc = 0;
      for (std::size_t s = 0; s < k; ++s) acc += g[s] * f[k - 1 - s];
      f[k] = bx * acc;
    }
    deeper = std::move(f);
  }
  return deeper[n];
}

Integer q_catalan(unsigned q, std::size_t n) {
  if (q < 2) throw DomainError("branching q must be at least 2");
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(q) * n, n);
  const Integer d = static_cast<unsigned long>((q - 1) * n + 1);
  return c / d;
}

}  // namespace wcat
