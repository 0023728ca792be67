#include "oracles.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace oracle {

Big dyck_sum(const Weight& b, unsigned n, std::optional<unsigned> max_height) {
  Big total = 0;
  const unsigned steps = 2 * n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << steps); ++mask) {
    if (static_cast<unsigned>(__builtin_popcountll(mask)) != n) continue;
    int h = 0;
    bool ok = true;
    Big w = 1;
    for (unsigned s = 0; s < steps && ok; ++s) {
      if ((mask >> s) & 1U) {
        if (max_height && h + 1 > static_cast<int>(*max_height)) {
          ok = false;
          break;
        }
        w *= b(static_cast<std::uint64_t>(h));
        ++h;
      } else {
        --h;
        if (h < 0) ok = false;
      }
    }
    if (ok && h == 0) total += w;
  }
  return total;
}

namespace {

struct Nested {
  std::vector<std::shared_ptr<const Nested>> kids;  // q entries, null when empty
};
using NestedPtr = std::shared_ptr<const Nested>;

std::vector<NestedPtr> nested_trees(unsigned n, unsigned q, std::map<unsigned, std::vector<NestedPtr>>& memo) {
  if (n == 0) return {nullptr};
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<NestedPtr> out;
  // Distribute n - 1 vertices over q slots.
  std::vector<NestedPtr> chosen;
  std::function<void(unsigned, unsigned)> fill = [&](unsigned slot, unsigned left) {
    if (slot + 1 == q) {
      for (const auto& t : nested_trees(left, q, memo)) {
        chosen.push_back(t);
        auto node = std::make_shared<Nested>();
        node->kids = chosen;
        out.push_back(node);
        chosen.pop_back();
      }
      return;
    }
    for (unsigned size = 0; size <= left; ++size) {
      for (const auto& t : nested_trees(size, q, memo)) {
        chosen.push_back(t);
        fill(slot + 1, left - size);
        chosen.pop_back();
      }
    }
  };
  fill(0, n - 1);
  memo[n] = out;
  return out;
}

int flatten(const NestedPtr& t, unsigned q, OrderedTree& out) {
  const int id = static_cast<int>(out.slots.size());
  out.slots.emplace_back(q, -1);
  for (unsigned s = 0; s < q; ++s) {
    if (t->kids[s]) {
      const int child = flatten(t->kids[s], q, out);
      out.slots[id][s] = child;
    }
  }
  return id;
}

}  // namespace

std::vector<OrderedTree> ordered_trees(unsigned n, unsigned q) {
  std::map<unsigned, std::vector<NestedPtr>> memo;
  std::vector<OrderedTree> out;
  for (const auto& t : nested_trees(n, q, memo)) {
    OrderedTree tree;
    if (t) flatten(t, q, tree);
    out.push_back(std::move(tree));
  }
  return out;
}

Big tree_weight(const OrderedTree& t, const Weight& b, std::uint64_t x, std::optional<unsigned> shifted_slots) {
  if (t.slots.empty()) return 1;
  const std::size_t q = t.slots.front().size();
  const std::size_t shifting = shifted_slots ? *shifted_slots : q - 1;
  Big w = 1;
  std::function<void(int, std::uint64_t)> walk = [&](int v, std::uint64_t level) {
    w *= b(x + level);
    for (std::size_t s = 0; s < q; ++s) {
      const int c = t.slots[v][s];
      if (c >= 0) walk(c, level + (s < shifting ? 1 : 0));
    }
  };
  walk(0, 0);
  return w;
}

std::string canonical_key(const OrderedTree& t) {
  if (t.slots.empty()) return "";
  std::function<std::string(int)> key = [&](int v) {
    std::vector<std::string> parts;
    for (int c : t.slots[v]) {
      if (c >= 0) parts.push_back(key(c));
    }
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    return s + ")";
  };
  return key(0);
}

std::map<std::string, std::vector<OrderedTree>> orbit_classes(unsigned n, unsigned q) {
  std::map<std::string, std::vector<OrderedTree>> out;
  for (auto& t : ordered_trees(n, q)) out[canonical_key(t)].push_back(std::move(t));
  return out;
}

Big orbit_average(const std::vector<OrderedTree>& cls, const Weight& b, std::uint64_t x,
                  std::optional<unsigned> shifted_slots) {
  Big sum = 0;
  for (const auto& t : cls) sum += tree_weight(t, b, x, shifted_slots);
  const Big size = static_cast<unsigned long>(cls.size());
  if (sum % size != 0) throw std::runtime_error("orbit average is not an integer");
  return sum / size;
}

std::optional<NaivePeriod> naive_period(const std::vector<std::uint64_t>& seq, std::size_t min_repeats) {
  const std::size_t n = seq.size();
  for (std::size_t period = 1; period * min_repeats <= n; ++period) {
    // Longest suffix on which seq[t] == seq[t + period].
    std::size_t pre = n - period;
    while (pre > 0 && seq[pre - 1] == seq[pre - 1 + period]) --pre;
    if (n - pre >= min_repeats * period && 2 * (n - pre) >= n) return NaivePeriod{pre, period};
  }
  return std::nullopt;
}

Weight poly_weight(std::vector<long> coefficients) {
  return [coefficients](std::uint64_t x) {
    Big v = 0;
    Big power = 1;
    for (long c : coefficients) {
      v += power * c;
      power *= static_cast<unsigned long>(x);
    }
    return v;
  };
}

unsigned long long double_factorial(long n) {
  unsigned long long r = 1;
  for (long k = n; k > 1; k -= 2) r *= static_cast<unsigned long long>(k);
  return r;
}

}  // namespace oracle
