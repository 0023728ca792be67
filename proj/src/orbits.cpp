#include "wcat/orbits.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "wcat/error.hpp"

namespace wcat {

struct OrbitShape::Node {
  unsigned q = 2;
  bool empty = false;
  std::vector<OrbitShape> children;
  std::string key;
  std::size_t count = 0;
  std::size_t depth = 0;
  std::optional<unsigned> complete;
};

namespace {

void require_branching(unsigned q) {
  if (q < 2) throw DomainError("branching q must be at least 2");
}

}  // namespace

OrbitShape OrbitShape::empty(unsigned q) {
  require_branching(q);
  auto n = std::make_shared<Node>();
  n->q = q;
  n->empty = true;
  return OrbitShape(std::move(n));
}

OrbitShape OrbitShape::leaf(unsigned q) { return node({}, q); }

OrbitShape OrbitShape::node(std::vector<OrbitShape> children, unsigned q) {
  require_branching(q);
  std::erase_if(children, [](const OrbitShape& c) { return c.is_empty(); });
  if (children.size() > q) {
    throw DomainError("vertex with " + std::to_string(children.size()) + " children in a " +
                      std::to_string(q) + "-ary shape");
  }
  for (const auto& c : children) {
    if (c.q() != q) throw DomainError("mixed branching factors in one shape");
  }
  std::sort(children.begin(), children.end());
  auto n = std::make_shared<Node>();
  n->q = q;
  n->key = "(";
  n->count = 1;
  std::size_t max_child_depth = 0;
  for (const auto& c : children) {
    n->key += c.key();
    n->count += c.vertex_count();
    max_child_depth = std::max(max_child_depth, c.depth());
  }
  n->key += ")";
  n->depth = max_child_depth + 1;
  if (children.empty()) {
    n->complete = 1;
  } else if (children.size() == q && children.front().complete_depth() &&
             children.front() == children.back()) {
    n->complete = *children.front().complete_depth() + 1;
  }
  n->children = std::move(children);
  return OrbitShape(std::move(n));
}

OrbitShape OrbitShape::complete(unsigned depth, unsigned q) {
  if (depth == 0) return empty(q);
  OrbitShape sub = complete(depth - 1, q);
  return node(std::vector<OrbitShape>(q, sub), q);
}

OrbitShape OrbitShape::parse(std::string_view text, unsigned q) {
  std::string s;
  for (char c : text) {
    if (c == '(' || c == ')') {
      s += c;
    } else if (c != ' ' && c != '\t' && c != '\n') {
      throw ParseError(std::string("unexpected character '") + c + "' in shape");
    }
  }
  if (s.empty()) return empty(q);
  std::size_t pos = 0;
  std::function<OrbitShape()> read = [&]() -> OrbitShape {
    if (pos >= s.size() || s[pos] != '(') throw ParseError("expected '(' at offset " + std::to_string(pos));
    ++pos;
    std::vector<OrbitShape> kids;
    while (pos < s.size() && s[pos] == '(') kids.push_back(read());
    if (pos >= s.size() || s[pos] != ')') throw ParseError("unbalanced parentheses in shape");
    ++pos;
    if (kids.size() > q) {
      throw ParseError("vertex with " + std::to_string(kids.size()) + " children exceeds q = " +
                       std::to_string(q));
    }
    return node(std::move(kids), q);
  };
  OrbitShape root = read();
  if (pos != s.size()) throw ParseError("trailing characters after shape");
  return root;
}

unsigned OrbitShape::q() const noexcept { return node_->q; }
bool OrbitShape::is_empty() const noexcept { return node_->empty; }
std::size_t OrbitShape::vertex_count() const noexcept { return node_->count; }
std::size_t OrbitShape::depth() const noexcept { return node_->depth; }
std::optional<unsigned> OrbitShape::complete_depth() const noexcept { return node_->complete; }
const std::vector<OrbitShape>& OrbitShape::children() const noexcept { return node_->children; }
const std::string& OrbitShape::key() const noexcept { return node_->key; }

std::vector<OrbitShape> enumerate_orbits(std::size_t n, unsigned q, std::size_t max_vertices) {
  require_branching(q);
  if (n > max_vertices) {
    throw ResourceError("orbit enumeration capped at " + std::to_string(max_vertices) +
                        " vertices, requested " + std::to_string(n));
  }
  if (n == 0) return {OrbitShape::empty(q)};
  // pool holds every shape on fewer vertices, ordered by (size, key).
  std::vector<OrbitShape> pool;
  std::vector<OrbitShape> current;
  for (std::size_t size = 1; size <= n; ++size) {
    current.clear();
    std::vector<OrbitShape> chosen;
    std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t remaining) {
      if (remaining == 0) {
        current.push_back(OrbitShape::node(chosen, q));
        return;
      }
      if (chosen.size() == q) return;
      for (std::size_t i = from; i < pool.size(); ++i) {
        if (pool[i].vertex_count() > remaining) break;
        chosen.push_back(pool[i]);
        pick(i, remaining - pool[i].vertex_count());
        chosen.pop_back();
      }
    };
    pick(0, size - 1);
    std::sort(current.begin(), current.end());
    pool.insert(pool.end(), current.begin(), current.end());
  }
  return current;
}

Integer orbit_size(const OrbitShape& shape) {
  if (shape.is_empty()) return 1;
  const auto& kids = shape.children();
  const unsigned q = shape.q();
  Integer size = 1;
  // q! / (q - c)! ordered placements of c children into q slots ...
  for (std::size_t i = 0; i < kids.size(); ++i) size *= static_cast<unsigned long>(q - i);
  // ... divided by the permutations of isomorphic siblings.
  std::size_t run = 1;
  for (std::size_t i = 1; i <= kids.size(); ++i) {
    if (i < kids.size() && kids[i] == kids[i - 1]) {
      ++run;
    } else {
      Integer f;
      mpz_fac_ui(f.get_mpz_t(), run);
      size /= f;
      run = 1;
    }
  }
  for (const auto& c : kids) size *= orbit_size(c);
  return size;
}

namespace {

// Ordered binary tree skeleton; null children are open slots.
struct Skeleton {
  std::shared_ptr<const Skeleton> left;
  std::shared_ptr<const Skeleton> right;
};
using SkeletonPtr = std::shared_ptr<const Skeleton>;

std::vector<SkeletonPtr> ordered_skeletons(std::size_t size,
                                           std::map<std::size_t, std::vector<SkeletonPtr>>& memo) {
  if (size == 0) return {nullptr};
  if (auto it = memo.find(size); it != memo.end()) return it->second;
  std::vector<SkeletonPtr> out;
  for (std::size_t left = 0; left < size; ++left) {
    for (const auto& l : ordered_skeletons(left, memo)) {
      for (const auto& r : ordered_skeletons(size - 1 - left, memo)) {
        out.push_back(std::make_shared<const Skeleton>(Skeleton{l, r}));
      }
    }
  }
  memo[size] = out;
  return out;
}

OrbitShape fill_skeleton(const SkeletonPtr& sk, const std::vector<unsigned>& depths, std::size_t& slot) {
  if (!sk) return OrbitShape::complete(depths[slot++], 2);
  OrbitShape l = fill_skeleton(sk->left, depths, slot);
  OrbitShape r = fill_skeleton(sk->right, depths, slot);
  return OrbitShape::node({l, r}, 2);
}

}  // namespace

std::vector<OrbitShape> minimal_orbits(std::size_t n, unsigned q) {
  if (q != 2) throw DomainError("minimal orbit construction is implemented for q = 2 only");
  if (n == 0) throw DomainError("minimal orbits need n >= 1");
  std::vector<unsigned> depths;  // exponents of the binary expansion of n + 1
  for (unsigned k = 0; (std::uint64_t{1} << k) <= n + 1; ++k) {
    if (((n + 1) >> k) & 1U) depths.push_back(k);
  }
  const std::size_t s = depths.size() - 1;
  if (s > 6) {
    throw ResourceError("minimal orbit construction capped at s = 6 skeleton vertices, got " +
                        std::to_string(s));
  }
  std::map<std::size_t, std::vector<SkeletonPtr>> memo;
  std::set<std::string> seen;
  std::vector<OrbitShape> out;
  for (const auto& sk : ordered_skeletons(s, memo)) {
    std::vector<unsigned> perm = depths;
    do {
      std::size_t slot = 0;
      OrbitShape shape = fill_skeleton(sk, perm, slot);
      if (seen.insert(shape.key()).second) out.push_back(shape);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Reduction reduce_orbit(const OrbitShape& shape) {
  if (shape.is_empty()) return {shape, 0};
  if (shape.complete_depth()) {
    return {OrbitShape::leaf(shape.q()), shape.vertex_count() - 1};
  }
  std::vector<OrbitShape> kids;
  std::size_t removed = 0;
  for (const auto& c : shape.children()) {
    Reduction r = reduce_orbit(c);
    removed += r.removed;
    kids.push_back(r.shape);
  }
  return {OrbitShape::node(std::move(kids), shape.q()), removed};
}

namespace {

struct NotIntegral {
  std::string key;
  std::uint64_t x;
};

// Least n with q^n not dividing some Δ^n f on the window.
std::optional<std::size_t> failing_order(const ValueTable& f, unsigned long q) {
  ValueTable d = f;
  Integer power = 1;
  for (std::size_t n = 0; n < f.values().size(); ++n) {
    for (const auto& v : d.values()) {
      if (mpz_divisible_p(v.get_mpz_t(), power.get_mpz_t()) == 0) return n;
    }
    if (d.values().size() < 2) break;
    d = finite_difference(d, 1);
    power *= q;
  }
  return std::nullopt;
}

std::vector<Integer> average_weight_values(const OrbitShape& shape, const WeightFunction& b,
                                           std::uint64_t x0, std::size_t len) {
  if (shape.is_empty()) return std::vector<Integer>(len, 1);
  const unsigned q = shape.q();
  // Each slot is evaluated one point wider so f(x + 1) is available.
  std::vector<std::vector<Integer>> slots;
  for (const auto& c : shape.children()) slots.push_back(average_weight_values(c, b, x0, len + 1));
  while (slots.size() < q) slots.emplace_back(len + 1, 1);
  std::vector<Integer> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    Integer sum = 0;
    for (std::size_t s = 0; s < q; ++s) {
      Integer term = slots[s][i + 1];
      for (std::size_t t = 0; t < q; ++t) {
        if (t != s) term *= slots[t][i];
      }
      sum += term;
    }
    if (mpz_divisible_ui_p(sum.get_mpz_t(), q) == 0) throw NotIntegral{shape.key(), x0 + i};
    mpz_divexact_ui(sum.get_mpz_t(), sum.get_mpz_t(), q);
    out[i] = b.eval(x0 + i) * sum;
  }
  return out;
}

}  // namespace

ValueTable average_weight(const OrbitShape& shape, const WeightFunction& b, std::uint64_t x0,
                          std::size_t len) {
  if (len == 0) throw DomainError("empty window");
  if (auto size = b.domain_size(); size && x0 + len + shape.depth() > *size + 1) {
    throw DomainError("table weight too short: average weight on [" + std::to_string(x0) + ", " +
                      std::to_string(x0 + len) + ") of a depth-" + std::to_string(shape.depth()) +
                      " shape needs b up to " + std::to_string(x0 + len + shape.depth() - 2));
  }
  try {
    return ValueTable(x0, average_weight_values(shape, b, x0, len));
  } catch (const NotIntegral& e) {
    const auto order = failing_order(b.window(x0, len + shape.depth()), shape.q());
    throw DomainError("weight not in F at order " + (order ? std::to_string(*order) : std::string("?")) +
                      ": average weight of " + e.key + " is not integral at x = " + std::to_string(e.x));
  }
}

OrbitEpsilon epsilon_direct(const OrbitShape& shape, const WeightFunction& b, std::size_t max_m) {
  const unsigned q = shape.q();
  // Certifies b in F (exactly for polynomials, on the table otherwise).
  (void)epsilon_of_weight(b, b.is_polynomial() ? 0 : *b.domain_size() - 1, q);
  const std::size_t window = max_m + 3;
  const ValueTable r = average_weight(shape, b, 0, window);
  const EpsilonSequence eps = epsilon_of_table(r, max_m, q);
  if (eps.verified_order < max_m) {
    throw DomainError("Δ^" + std::to_string(eps.verified_order + 1) + " r_b(" + shape.key() +
                      ") is not constant modulo q^" + std::to_string(eps.verified_order + 2) +
                      " on the window");
  }
  return {eps.bits, EpsilonSource::direct};
}

namespace {

// Compositions of m into `parts` nonnegative parts.
void for_each_composition(std::size_t m, std::size_t parts, std::vector<unsigned>& acc,
                          const std::function<void(const std::vector<unsigned>&)>& fn) {
  if (acc.size() + 1 == parts) {
    acc.push_back(static_cast<unsigned>(m));
    fn(acc);
    acc.pop_back();
    return;
  }
  for (std::size_t i = 0; i <= m; ++i) {
    acc.push_back(static_cast<unsigned>(i));
    for_each_composition(m - i, parts, acc, fn);
    acc.pop_back();
  }
}

class RecursiveEpsilon {
 public:
  explicit RecursiveEpsilon(const EpsilonSequence& eps_b) : eps_b_(eps_b), q_(eps_b.q) {}

  std::vector<unsigned> digits(const OrbitShape& shape, std::size_t max_m) {
    std::vector<unsigned> out(max_m + 1, 0);
    if (shape.is_empty()) {
      out[0] = 1 % q_;
      return out;
    }
    const std::string memo_key = shape.key() + "#" + std::to_string(max_m);
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

    std::vector<std::vector<unsigned>> sub;
    for (const auto& c : shape.children()) sub.push_back(digits(c, max_m + 1));
    while (sub.size() < q_) sub.push_back(digits(OrbitShape::empty(shape.q()), max_m + 1));

    for (std::size_t m = 0; m <= max_m; ++m) {
      unsigned long total = 0;
      std::vector<unsigned> acc;
      // parts[0..q-1] go to the subtrees, parts[q] is k (coins at the root).
      for_each_composition(m, q_ + 1, acc, [&](const std::vector<unsigned>& parts) {
        const unsigned long coef = mpz_fdiv_ui(multinomial(parts).get_mpz_t(), q_);
        if (coef == 0) return;
        const unsigned ek = eps_b_[parts[q_]];
        if (ek == 0) return;
        unsigned long bracket = 1;
        for (std::size_t j = 0; j < q_; ++j) bracket = bracket * sub[j][parts[j]] % q_;
        for (std::size_t t = 0; t < q_; ++t) {
          unsigned long term = 1;
          for (std::size_t j = 0; j < q_; ++j) term = term * sub[j][parts[j] + (j == t ? 1 : 0)] % q_;
          bracket = (bracket + term) % q_;
        }
        total = (total + coef * ek % q_ * bracket) % q_;
      });
      out[m] = static_cast<unsigned>(total);
    }
    memo_.emplace(memo_key, out);
    return out;
  }

 private:
  const EpsilonSequence& eps_b_;
  unsigned q_;
  std::unordered_map<std::string, std::vector<unsigned>> memo_;
};

}  // namespace

OrbitEpsilon epsilon_recursive(const OrbitShape& shape, const EpsilonSequence& eps_b,
                               std::size_t max_m) {
  if (eps_b.q != shape.q()) {
    throw DomainError("epsilon base " + std::to_string(eps_b.q) + " does not match shape branching " +
                      std::to_string(shape.q()));
  }
  const std::size_t required = max_m + std::max<std::size_t>(shape.depth(), 1) - 1;
  if (eps_b.bits.size() <= required) {
    throw DomainError("epsilon recursion needs weight digits up to order " + std::to_string(required) +
                      ", got " + std::to_string(eps_b.bits.size()));
  }
  RecursiveEpsilon engine(eps_b);
  return {engine.digits(shape, max_m), EpsilonSource::recursion};
}

TreeLayout TreeLayout::of(const OrbitShape& shape) {
  TreeLayout t;
  std::function<void(const OrbitShape&, std::size_t)> visit = [&](const OrbitShape& s, std::size_t parent) {
    const std::size_t id = t.parent.size();
    t.parent.push_back(parent);
    t.children.emplace_back();
    t.subtree_end.push_back(0);
    if (id != 0) t.children[parent].push_back(id);
    for (const auto& c : s.children()) visit(c, id);
    t.subtree_end[id] = t.parent.size();
  };
  if (!shape.is_empty()) visit(shape, 0);
  return t;
}

std::string validate_coin_configuration(const TreeLayout& tree, const CoinConfiguration& config) {
  if (config.selected_edges.size() != config.edge_coin_vertex.size()) {
    return "every selected edge needs exactly one edge coin";
  }
  std::set<std::size_t> origins;
  for (std::size_t i = 0; i < config.selected_edges.size(); ++i) {
    const std::size_t lower = config.selected_edges[i];
    if (lower == 0 || lower >= tree.size()) return "edge " + std::to_string(lower) + " does not exist";
    if (!origins.insert(tree.parent[lower]).second) {
      return "sibling edges selected at vertex " + std::to_string(tree.parent[lower]);
    }
    const std::size_t at = config.edge_coin_vertex[i];
    if (at >= tree.size() || !tree.is_descendant(at, lower)) {
      return "edge coin of edge " + std::to_string(lower) + " not on a descendant";
    }
  }
  for (std::size_t v : config.number_coin_vertex) {
    if (v >= tree.size()) return "coin placed on missing vertex " + std::to_string(v);
  }
  return {};
}

std::vector<unsigned> coin_weight_exponents(const TreeLayout& tree, const CoinConfiguration& config) {
  std::vector<std::size_t> load(tree.size(), 0);
  for (std::size_t v : config.edge_coin_vertex) ++load[v];
  for (std::size_t v : config.number_coin_vertex) ++load[v];
  std::vector<unsigned> exponents;
  for (std::size_t c : load) {
    if (exponents.size() <= c) exponents.resize(c + 1, 0);
    ++exponents[c];
  }
  return exponents;
}

unsigned coin_oracle(const OrbitShape& shape, const EpsilonSequence& eps_b, std::size_t m) {
  if (shape.q() != 2 || eps_b.q != 2) throw DomainError("coin configurations are defined for q = 2 only");
  if (shape.vertex_count() > kCoinVertexCap || m > kCoinOrderCap) {
    throw ResourceError("coin oracle capped at " + std::to_string(kCoinVertexCap) + " vertices and order " +
                        std::to_string(kCoinOrderCap));
  }
  const TreeLayout tree = TreeLayout::of(shape);
  const std::size_t n = tree.size();
  if (n == 0) return m == 0 ? 1 : 0;
  const std::size_t needed = m + n;
  if (eps_b.bits.size() < needed && !eps_b.exact) {
    throw DomainError("coin oracle needs weight digits up to order " + std::to_string(needed - 1));
  }

  // Binomials C(j, a) for the labeled-coin distribution.
  std::vector<std::vector<Integer>> binom(m + 1, std::vector<Integer>(m + 1, 0));
  for (std::size_t j = 0; j <= m; ++j) {
    binom[j][0] = 1;
    for (std::size_t a = 1; a <= j; ++a) binom[j][a] = binom[j - 1][a - 1] + (a <= j - 1 ? binom[j - 1][a] : Integer(0));
  }

  Integer total = 0;
  std::vector<std::size_t> choice(n, 0);  // 0: no edge, else 1 + index of selected child
  std::vector<std::size_t> load(n, 0);

  // Sum over distributions of the m labeled coins given edge-coin loads.
  auto distribute = [&]() {
    std::vector<Integer> ways(m + 1, 0);  // ways[j]: j labeled coins over processed vertices
    ways[0] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<Integer> next(m + 1, 0);
      for (std::size_t j = 0; j <= m; ++j) {
        for (std::size_t a = 0; a <= j; ++a) {
          if (ways[j - a] == 0 || eps_b[load[v] + a] == 0) continue;
          next[j] += binom[j][a] * ways[j - a];
        }
      }
      ways = std::move(next);
    }
    total += ways[m];
  };

  std::vector<std::size_t> edges;
  std::function<void(std::size_t)> place = [&](std::size_t e) {
    if (e == edges.size()) {
      distribute();
      return;
    }
    const std::size_t lower = edges[e];
    for (std::size_t v = lower; v < tree.subtree_end[lower]; ++v) {
      ++load[v];
      place(e + 1);
      --load[v];
    }
  };
  std::function<void(std::size_t)> select = [&](std::size_t v) {
    if (v == n) {
      place(0);
      return;
    }
    select(v + 1);
    for (std::size_t child : tree.children[v]) {
      edges.push_back(child);
      select(v + 1);
      edges.pop_back();
    }
  };
  select(0);
  (void)choice;
  return static_cast<unsigned>(mpz_fdiv_ui(total.get_mpz_t(), 2));
}

unsigned minimal_parity_sum(std::size_t n, const WeightFunction& b) {
  const auto shapes = minimal_orbits(n, 2);
  std::size_t depth = 1;
  for (const auto& s : shapes) depth = std::max(depth, s.depth());
  const EpsilonSequence eps_b = epsilon_of_weight(b, depth, 2);
  unsigned sum = 0;
  for (const auto& s : shapes) sum ^= epsilon_recursive(s, eps_b, 0).bits[0] & 1U;
  return sum;
}

}  // namespace wcat
