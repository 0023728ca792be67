// Orbits of binary (q-ary) trees under subtree reflections/permutations,
// their average weight functions and three routes to their epsilon digits.
#ifndef WCAT_ORBITS_HPP
#define WCAT_ORBITS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wcat/arith.hpp"
#include "wcat/weights.hpp"

namespace wcat {

/// Canonical unordered rooted tree with at most q children per vertex. Two
/// shapes are isomorphic iff their keys are equal. The key doubles as the
/// text form: nested parentheses with children in sorted order, "()" for a
/// single vertex and "" for the empty tree.
class OrbitShape {
 public:
  static OrbitShape empty(unsigned q = 2);
  static OrbitShape leaf(unsigned q = 2);
  static OrbitShape node(std::vector<OrbitShape> children, unsigned q = 2);
  /// Complete q-ary tree with `depth` layers (depth 0 is the empty tree).
  static OrbitShape complete(unsigned depth, unsigned q = 2);
  static OrbitShape parse(std::string_view text, unsigned q = 2);

  unsigned q() const noexcept;
  bool is_empty() const noexcept;
  std::size_t vertex_count() const noexcept;
  /// Number of layers; 0 for the empty tree.
  std::size_t depth() const noexcept;
  /// Depth k when this is the complete tree of depth k >= 1.
  std::optional<unsigned> complete_depth() const noexcept;
  const std::vector<OrbitShape>& children() const noexcept;
  const std::string& key() const noexcept;
  const std::string& to_string() const noexcept { return key(); }

  bool operator==(const OrbitShape& other) const { return key() == other.key(); }
  bool operator<(const OrbitShape& other) const { return key() < other.key(); }

 private:
  struct Node;
  explicit OrbitShape(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Default cap on the vertex count accepted by enumerate_orbits.
inline constexpr std::size_t kDefaultOrbitCap = 18;

/// All orbits of trees on n vertices (q-ary), sorted by key.
std::vector<OrbitShape> enumerate_orbits(std::size_t n, unsigned q = 2,
                                         std::size_t max_vertices = kDefaultOrbitCap);

/// Number of ordered trees in the orbit.
Integer orbit_size(const OrbitShape& shape);

/// Minimal orbits of binary trees on n vertices, built from the binary
/// expansion of n + 1 (skeleton on s vertices, complete trees in its slots).
std::vector<OrbitShape> minimal_orbits(std::size_t n, unsigned q = 2);

struct Reduction {
  OrbitShape shape;
  std::size_t removed = 0;
};

/// Replaces every maximal complete subtree by a single vertex.
Reduction reduce_orbit(const OrbitShape& shape);

/// r_b(O; x) on [x0, x0 + len); divisions by q must be exact.
ValueTable average_weight(const OrbitShape& shape, const WeightFunction& b, std::uint64_t x0,
                          std::size_t len);

enum class EpsilonSource { direct, recursion, coin };

struct OrbitEpsilon {
  std::vector<unsigned> bits;  // residues mod q
  EpsilonSource source = EpsilonSource::direct;
};

/// Digits read off the differences of r_b(O; .) directly.
OrbitEpsilon epsilon_direct(const OrbitShape& shape, const WeightFunction& b, std::size_t max_m);

/// Digits from the multinomial recursion over the root's subtrees, driven
/// only by the weight's own digits.
OrbitEpsilon epsilon_recursive(const OrbitShape& shape, const EpsilonSequence& eps_b,
                               std::size_t max_m);

/// Preorder layout of a shape (children in key order); vertex 0 is the root.
struct TreeLayout {
  std::vector<std::size_t> parent;  // parent[0] is unused
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> subtree_end;  // descendants of v are [v, subtree_end[v])

  static TreeLayout of(const OrbitShape& shape);
  std::size_t size() const { return parent.size(); }
  bool is_descendant(std::size_t v, std::size_t of) const {
    return of <= v && v < subtree_end[of];
  }
};

/// Coin configuration of order m. An edge is named by its lower endpoint.
struct CoinConfiguration {
  std::vector<std::size_t> selected_edges;
  std::vector<std::size_t> edge_coin_vertex;    // parallel to selected_edges
  std::vector<std::size_t> number_coin_vertex;  // coin i+1 -> vertex
};

/// Empty string when valid, otherwise the violated constraint.
std::string validate_coin_configuration(const TreeLayout& tree, const CoinConfiguration& config);

/// exponents[k] = number of vertices holding exactly k coins, so the weight
/// is prod_k eps_k^{exponents[k]}.
std::vector<unsigned> coin_weight_exponents(const TreeLayout& tree, const CoinConfiguration& config);

inline constexpr std::size_t kCoinVertexCap = 10;
inline constexpr std::size_t kCoinOrderCap = 10;

/// Sum over all coin configurations of order m of prod_v eps_{|C_v|}, mod 2.
unsigned coin_oracle(const OrbitShape& shape, const EpsilonSequence& eps_b, std::size_t m);

/// Sum over minimal orbits of eps_0^O, mod 2.
unsigned minimal_parity_sum(std::size_t n, const WeightFunction& b);

}  // namespace wcat

#endif  // WCAT_ORBITS_HPP
