// Weighted Catalan numbers C_n^b (Dyck paths, up-step from height h weighted
// b(h)) and weighted q-Catalan numbers over q-ary trees.
#ifndef WCAT_CATALAN_HPP
#define WCAT_CATALAN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "wcat/arith.hpp"
#include "wcat/weights.hpp"

namespace wcat {

/// C_n^b with every weight argument offset by `shift`.
Integer weighted_catalan(const WeightFunction& b, std::size_t n, std::uint64_t shift = 0);

/// C_0^b, ..., C_N^b in a single height-indexed pass. With max_height set,
/// only paths staying at height <= max_height are counted.
std::vector<Integer> weighted_catalan_sequence(const WeightFunction& b, std::size_t last,
                                               std::optional<std::size_t> max_height = {});

std::uint64_t weighted_catalan_mod(const WeightFunction& b, std::size_t n, std::uint64_t modulus);

/// C_0^b mod m, ..., C_N^b mod m. max_height caps path heights as above; for
/// a sequence mod m it is exact whenever m divides b(0)...b(max_height).
std::vector<std::uint64_t> weighted_catalan_sequence_mod(const WeightFunction& b, std::size_t last,
                                                         std::uint64_t modulus,
                                                         std::optional<std::size_t> max_height = {});

/// Sum over q-ary trees on n vertices of the product of b(#non-right edges
/// from the root) over the vertices.
Integer q_weighted_catalan(const WeightFunction& b, unsigned q, std::size_t n);

/// Closed form C(qn, n) / ((q-1)n + 1).
Integer q_catalan(unsigned q, std::size_t n);

}  // namespace wcat

#endif  // WCAT_CATALAN_HPP
