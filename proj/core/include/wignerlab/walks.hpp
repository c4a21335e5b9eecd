#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wignerlab/ensembles.hpp"

namespace wignerlab {

// (i_0, ..., i_k) with i_0 = i_k; labels are positive integers.
struct ClosedWalk {
  std::vector<std::size_t> vertices;
  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

// Closed walk over labels {1..t} in first-appearance order:
// c_0 = c_k = 1 and c_s <= max(c_0..c_{s-1}) + 1.
struct CanonicalWalk {
  std::vector<std::size_t> sequence;
  std::size_t length() const { return sequence.size() - 1; }
  std::size_t labels() const;
  std::string to_string() const;  // "1-2-1"

  friend bool operator==(const CanonicalWalk&, const CanonicalWalk&) = default;
  friend auto operator<=>(const CanonicalWalk&, const CanonicalWalk&) = default;
};

bool is_canonical(std::span<const std::size_t> sequence);

// Relabels by first appearance. Throws when i_0 != i_k or the walk is empty.
CanonicalWalk canonicalize(const ClosedWalk& w);

// Gamma(k, t): canonical walks of length k on exactly t labels, in
// lexicographic order. Empty for t > k + 1.
std::vector<CanonicalWalk> enumerate_gamma(std::size_t k, std::size_t t);
// Visitor form; avoids materialising large sets.
void for_each_gamma(std::size_t k, std::size_t t, const std::function<void(const CanonicalWalk&)>& visit);

struct WalkEdge {
  std::size_t u, v;  // u <= v, loops have u == v
  std::size_t forward;   // traversals u -> v
  std::size_t backward;  // traversals v -> u (always 0 for loops)
  std::size_t multiplicity() const { return forward + backward; }
};

struct WalkGraph {
  std::size_t vertices = 0;
  std::vector<WalkEdge> edges;  // sorted by (u, v)
};

WalkGraph walk_graph(const CanonicalWalk& c);

enum class WalkClass { single_edge, double_tree, multi_other };
std::string to_string(WalkClass c);

WalkClass classify(const CanonicalWalk& c);

struct DyckPath {
  std::vector<int> heights;
  bool valid() const;
  friend bool operator==(const DyckPath&, const DyckPath&) = default;
  friend auto operator<=>(const DyckPath&, const DyckPath&) = default;
};

// Heights are tree distances from vertex 1. Throws unless c is a double tree.
DyckPath dyck_of(const CanonicalWalk& c);

// All Dyck paths of length k (empty for odd k), lexicographic in heights.
std::vector<DyckPath> enumerate_dyck_paths(std::size_t k);

// Tree on vertices 0..vertices-1.
struct Tree {
  std::size_t vertices = 1;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct Pin {
  std::size_t vertex;
  std::size_t index;  // 0-based matrix index
};

// Sum over injective labellings F: V(T) -> {0..n-1} (with F(pin.vertex) =
// pin.index when pinned) of prod over edges {u,v} of profile(F(u), F(v)).
// Exact for trees with at most 8 vertices. Throws on a non-tree.
double tree_product_sum(const Tree& tree, const VarianceProfile& profile, std::size_t n,
                        std::optional<Pin> pin = std::nullopt);

// Exact (1/n) E tr W^k by enumerating all index tuples, with independent
// upper-triangle entries drawn from `law` at variance profile(i, j).
// Throws "oracle scale exceeded" for n > 6 or k > 8, and "oracle requires
// finite moments" when the law has no k-th moment.
double walk_sum_moment(const EntryLaw& law, const VarianceProfile& profile, std::size_t n, std::size_t k);

// sum over injective labellings i of c into {0..n-1} of E[prod_s w_{i(c_{s-1}) i(c_s)}]
// (requires n <= 8).
double walk_class_sum(const CanonicalWalk& c, const EntryLaw& law, const VarianceProfile& profile, std::size_t n);

}  // namespace wignerlab
