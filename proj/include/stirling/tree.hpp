#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stirling {

/// Undirected tree edge stored with tail < head.
struct Edge {
  int tail = 0;
  int head = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * A tree on the vertices 1..m.
 *
 * Edges are kept in lexicographic order of (tail, head); edge ids are
 * 1-based positions in that order. Instances are immutable once built and
 * validated: exactly m-1 edges, connected, no loops or duplicates.
 */
class LabeledTree {
 public:
  /// Validates and canonicalizes `edges`. Throws ValidationError.
  LabeledTree(int vertex_count, std::vector<Edge> edges);

  /// The single-vertex tree.
  static LabeledTree singleton();

  int vertex_count() const { return m_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Edge by 1-based id.
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id - 1)); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbours of v (1-based), ascending.
  const std::vector<int>& neighbours(int v) const {
    return adjacency_.at(static_cast<std::size_t>(v - 1));
  }

  /// Id of the edge joining u and v, or 0 when they are not adjacent.
  int edge_id(int u, int v) const;

  /// One "u v" line per edge, in edge-id order.
  std::string serialize() const;

  /// Compact "u-v,u-v" form used on the command line.
  std::string inline_form() const;

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.m_ == b.m_ && a.edges_ == b.edges_;
  }

 private:
  int m_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Parses the edge-list text format: one "u v" pair per line, '#' comments.
LabeledTree parse_tree(std::string_view text);

/// Parses the inline form "1-2,2-3,2-4".
LabeledTree parse_inline_tree(std::string_view text);

/// Path 1-2-...-m.
LabeledTree path_tree(int m);

/// Star with centre 1 and leaves 2..m.
LabeledTree star_tree(int m);

inline constexpr int kMaxEnumeratedVertices = 8;

/// Decodes a Prüfer sequence over 1..m (length m-2).
LabeledTree prufer_decode(int m, const std::vector<int>& sequence);

/// Encodes a tree with m >= 2 as its Prüfer sequence.
std::vector<int> prufer_encode(const LabeledTree& tree);

/// All m^(m-2) labeled trees in lexicographic Prüfer order, 1 <= m <= 8.
std::vector<LabeledTree> enumerate_trees(int m);

/// Uniformly-ish random trees from a seeded mt19937_64, via random Prüfer codes.
std::vector<LabeledTree> sample_trees(int m, std::size_t count, std::uint64_t seed);

/**
 * Pairwise disjoint, nonempty vertex sets each inducing a connected subtree.
 *
 * Parts are stored sorted (each part ascending, parts ordered by their
 * smallest vertex) so equal families compare equal.
 */
class SubtreeFamily {
 public:
  SubtreeFamily(LabeledTree tree, std::vector<std::vector<int>> parts);

  /// {{v} : v in vertices}.
  static SubtreeFamily singletons(const LabeledTree& tree, const std::vector<int>& vertices);

  /// Every vertex as its own part.
  static SubtreeFamily all_vertices(const LabeledTree& tree);

  const LabeledTree& tree() const { return tree_; }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  int part_count() const { return static_cast<int>(parts_.size()); }

  /// True when every part has exactly one vertex.
  bool all_singletons() const;

  /// Vertex set when all parts are singletons.
  std::vector<int> singleton_vertices() const;

  /// Index of the part containing v, or -1.
  int part_of_vertex(int v) const { return vertex_part_.at(static_cast<std::size_t>(v - 1)); }

  /// Index of the part containing both endpoints of edge id, or -1.
  int part_of_edge(int edge_id) const;

  /// "{1,2},{4}" style description; "{}" for the empty family.
  std::string describe() const;

 private:
  LabeledTree tree_;
  std::vector<std::vector<int>> parts_;
  std::vector<int> vertex_part_;
};

SubtreeFamily validate_family(const LabeledTree& tree, std::vector<std::vector<int>> parts);

/**
 * Parses a family spec against a tree:
 *   "all"            every vertex as a singleton,
 *   "none" or ""     the empty family,
 *   "1,3,4"          singletons,
 *   "{1,2},{4}"      explicit subtree parts.
 */
SubtreeFamily parse_family_spec(const LabeledTree& tree, std::string_view spec);

}  // namespace stirling
