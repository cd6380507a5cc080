#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stirling/tree.hpp"

namespace stirling {

/// A cube of T^n packed into one word: entry i occupies a fixed-width field,
/// coordinate 0 most significant, so integer order is lexicographic order.
using CellKey = std::uint64_t;

/**
 * Encoding of the cells of T^n.
 *
 * An entry code is a vertex id (1..m) or m + edge id (m+1..2m-1), which puts
 * every vertex before every edge in the cell order.
 */
class CellSpace {
 public:
  CellSpace(LabeledTree tree, int n);

  const LabeledTree& tree() const { return tree_; }
  int length() const { return n_; }
  int vertex_count() const { return tree_.vertex_count(); }

  bool is_edge_code(int code) const { return code > tree_.vertex_count(); }
  int vertex_code(int v) const { return v; }
  int edge_code(int edge_id) const { return tree_.vertex_count() + edge_id; }
  /// Highest valid entry code, 2m-1.
  int max_code() const { return 2 * tree_.vertex_count() - 1; }

  CellKey encode(const std::vector<int>& codes) const;
  std::vector<int> decode(CellKey key) const;

  int entry(CellKey key, int i) const {
    return static_cast<int>((key >> shift(i)) & field_mask_);
  }
  CellKey with_entry(CellKey key, int i, int code) const {
    const int s = shift(i);
    return (key & ~(field_mask_ << s)) | (static_cast<CellKey>(code) << s);
  }

  /// Number of edge entries.
  int dimension(CellKey key) const;

  /// Vertices that occur as entries, ascending.
  std::vector<int> support(CellKey key) const;

  /// "v1,e1-2,v2".
  std::string serialize(CellKey key) const;
  CellKey parse(const std::string& text) const;

 private:
  int shift(int i) const { return (n_ - 1 - i) * bits_; }

  LabeledTree tree_;
  int n_;
  int bits_;
  CellKey field_mask_;
};

struct SignedFace {
  int sign = 0;
  CellKey cell = 0;

  friend bool operator==(const SignedFace&, const SignedFace&) = default;
};

/// Cubical boundary: for the j-th edge coordinate (j = 1..d, left to right)
/// with tail t and head h, +(-1)^(j-1) (entry -> h) and -(-1)^(j-1) (entry -> t).
/// Throws DomainError for a 0-cell.
std::vector<SignedFace> boundary(const CellSpace& space, CellKey cell);

/// True when some coordinate of the cell lies entirely inside each part.
bool is_member(const CellSpace& space, CellKey cell, const SubtreeFamily& family);

inline constexpr std::size_t kDefaultMaxCells = 5'000'000;

/// Per-dimension cell counts f_0, f_1, ...
using FVector = std::vector<std::uint64_t>;

/**
 * Str(T, S, n): the cells of T^n meeting every part of the family.
 *
 * Cells are kept per dimension in ascending key order; index lookups are
 * binary searches. Immutable once built by enumerate_complex().
 */
class CubicalComplex {
 public:
  CubicalComplex(CellSpace space, SubtreeFamily family, std::vector<std::vector<CellKey>> cells_by_dim);

  const CellSpace& space() const { return space_; }
  const LabeledTree& tree() const { return space_.tree(); }
  const SubtreeFamily& family() const { return family_; }
  int length() const { return space_.length(); }

  /// Top dimension, or -1 for the empty complex.
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  bool empty() const { return cells_.empty(); }

  const std::vector<CellKey>& cells(int d) const { return cells_.at(static_cast<std::size_t>(d)); }
  std::size_t cell_count(int d) const {
    return d >= 0 && d <= dimension() ? cells_[static_cast<std::size_t>(d)].size() : 0;
  }
  std::size_t total_cells() const;

  std::optional<std::size_t> index_of(int d, CellKey key) const;

 private:
  CellSpace space_;
  SubtreeFamily family_;
  std::vector<std::vector<CellKey>> cells_;
};

/// Depth-first enumeration with pruning on unmet parts. Throws CapExceeded
/// once more than `max_cells` cells have been produced.
CubicalComplex enumerate_complex(const SubtreeFamily& family, int n,
                                 std::size_t max_cells = kDefaultMaxCells);

FVector f_vector(const CubicalComplex& complex);

/// For each 0-cell, in index order, the number of 1-cells having it as a face.
std::vector<int> vertex_valencies(const CubicalComplex& complex);

/// valency -> number of 0-cells.
std::map<int, std::size_t> valency_histogram(const CubicalComplex& complex);

struct VertexPiece {
  int vertex = 0;
  std::uint64_t cells = 0;     // cells with last entry = vertex
  std::uint64_t expected = 0;  // |Str(T, S \ {v}, n-1)|
};

struct EdgePiece {
  int edge_id = 0;
  std::uint64_t cells = 0;           // cells with last entry = edge
  std::uint64_t cylinder_cells = 0;  // |B_e|
};

/// Partition of Str(T, S, n) by the last coordinate, with the counts each
/// piece must match.
struct DecompositionReport {
  std::uint64_t total_cells = 0;
  std::uint64_t base_cells = 0;  // |Str(T, S, n-1)|
  std::vector<VertexPiece> vertex_pieces;
  std::vector<EdgePiece> edge_pieces;

  bool vertex_pieces_match() const;
  bool edge_pieces_match() const;
  bool cylinders_match() const;
  bool partition_matches() const;
  bool ok() const {
    return vertex_pieces_match() && edge_pieces_match() && cylinders_match() && partition_matches();
  }
};

/// Requires a singleton family and n >= |S| + 1 (DomainError otherwise).
DecompositionReport decompose_last_coordinate(const SubtreeFamily& family, int n,
                                              std::size_t max_cells = kDefaultMaxCells);

/// Same, reusing an already enumerated Str(T, S, n).
DecompositionReport decompose_last_coordinate(const CubicalComplex& whole,
                                              std::size_t max_cells = kDefaultMaxCells);

}  // namespace stirling
