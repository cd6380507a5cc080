#include "stirling/complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "stirling/error.hpp"

namespace stirling {

CellSpace::CellSpace(LabeledTree tree, int n) : tree_(std::move(tree)), n_(n) {
  if (n_ < 0) throw DomainError("cell length must be nonnegative");
  bits_ = std::bit_width(static_cast<unsigned>(max_code()));
  if (static_cast<long>(bits_) * n_ > 64) {
    throw DomainError("cells of length " + std::to_string(n_) + " over a tree with " +
                      std::to_string(tree_.vertex_count()) + " vertices do not fit in 64 bits");
  }
  field_mask_ = (CellKey{1} << bits_) - 1;
}

CellKey CellSpace::encode(const std::vector<int>& codes) const {
  if (static_cast<int>(codes.size()) != n_) throw DomainError("cell has the wrong length");
  CellKey key = 0;
  for (int code : codes) {
    if (code < 1 || code > max_code()) throw DomainError("entry code out of range");
    key = (key << bits_) | static_cast<CellKey>(code);
  }
  return key;
}

std::vector<int> CellSpace::decode(CellKey key) const {
  std::vector<int> codes(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) codes[static_cast<std::size_t>(i)] = entry(key, i);
  return codes;
}

int CellSpace::dimension(CellKey key) const {
  int d = 0;
  for (int i = 0; i < n_; ++i) d += is_edge_code(entry(key, i)) ? 1 : 0;
  return d;
}

std::vector<int> CellSpace::support(CellKey key) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i) {
    const int code = entry(key, i);
    if (!is_edge_code(code)) out.push_back(code);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string CellSpace::serialize(CellKey key) const {
  std::string out;
  const int m = vertex_count();
  for (int i = 0; i < n_; ++i) {
    if (i) out += ',';
    const int code = entry(key, i);
    if (is_edge_code(code)) {
      const Edge& e = tree_.edge(code - m);
      out += "e" + std::to_string(e.tail) + "-" + std::to_string(e.head);
    } else {
      out += "v" + std::to_string(code);
    }
  }
  return out;
}

CellKey CellSpace::parse(const std::string& text) const {
  std::vector<int> codes;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string token = text.substr(start, end - start);
    const auto first = token.find_first_not_of(" \t");
    token = first == std::string::npos ? "" : token.substr(first, token.find_last_not_of(" \t") - first + 1);
    try {
      if (token.size() >= 2 && token[0] == 'v') {
        codes.push_back(vertex_code(std::stoi(token.substr(1))));
      } else if (token.size() >= 4 && token[0] == 'e' && token.find('-') != std::string::npos) {
        const auto dash = token.find('-');
        const int id = tree_.edge_id(std::stoi(token.substr(1, dash - 1)), std::stoi(token.substr(dash + 1)));
        if (id == 0) throw ParseError("'" + token + "' is not an edge of the tree");
        codes.push_back(edge_code(id));
      } else {
        throw ParseError("bad cell token '" + token + "'");
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad cell token '" + token + "'");
    }
    start = end + 1;
  }
  return encode(codes);
}

std::vector<SignedFace> boundary(const CellSpace& space, CellKey cell) {
  std::vector<SignedFace> faces;
  const int m = space.vertex_count();
  int sign = 1;
  for (int i = 0; i < space.length(); ++i) {
    const int code = space.entry(cell, i);
    if (!space.is_edge_code(code)) continue;
    const Edge& e = space.tree().edge(code - m);
    faces.push_back({sign, space.with_entry(cell, i, space.vertex_code(e.head))});
    faces.push_back({-sign, space.with_entry(cell, i, space.vertex_code(e.tail))});
    sign = -sign;
  }
  if (faces.empty()) throw DomainError("boundary of a 0-cell");
  return faces;
}

namespace {

// part index satisfied by each entry code, -1 for none
std::vector<int> part_lookup(const CellSpace& space, const SubtreeFamily& family) {
  std::vector<int> lookup(static_cast<std::size_t>(space.max_code()) + 1, -1);
  const int m = space.vertex_count();
  for (int v = 1; v <= m; ++v) lookup[static_cast<std::size_t>(v)] = family.part_of_vertex(v);
  for (int id = 1; id < m; ++id) lookup[static_cast<std::size_t>(m + id)] = family.part_of_edge(id);
  return lookup;
}

}  // namespace

bool is_member(const CellSpace& space, CellKey cell, const SubtreeFamily& family) {
  const auto lookup = part_lookup(space, family);
  std::vector<bool> met(static_cast<std::size_t>(family.part_count()), false);
  for (int i = 0; i < space.length(); ++i) {
    const int part = lookup[static_cast<std::size_t>(space.entry(cell, i))];
    if (part >= 0) met[static_cast<std::size_t>(part)] = true;
  }
  return std::all_of(met.begin(), met.end(), [](bool b) { return b; });
}

CubicalComplex::CubicalComplex(CellSpace space, SubtreeFamily family,
                               std::vector<std::vector<CellKey>> cells_by_dim)
    : space_(std::move(space)), family_(std::move(family)), cells_(std::move(cells_by_dim)) {
  while (!cells_.empty() && cells_.back().empty()) cells_.pop_back();
}

std::size_t CubicalComplex::total_cells() const {
  std::size_t total = 0;
  for (const auto& level : cells_) total += level.size();
  return total;
}

std::optional<std::size_t> CubicalComplex::index_of(int d, CellKey key) const {
  if (d < 0 || d > dimension()) return std::nullopt;
  const auto& level = cells_[static_cast<std::size_t>(d)];
  const auto it = std::lower_bound(level.begin(), level.end(), key);
  if (it == level.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - level.begin());
}

namespace {

class Enumerator {
 public:
  Enumerator(const CellSpace& space, const SubtreeFamily& family, std::size_t max_cells)
      : space_(space),
        lookup_(part_lookup(space, family)),
        hits_(static_cast<std::size_t>(family.part_count()), 0),
        unmet_(family.part_count()),
        max_cells_(max_cells) {}

  std::vector<std::vector<CellKey>> run() {
    if (unmet_ <= space_.length()) extend(0, 0, 0);
    return std::move(cells_);
  }

 private:
  void extend(int pos, CellKey prefix, int dim) {
    const int n = space_.length();
    if (pos == n) {
      if (unmet_ == 0) store(prefix, dim);
      return;
    }
    const int remaining = n - pos;
    // Entries meet at most one part each, so when every remaining slot is
    // needed the next entry must meet a part that is still unmet.
    const bool forced = unmet_ == remaining;
    for (int code = 1; code <= space_.max_code(); ++code) {
      const int part = lookup_[static_cast<std::size_t>(code)];
      const bool meets_new = part >= 0 && hits_[static_cast<std::size_t>(part)] == 0;
      if (forced && !meets_new) continue;
      if (part >= 0) {
        if (hits_[static_cast<std::size_t>(part)]++ == 0) --unmet_;
      }
      extend(pos + 1, prefix | (static_cast<CellKey>(code) << shift(pos)),
             dim + (space_.is_edge_code(code) ? 1 : 0));
      if (part >= 0) {
        if (--hits_[static_cast<std::size_t>(part)] == 0) ++unmet_;
      }
    }
  }

  int shift(int pos) const { return (space_.length() - 1 - pos) * field_bits(); }
  int field_bits() const { return std::bit_width(static_cast<unsigned>(space_.max_code())); }

  void store(CellKey key, int dim) {
    if (++produced_ > max_cells_) {
      throw CapExceeded("complex exceeds the cell cap of " + std::to_string(max_cells_));
    }
    if (static_cast<int>(cells_.size()) <= dim) cells_.resize(static_cast<std::size_t>(dim) + 1);
    cells_[static_cast<std::size_t>(dim)].push_back(key);
  }

  const CellSpace& space_;
  std::vector<int> lookup_;
  std::vector<int> hits_;
  int unmet_;
  std::size_t max_cells_;
  std::size_t produced_ = 0;
  std::vector<std::vector<CellKey>> cells_;
};

}  // namespace

CubicalComplex enumerate_complex(const SubtreeFamily& family, int n, std::size_t max_cells) {
  CellSpace space(family.tree(), n);
  auto cells = Enumerator(space, family, max_cells).run();
  return CubicalComplex(std::move(space), family, std::move(cells));
}

FVector f_vector(const CubicalComplex& complex) {
  FVector out;
  for (int d = 0; d <= complex.dimension(); ++d) out.push_back(complex.cell_count(d));
  return out;
}

std::vector<int> vertex_valencies(const CubicalComplex& complex) {
  std::vector<int> valency(complex.cell_count(0), 0);
  if (complex.dimension() < 1) return valency;
  for (CellKey edge : complex.cells(1)) {
    for (const auto& face : boundary(complex.space(), edge)) {
      ++valency[*complex.index_of(0, face.cell)];
    }
  }
  return valency;
}

std::map<int, std::size_t> valency_histogram(const CubicalComplex& complex) {
  std::map<int, std::size_t> hist;
  for (int v : vertex_valencies(complex)) ++hist[v];
  return hist;
}

bool DecompositionReport::vertex_pieces_match() const {
  return std::all_of(vertex_pieces.begin(), vertex_pieces.end(),
                     [](const VertexPiece& p) { return p.cells == p.expected; });
}

bool DecompositionReport::edge_pieces_match() const {
  return std::all_of(edge_pieces.begin(), edge_pieces.end(),
                     [&](const EdgePiece& p) { return p.cells == base_cells; });
}

bool DecompositionReport::cylinders_match() const {
  return std::all_of(edge_pieces.begin(), edge_pieces.end(),
                     [&](const EdgePiece& p) { return p.cylinder_cells == 3 * base_cells; });
}

bool DecompositionReport::partition_matches() const {
  std::uint64_t sum = 0;
  for (const auto& p : vertex_pieces) sum += p.cells;
  for (const auto& p : edge_pieces) sum += p.cells;
  return sum == total_cells;
}

DecompositionReport decompose_last_coordinate(const SubtreeFamily& family, int n, std::size_t max_cells) {
  if (n < family.part_count() + 1) {
    throw DomainError("decomposition needs n >= |S| + 1");
  }
  return decompose_last_coordinate(enumerate_complex(family, n, max_cells), max_cells);
}

DecompositionReport decompose_last_coordinate(const CubicalComplex& whole, std::size_t max_cells) {
  const SubtreeFamily& family = whole.family();
  const int n = whole.length();
  if (!family.all_singletons()) {
    throw DomainError("decomposition needs a family of single vertices");
  }
  if (n < family.part_count() + 1) {
    throw DomainError("decomposition needs n >= |S| + 1");
  }
  const LabeledTree& tree = family.tree();
  const int m = tree.vertex_count();
  const auto base = enumerate_complex(family, n - 1, max_cells);
  const CellSpace& space = whole.space();

  DecompositionReport report;
  report.total_cells = whole.total_cells();
  report.base_cells = base.total_cells();

  // Tally cells by last entry. A vertex-ending cell also belongs to the
  // cylinders at that vertex when its first n-1 entries already lie in
  // Str(T, S, n-1): always if the vertex is outside S, otherwise only when
  // the vertex repeats earlier.
  std::vector<std::uint64_t> by_last(static_cast<std::size_t>(space.max_code()) + 1, 0);
  std::vector<std::uint64_t> repeated_last(static_cast<std::size_t>(m) + 1, 0);
  for (int d = 0; d <= whole.dimension(); ++d) {
    for (CellKey key : whole.cells(d)) {
      const int last = space.entry(key, n - 1);
      ++by_last[static_cast<std::size_t>(last)];
      if (space.is_edge_code(last)) continue;
      if (family.part_of_vertex(last) < 0) {
        ++repeated_last[static_cast<std::size_t>(last)];
        continue;
      }
      for (int i = 0; i + 1 < n; ++i) {
        if (space.entry(key, i) == last) {
          ++repeated_last[static_cast<std::size_t>(last)];
          break;
        }
      }
    }
  }

  const auto singles = family.singleton_vertices();
  for (int v = 1; v <= m; ++v) {
    std::vector<int> rest;
    std::copy_if(singles.begin(), singles.end(), std::back_inserter(rest), [v](int s) { return s != v; });
    const auto reduced = enumerate_complex(SubtreeFamily::singletons(tree, rest), n - 1, max_cells);
    report.vertex_pieces.push_back({v, by_last[static_cast<std::size_t>(v)], reduced.total_cells()});
  }
  for (int id = 1; id < m; ++id) {
    const Edge& e = tree.edge(id);
    const std::uint64_t on_edge = by_last[static_cast<std::size_t>(space.edge_code(id))];
    const std::uint64_t cylinder = on_edge + repeated_last[static_cast<std::size_t>(e.tail)] +
                                   repeated_last[static_cast<std::size_t>(e.head)];
    report.edge_pieces.push_back({id, on_edge, cylinder});
  }
  return report;
}

}  // namespace stirling
