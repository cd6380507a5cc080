#include "stirling/tree.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "stirling/error.hpp"

namespace stirling {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_label(std::string_view token, std::string_view context) {
  token = trim(token);
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("expected a vertex label, got '" + std::string(token) + "' in '" +
                     std::string(context) + "'");
  }
  if (value < 1) throw ParseError("vertex labels start at 1: '" + std::string(context) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

LabeledTree tree_from_pairs(const std::vector<Edge>& raw) {
  if (raw.empty()) throw ParseError("tree text contains no edges");
  int m = 0;
  for (const auto& e : raw) m = std::max({m, e.tail, e.head});
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (const auto& e : raw) {
    seen[static_cast<std::size_t>(e.tail)] = true;
    seen[static_cast<std::size_t>(e.head)] = true;
  }
  for (int v = 1; v <= m; ++v) {
    if (!seen[static_cast<std::size_t>(v)]) {
      throw ParseError("vertex labels must cover 1.." + std::to_string(m) + "; " +
                       std::to_string(v) + " is missing");
    }
  }
  return LabeledTree(m, raw);
}

}  // namespace

LabeledTree::LabeledTree(int vertex_count, std::vector<Edge> edges)
    : m_(vertex_count), edges_(std::move(edges)) {
  if (m_ < 1) throw ValidationError("a tree needs at least one vertex");
  for (auto& e : edges_) {
    if (e.tail == e.head) throw ValidationError("self-loop at vertex " + std::to_string(e.tail));
    if (e.tail > e.head) std::swap(e.tail, e.head);
    if (e.tail < 1 || e.head > m_) {
      throw ValidationError("edge " + std::to_string(e.tail) + "-" + std::to_string(e.head) +
                            " references a vertex outside 1.." + std::to_string(m_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw ValidationError("duplicate edge");
  }

  adjacency_.assign(static_cast<std::size_t>(m_), {});
  for (const auto& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.tail - 1)].push_back(e.head);
    adjacency_[static_cast<std::size_t>(e.head - 1)].push_back(e.tail);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  // Union-find detects the first cycle-closing edge; the edge count then
  // decides connectivity.
  std::vector<int> parent(static_cast<std::size_t>(m_) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& e : edges_) {
    const int a = find(e.tail);
    const int b = find(e.head);
    if (a == b) {
      throw ValidationError("cycle detected through edge " + std::to_string(e.tail) + "-" +
                            std::to_string(e.head));
    }
    parent[static_cast<std::size_t>(a)] = b;
  }
  if (static_cast<int>(edges_.size()) != m_ - 1) {
    throw ValidationError("graph on " + std::to_string(m_) + " vertices with " +
                          std::to_string(edges_.size()) + " edges is disconnected");
  }
}

LabeledTree LabeledTree::singleton() { return LabeledTree(1, {}); }

int LabeledTree::edge_id(int u, int v) const {
  const Edge key{std::min(u, v), std::max(u, v)};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return 0;
  return static_cast<int>(it - edges_.begin()) + 1;
}

std::string LabeledTree::serialize() const {
  std::string out;
  for (const auto& e : edges_) {
    out += std::to_string(e.tail) + " " + std::to_string(e.head) + "\n";
  }
  return out;
}

std::string LabeledTree::inline_form() const {
  std::string out;
  for (const auto& e : edges_) {
    if (!out.empty()) out += ',';
    out += std::to_string(e.tail) + "-" + std::to_string(e.head);
  }
  return out;
}

LabeledTree parse_tree(std::string_view text) {
  std::vector<Edge> raw;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream in{std::string(line)};
    std::string a, b, extra;
    if (!(in >> a >> b) || (in >> extra)) {
      throw ParseError("expected 'u v' on line '" + std::string(line) + "'");
    }
    raw.push_back({parse_label(a, line), parse_label(b, line)});
  }
  return tree_from_pairs(raw);
}

LabeledTree parse_inline_tree(std::string_view text) {
  std::vector<Edge> raw;
  for (auto item : split(trim(text), ',')) {
    item = trim(item);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      throw ParseError("expected 'u-v' in inline tree, got '" + std::string(item) + "'");
    }
    raw.push_back({parse_label(item.substr(0, dash), item), parse_label(item.substr(dash + 1), item)});
  }
  return tree_from_pairs(raw);
}

LabeledTree path_tree(int m) {
  std::vector<Edge> edges;
  for (int v = 1; v < m; ++v) edges.push_back({v, v + 1});
  return LabeledTree(m, std::move(edges));
}

LabeledTree star_tree(int m) {
  std::vector<Edge> edges;
  for (int v = 2; v <= m; ++v) edges.push_back({1, v});
  return LabeledTree(m, std::move(edges));
}

LabeledTree prufer_decode(int m, const std::vector<int>& sequence) {
  if (m < 1) throw DomainError("prufer_decode: m must be positive");
  if (m == 1) {
    if (!sequence.empty()) throw DomainError("prufer_decode: m=1 takes an empty sequence");
    return LabeledTree::singleton();
  }
  if (static_cast<int>(sequence.size()) != m - 2) {
    throw DomainError("prufer_decode: sequence length must be m-2");
  }
  std::vector<int> degree(static_cast<std::size_t>(m) + 1, 1);
  for (int x : sequence) {
    if (x < 1 || x > m) throw DomainError("prufer_decode: entry out of range");
    ++degree[static_cast<std::size_t>(x)];
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m) - 1);
  // Smallest-leaf scan; O(m^2) is irrelevant at m <= 8 but kept linear anyway.
  int ptr = 1;
  while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int x : sequence) {
    edges.push_back({leaf, x});
    --degree[static_cast<std::size_t>(leaf)];
    if (--degree[static_cast<std::size_t>(x)] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, m});
  return LabeledTree(m, std::move(edges));
}

std::vector<int> prufer_encode(const LabeledTree& tree) {
  const int m = tree.vertex_count();
  if (m < 2) throw DomainError("prufer_encode: need at least two vertices");
  std::vector<int> degree(static_cast<std::size_t>(m) + 1, 0);
  for (int v = 1; v <= m; ++v) degree[static_cast<std::size_t>(v)] = static_cast<int>(tree.neighbours(v).size());
  std::vector<bool> removed(static_cast<std::size_t>(m) + 1, false);
  std::vector<int> code;
  for (int step = 0; step < m - 2; ++step) {
    int leaf = 1;
    while (removed[static_cast<std::size_t>(leaf)] || degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
    for (int u : tree.neighbours(leaf)) {
      if (!removed[static_cast<std::size_t>(u)]) {
        code.push_back(u);
        --degree[static_cast<std::size_t>(u)];
        break;
      }
    }
    removed[static_cast<std::size_t>(leaf)] = true;
  }
  return code;
}

std::vector<LabeledTree> enumerate_trees(int m) {
  if (m < 1 || m > kMaxEnumeratedVertices) {
    throw DomainError("enumerate_trees: m must be in 1.." + std::to_string(kMaxEnumeratedVertices));
  }
  if (m <= 2) return {m == 1 ? LabeledTree::singleton() : path_tree(2)};
  std::vector<LabeledTree> out;
  std::vector<int> code(static_cast<std::size_t>(m) - 2, 1);
  while (true) {
    out.push_back(prufer_decode(m, code));
    // Odometer increment, last position fastest.
    std::size_t i = code.size();
    while (i > 0 && code[i - 1] == m) code[--i] = 1;
    if (i == 0) break;
    ++code[i - 1];
  }
  return out;
}

std::vector<LabeledTree> sample_trees(int m, std::size_t count, std::uint64_t seed) {
  if (m < 1) throw DomainError("sample_trees: m must be positive");
  if (m <= 2) return std::vector<LabeledTree>(count, m == 1 ? LabeledTree::singleton() : path_tree(2));
  // Raw engine output keeps the sample identical across standard libraries.
  std::mt19937_64 rng(seed);
  std::vector<LabeledTree> out;
  out.reserve(count);
  std::vector<int> code(static_cast<std::size_t>(m) - 2);
  for (std::size_t k = 0; k < count; ++k) {
    for (auto& x : code) x = static_cast<int>(rng() % static_cast<std::uint64_t>(m)) + 1;
    out.push_back(prufer_decode(m, code));
  }
  return out;
}

SubtreeFamily::SubtreeFamily(LabeledTree tree, std::vector<std::vector<int>> parts)
    : tree_(std::move(tree)), parts_(std::move(parts)) {
  const int m = tree_.vertex_count();
  vertex_part_.assign(static_cast<std::size_t>(m), -1);
  for (auto& part : parts_) {
    if (part.empty()) throw ValidationError("family contains an empty part");
    std::sort(part.begin(), part.end());
    if (std::adjacent_find(part.begin(), part.end()) != part.end()) {
      throw ValidationError("a part lists the same vertex twice");
    }
    for (int v : part) {
      if (v < 1 || v > m) throw ValidationError("part vertex " + std::to_string(v) + " is not in the tree");
    }
  }
  std::sort(parts_.begin(), parts_.end());
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    for (int v : parts_[i]) {
      auto& slot = vertex_part_[static_cast<std::size_t>(v - 1)];
      if (slot != -1) throw ValidationError("parts overlap at vertex " + std::to_string(v));
      slot = static_cast<int>(i);
    }
  }
  // Connectivity of the induced subgraph: BFS restricted to the part.
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& part = parts_[i];
    std::vector<int> stack{part.front()};
    std::set<int> reached{part.front()};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : tree_.neighbours(v)) {
        if (vertex_part_[static_cast<std::size_t>(u - 1)] == static_cast<int>(i) && reached.insert(u).second) {
          stack.push_back(u);
        }
      }
    }
    if (reached.size() != part.size()) {
      std::string desc;
      for (int v : part) desc += (desc.empty() ? "" : ",") + std::to_string(v);
      throw ValidationError("part {" + desc + "} does not induce a connected subtree");
    }
  }
}

SubtreeFamily SubtreeFamily::singletons(const LabeledTree& tree, const std::vector<int>& vertices) {
  std::vector<std::vector<int>> parts;
  parts.reserve(vertices.size());
  for (int v : vertices) parts.push_back({v});
  return SubtreeFamily(tree, std::move(parts));
}

SubtreeFamily SubtreeFamily::all_vertices(const LabeledTree& tree) {
  std::vector<int> all(static_cast<std::size_t>(tree.vertex_count()));
  std::iota(all.begin(), all.end(), 1);
  return singletons(tree, all);
}

bool SubtreeFamily::all_singletons() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p.size() == 1; });
}

std::vector<int> SubtreeFamily::singleton_vertices() const {
  if (!all_singletons()) throw DomainError("family has a part with more than one vertex");
  std::vector<int> out;
  for (const auto& p : parts_) out.push_back(p.front());
  return out;
}

int SubtreeFamily::part_of_edge(int edge_id) const {
  const Edge& e = tree_.edge(edge_id);
  const int a = part_of_vertex(e.tail);
  return a == part_of_vertex(e.head) ? a : -1;
}

std::string SubtreeFamily::describe() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (const auto& part : parts_) {
    if (!out.empty()) out += ',';
    out += '{';
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(part[i]);
    }
    out += '}';
  }
  return out;
}

SubtreeFamily validate_family(const LabeledTree& tree, std::vector<std::vector<int>> parts) {
  return SubtreeFamily(tree, std::move(parts));
}

SubtreeFamily parse_family_spec(const LabeledTree& tree, std::string_view spec) {
  spec = trim(spec);
  if (spec == "all") return SubtreeFamily::all_vertices(tree);
  if (spec.empty() || spec == "none") return SubtreeFamily(tree, {});
  std::vector<std::vector<int>> parts;
  if (spec.find('{') == std::string_view::npos) {
    for (auto token : split(spec, ',')) parts.push_back({parse_label(token, spec)});
    return SubtreeFamily(tree, std::move(parts));
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    if (spec[pos] == ',' || spec[pos] == ' ') {
      ++pos;
      continue;
    }
    if (spec[pos] != '{') throw ParseError("expected '{' in family spec '" + std::string(spec) + "'");
    const auto close = spec.find('}', pos);
    if (close == std::string_view::npos) throw ParseError("unbalanced '{' in family spec");
    std::vector<int> part;
    const auto body = trim(spec.substr(pos + 1, close - pos - 1));
    if (!body.empty()) {
      for (auto token : split(body, ',')) part.push_back(parse_label(token, spec));
    }
    parts.push_back(std::move(part));
    pos = close + 1;
  }
  return SubtreeFamily(tree, std::move(parts));
}

}  // namespace stirling
