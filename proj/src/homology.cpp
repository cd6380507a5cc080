#include "stirling/homology.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "stirling/error.hpp"

namespace stirling {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t q = 2; q * q <= value; ++q) {
    if (value % q == 0) return false;
  }
  return true;
}

namespace {

void require_boundary_degree(const CubicalComplex& complex, int d) {
  if (d < 1 || d > complex.dimension()) {
    throw DomainError("boundary degree " + std::to_string(d) + " outside 1.." +
                      std::to_string(complex.dimension()));
  }
}

// Column j lists (row, sign) of the faces of the j-th d-cell, rows ascending.
template <typename Emit>
void for_each_boundary_column(const CubicalComplex& complex, int d, Emit&& emit) {
  std::vector<std::pair<std::uint32_t, int>> column;
  for (CellKey cell : complex.cells(d)) {
    column.clear();
    for (const auto& face : boundary(complex.space(), cell)) {
      const auto row = complex.index_of(d - 1, face.cell);
      if (!row) {
        throw Error("face " + complex.space().serialize(face.cell) + " of " +
                    complex.space().serialize(cell) + " is missing from the complex");
      }
      column.emplace_back(static_cast<std::uint32_t>(*row), face.sign);
    }
    std::sort(column.begin(), column.end());
    emit(column);
  }
}

}  // namespace

SparseMatrixModP boundary_matrix(const CubicalComplex& complex, int d, std::uint32_t p) {
  require_boundary_degree(complex, d);
  if (!is_prime(p) || p >= (1u << 31)) throw DomainError("modulus " + std::to_string(p) + " is not a usable prime");
  SparseMatrixModP matrix;
  matrix.rows = complex.cell_count(d - 1);
  matrix.p = p;
  matrix.columns.reserve(complex.cell_count(d));
  for_each_boundary_column(complex, d, [&](const auto& column) {
    auto& out = matrix.columns.emplace_back();
    out.reserve(column.size());
    for (const auto& [row, sign] : column) out.emplace_back(row, sign > 0 ? 1u : p - 1);
  });
  return matrix;
}

SparseIntMatrix integer_boundary_matrix(const CubicalComplex& complex, int d) {
  require_boundary_degree(complex, d);
  SparseIntMatrix matrix;
  matrix.rows = complex.cell_count(d - 1);
  matrix.columns.reserve(complex.cell_count(d));
  for_each_boundary_column(complex, d, [&](const auto& column) {
    auto& out = matrix.columns.emplace_back();
    for (const auto& [row, sign] : column) out.emplace_back(row, BigCount(sign));
  });
  return matrix;
}

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

}  // namespace

EliminationResult eliminate(const SparseMatrixModP& matrix, const std::vector<bool>& skip_columns) {
  const std::size_t rows = matrix.rows;
  const std::size_t cols = matrix.cols();
  const std::uint32_t p = matrix.p;
  EliminationResult result;

  std::vector<bool> col_live(cols, true);
  std::vector<bool> row_live(rows, true);
  std::vector<std::uint32_t> col_count(cols, 0);
  std::vector<std::uint32_t> row_count(rows, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    if (!skip_columns.empty() && skip_columns[c]) {
      col_live[c] = false;
      continue;
    }
    col_count[c] = static_cast<std::uint32_t>(matrix.columns[c].size());
    for (const auto& [r, v] : matrix.columns[c]) ++row_count[r];
  }

  // Row -> columns pattern (CSR) over live columns.
  std::vector<std::size_t> row_start(rows + 1, 0);
  for (std::size_t r = 0; r < rows; ++r) row_start[r + 1] = row_start[r] + row_count[r];
  std::vector<std::uint32_t> row_cols(row_start[rows]);
  {
    std::vector<std::size_t> fill(row_start.begin(), row_start.end() - 1);
    for (std::size_t c = 0; c < cols; ++c) {
      if (!col_live[c]) continue;
      for (const auto& [r, v] : matrix.columns[c]) row_cols[fill[r]++] = static_cast<std::uint32_t>(c);
    }
  }

  // Phase 1: singleton pivots. A live row or column with one live entry
  // can be pivoted without touching any other live entry.
  std::vector<std::uint32_t> single_cols;
  std::vector<std::uint32_t> single_rows;
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_live[c] && col_count[c] == 1) single_cols.push_back(static_cast<std::uint32_t>(c));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_count[r] == 1) single_rows.push_back(static_cast<std::uint32_t>(r));
  }

  auto retire = [&](std::uint32_t r, std::uint32_t c) {
    ++result.rank;
    result.pivot_rows.push_back(r);
    col_live[c] = false;
    row_live[r] = false;
    for (const auto& [rr, v] : matrix.columns[c]) {
      if (row_live[rr] && --row_count[rr] == 1) single_rows.push_back(rr);
    }
    for (std::size_t k = row_start[r]; k < row_start[r + 1]; ++k) {
      const auto cc = row_cols[k];
      if (col_live[cc] && --col_count[cc] == 1) single_cols.push_back(cc);
    }
  };

  while (!single_cols.empty() || !single_rows.empty()) {
    if (!single_cols.empty()) {
      const auto c = single_cols.back();
      single_cols.pop_back();
      if (!col_live[c] || col_count[c] != 1) continue;
      for (const auto& [r, v] : matrix.columns[c]) {
        if (row_live[r]) {
          retire(r, c);
          break;
        }
      }
    } else {
      const auto r = single_rows.back();
      single_rows.pop_back();
      if (!row_live[r] || row_count[r] != 1) continue;
      for (std::size_t k = row_start[r]; k < row_start[r + 1]; ++k) {
        if (col_live[row_cols[k]]) {
          retire(r, row_cols[k]);
          break;
        }
      }
    }
  }

  // Phase 2: left-looking elimination of what is left. Pivot columns are
  // stored normalized (pivot entry 1); each has no entry in any row that
  // became a pivot before it, so reducing in registration order terminates.
  std::vector<std::uint32_t> order;
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_live[c] && col_count[c] > 0) order.push_back(static_cast<std::uint32_t>(c));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return col_count[a] < col_count[b]; });

  std::vector<std::uint32_t> registration(rows, kNone);
  std::vector<std::vector<SparseMatrixModP::Entry>> pivots;
  std::vector<std::uint32_t> acc(rows, 0);
  std::vector<bool> touched_flag(rows, false);
  std::vector<bool> queued(rows, false);
  std::vector<std::uint32_t> touched;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> pending;

  auto touch = [&](std::uint32_t r) {
    if (!touched_flag[r]) {
      touched_flag[r] = true;
      touched.push_back(r);
    }
    const auto reg = registration[r];
    if (reg != kNone && acc[r] != 0 && !queued[r]) {
      queued[r] = true;
      pending.push(reg);
    }
  };

  for (const auto c : order) {
    for (const auto& [r, v] : matrix.columns[c]) {
      if (!row_live[r]) continue;
      acc[r] = v;
      touch(r);
    }
    while (!pending.empty()) {
      const auto reg = pending.top();
      pending.pop();
      const auto& pivot = pivots[reg];
      const auto prow = pivot.front().first;  // pivot entry stored first
      queued[prow] = false;
      const std::uint64_t factor = acc[prow];
      if (factor == 0) continue;
      for (const auto& [r, v] : pivot) {
        acc[r] = static_cast<std::uint32_t>((acc[r] + (p - factor) * v) % p);
        touch(r);
      }
    }

    std::uint32_t best = kNone;
    for (const auto r : touched) {
      if (acc[r] == 0) continue;
      if (best == kNone || row_count[r] < row_count[best] || (row_count[r] == row_count[best] && r < best)) {
        best = r;
      }
    }
    if (best != kNone) {
      const std::uint64_t inv = inverse_mod(acc[best], p);
      std::vector<SparseMatrixModP::Entry> stored;
      stored.emplace_back(best, 1);
      for (const auto r : touched) {
        if (r != best && acc[r] != 0) stored.emplace_back(r, static_cast<std::uint32_t>(acc[r] * inv % p));
      }
      registration[best] = static_cast<std::uint32_t>(pivots.size());
      pivots.push_back(std::move(stored));
      ++result.rank;
      result.pivot_rows.push_back(best);
    }
    for (const auto r : touched) {
      acc[r] = 0;
      touched_flag[r] = false;
    }
    touched.clear();
  }
  return result;
}

std::size_t rank(const SparseMatrixModP& matrix) { return eliminate(matrix).rank; }

std::vector<std::int64_t> BettiProfile::reduced() const {
  std::vector<std::int64_t> out(betti.begin(), betti.end());
  if (!out.empty()) out[0] -= 1;
  return out;
}

BettiProfile betti(const CubicalComplex& complex, std::uint32_t p) {
  BettiProfile profile;
  profile.p = p;
  const int top = complex.dimension();
  if (top < 0) return profile;
  profile.ranks.assign(static_cast<std::size_t>(top) + 1, 0);
  std::vector<bool> cleared;
  for (int d = top; d >= 1; --d) {
    const auto matrix = boundary_matrix(complex, d, p);
    const auto result = eliminate(matrix, cleared);
    profile.ranks[static_cast<std::size_t>(d)] = result.rank;
    cleared.assign(matrix.rows, false);
    for (auto r : result.pivot_rows) cleared[r] = true;
  }
  profile.betti.resize(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) {
    const auto up = d < top ? profile.ranks[static_cast<std::size_t>(d) + 1] : 0;
    profile.betti[static_cast<std::size_t>(d)] =
        complex.cell_count(d) - profile.ranks[static_cast<std::size_t>(d)] - up;
  }
  return profile;
}

bool SNFDiagnostics::torsion_free() const {
  return std::all_of(divisors.begin(), divisors.end(), [](const BigCount& x) { return x == 1; });
}

namespace {

// Dense Smith normal form by repeated division with remainder. Only used on
// whatever the unit-pivot pass could not resolve, which is tiny in practice.
std::vector<BigCount> dense_snf(std::vector<std::vector<BigCount>> a) {
  std::vector<BigCount> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero magnitude in the trailing block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const BigCount q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const BigCount q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row into row t and repeat.
      for (std::size_t i = t + 1; i < rows && clean; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            clean = false;
            break;
          }
        }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

std::vector<BigCount> elementary_divisors(const SparseIntMatrix& matrix) {
  const std::size_t rows = matrix.rows;
  const std::size_t cols = matrix.cols();
  std::vector<std::uint32_t> row_count(rows, 0);
  for (const auto& col : matrix.columns) {
    for (const auto& [r, v] : col) ++row_count[r];
  }

  std::vector<std::uint32_t> order(cols);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return matrix.columns[a].size() < matrix.columns[b].size();
  });

  // Left-looking column reduction over Z with unit pivots only: every step
  // is a unimodular column operation, and a +-1 pivot splits off a divisor 1.
  std::vector<std::uint32_t> registration(rows, kNone);
  std::vector<std::vector<SparseIntMatrix::Entry>> pivots;
  std::vector<BigCount> acc(rows);
  std::vector<bool> touched_flag(rows, false);
  std::vector<bool> queued(rows, false);
  std::vector<std::uint32_t> touched;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> pending;

  auto touch = [&](std::uint32_t r) {
    if (!touched_flag[r]) {
      touched_flag[r] = true;
      touched.push_back(r);
    }
    if (registration[r] != kNone && acc[r] != 0 && !queued[r]) {
      queued[r] = true;
      pending.push(registration[r]);
    }
  };

  // Returns the reduced column if it is nonzero without a unit entry.
  auto reduce = [&](const std::vector<SparseIntMatrix::Entry>& column) {
    for (const auto& [r, v] : column) {
      acc[r] = v;
      touch(r);
    }
    while (!pending.empty()) {
      const auto reg = pending.top();
      pending.pop();
      const auto& pivot = pivots[reg];
      const auto prow = pivot.front().first;
      queued[prow] = false;
      if (acc[prow] == 0) continue;
      const BigCount factor = acc[prow] * pivot.front().second;  // pivot is +-1
      for (const auto& [r, v] : pivot) {
        acc[r] -= factor * v;
        touch(r);
      }
    }
    std::uint32_t best = kNone;
    bool nonzero = false;
    for (const auto r : touched) {
      if (acc[r] == 0) continue;
      nonzero = true;
      if (abs(acc[r]) == 1 && (best == kNone || row_count[r] < row_count[best])) best = r;
    }
    std::vector<SparseIntMatrix::Entry> leftover;
    if (best != kNone) {
      std::vector<SparseIntMatrix::Entry> stored;
      stored.emplace_back(best, acc[best]);
      for (const auto r : touched) {
        if (r != best && acc[r] != 0) stored.emplace_back(r, acc[r]);
      }
      registration[best] = static_cast<std::uint32_t>(pivots.size());
      pivots.push_back(std::move(stored));
    } else if (nonzero) {
      for (const auto r : touched) {
        if (acc[r] != 0) leftover.emplace_back(r, acc[r]);
      }
      std::sort(leftover.begin(), leftover.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    for (const auto r : touched) {
      acc[r] = 0;
      touched_flag[r] = false;
    }
    touched.clear();
    return leftover;
  };

  std::vector<std::vector<SparseIntMatrix::Entry>> residual;
  for (const auto c : order) {
    auto rest = reduce(matrix.columns[c]);
    if (!rest.empty()) residual.push_back(std::move(rest));
  }
  // Residual columns may have picked up units against later pivots.
  bool progress = true;
  while (progress && !residual.empty()) {
    progress = false;
    const std::size_t before = pivots.size();
    std::vector<std::vector<SparseIntMatrix::Entry>> next;
    for (const auto& column : residual) {
      auto rest = reduce(column);
      if (!rest.empty()) next.push_back(std::move(rest));
    }
    progress = pivots.size() != before;
    residual = std::move(next);
  }

  std::vector<BigCount> divisors(pivots.size(), BigCount(1));
  if (!residual.empty()) {
    std::vector<std::uint32_t> used_rows;
    for (const auto& column : residual) {
      for (const auto& [r, v] : column) used_rows.push_back(r);
    }
    std::sort(used_rows.begin(), used_rows.end());
    used_rows.erase(std::unique(used_rows.begin(), used_rows.end()), used_rows.end());
    std::vector<std::vector<BigCount>> dense(used_rows.size(), std::vector<BigCount>(residual.size()));
    for (std::size_t j = 0; j < residual.size(); ++j) {
      for (const auto& [r, v] : residual[j]) {
        const auto i = std::lower_bound(used_rows.begin(), used_rows.end(), r) - used_rows.begin();
        dense[static_cast<std::size_t>(i)][j] = v;
      }
    }
    for (auto& x : dense_snf(std::move(dense))) divisors.push_back(std::move(x));
  }
  return divisors;
}

SNFDiagnostics smith_normal_form(const CubicalComplex& complex, int d, std::size_t max_columns) {
  require_boundary_degree(complex, d);
  if (complex.cell_count(d) > max_columns) {
    throw CapExceeded("boundary in degree " + std::to_string(d) + " has " +
                      std::to_string(complex.cell_count(d)) + " columns, SNF cap is " +
                      std::to_string(max_columns));
  }
  return {d, elementary_divisors(integer_boundary_matrix(complex, d))};
}

std::size_t connected_components(const CubicalComplex& complex) {
  const std::size_t vertices = complex.cell_count(0);
  std::vector<std::size_t> parent(vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = vertices;
  if (complex.dimension() >= 1) {
    for (CellKey edge : complex.cells(1)) {
      const auto faces = boundary(complex.space(), edge);
      const auto a = find(*complex.index_of(0, faces[0].cell));
      const auto b = find(*complex.index_of(0, faces[1].cell));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

bool chain_axiom_holds(const CubicalComplex& complex) {
  std::vector<std::pair<CellKey, int>> terms;
  for (int d = 2; d <= complex.dimension(); ++d) {
    for (CellKey cell : complex.cells(d)) {
      terms.clear();
      for (const auto& face : boundary(complex.space(), cell)) {
        for (const auto& sub : boundary(complex.space(), face.cell)) {
          terms.emplace_back(sub.cell, face.sign * sub.sign);
        }
      }
      std::sort(terms.begin(), terms.end());
      for (std::size_t i = 0; i < terms.size();) {
        int sum = 0;
        std::size_t j = i;
        for (; j < terms.size() && terms[j].first == terms[i].first; ++j) sum += terms[j].second;
        if (sum != 0) return false;
        i = j;
      }
    }
  }
  return true;
}

}  // namespace stirling
