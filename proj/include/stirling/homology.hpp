#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "stirling/complex.hpp"
#include "stirling/counting.hpp"

namespace stirling {

/// Column-major sparse matrix over GF(p). Row indices strictly increase
/// within a column and stored residues lie in [1, p-1].
struct SparseMatrixModP {
  using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (row, residue)

  std::size_t rows = 0;
  std::uint32_t p = 2;
  std::vector<std::vector<Entry>> columns;

  std::size_t cols() const { return columns.size(); }
};

/// Column-major sparse integer matrix.
struct SparseIntMatrix {
  using Entry = std::pair<std::uint32_t, BigCount>;

  std::size_t rows = 0;
  std::vector<std::vector<Entry>> columns;

  std::size_t cols() const { return columns.size(); }
};

inline constexpr std::uint32_t kDefaultLargePrime = 32749;
inline constexpr std::size_t kDefaultSnfMaxColumns = 5000;

bool is_prime(std::uint64_t value);

/// Matrix of d_d (d-cells -> (d-1)-cells) in the canonical cell bases.
/// Throws DomainError for d outside 1..dim or p not a prime below 2^31.
SparseMatrixModP boundary_matrix(const CubicalComplex& complex, int d, std::uint32_t p);

/// Same operator with integer entries.
SparseIntMatrix integer_boundary_matrix(const CubicalComplex& complex, int d);

struct EliminationResult {
  std::size_t rank = 0;
  std::vector<std::uint32_t> pivot_rows;  // rows of a nonsingular rank x rank minor
};

/**
 * Gaussian elimination over GF(p).
 *
 * Rows or columns with a single live entry are pivoted first (no fill);
 * the remainder is reduced column by column, each new pivot taken in the
 * row with the fewest live entries. `skip_columns`, when non-empty, marks
 * columns to leave out.
 */
EliminationResult eliminate(const SparseMatrixModP& matrix, const std::vector<bool>& skip_columns = {});

/// Rank over GF(p).
std::size_t rank(const SparseMatrixModP& matrix);

struct BettiProfile {
  std::uint32_t p = 2;
  std::vector<std::uint64_t> betti;  // unreduced b_0..b_top
  std::vector<std::uint64_t> ranks;  // ranks[d] = rank of d_d, ranks[0] = 0

  /// b~_0 = b_0 - 1, higher degrees unchanged; empty for the empty complex.
  std::vector<std::int64_t> reduced() const;
};

/// Betti numbers over GF(p). Ranks are computed top-down; pivot rows of
/// d_{d+1} are cleared from d_d, which leaves its rank unchanged.
BettiProfile betti(const CubicalComplex& complex, std::uint32_t p);

struct SNFDiagnostics {
  int dimension = 0;
  std::vector<BigCount> divisors;  // nonzero elementary divisors, d_1 | d_2 | ...

  bool torsion_free() const;
};

/// Nonzero elementary divisors of an integer matrix.
std::vector<BigCount> elementary_divisors(const SparseIntMatrix& matrix);

/// Elementary divisors of d_d. Throws CapExceeded above `max_columns`.
SNFDiagnostics smith_normal_form(const CubicalComplex& complex, int d,
                                 std::size_t max_columns = kDefaultSnfMaxColumns);

/// Components of the 1-skeleton.
std::size_t connected_components(const CubicalComplex& complex);

/// d_{d-1} d_d = 0 with integer coefficients, checked cell by cell.
bool chain_axiom_holds(const CubicalComplex& complex);

}  // namespace stirling
