#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "vw/ring.hpp"

namespace vw {

/// Sparse integer vector, entries sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, mpz_class>>;

void axpy(SparseVec& y, const mpz_class& a, const SparseVec& x);  // y += a*x

/// Column-major sparse integer matrix.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec> columns;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), columns(c) {}

  std::size_t nnz() const;
  SparseMatrix transposed() const;
  /// Appends a column (entries must be sorted and in range).
  void append_column(SparseVec col);
  /// Dense form, rows of columns; for tests and small dumps.
  std::vector<std::vector<mpz_class>> dense() const;
  static SparseMatrix from_dense(const std::vector<std::vector<mpz_class>>& rows);

  bool is_zero() const { return nnz() == 0; }
};

/// Product a*b.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

struct SNFResult {
  std::vector<mpz_class> invariant_factors;  // positive, d_1 | d_2 | ...
  int rank = 0;
};

struct LinalgLimits {
  /// Largest dense remainder (rows*cols) handed to the dense Smith phase.
  std::size_t max_dense_entries = 40'000'000;
  /// Bit length above which an intermediate entry is considered runaway.
  std::size_t max_entry_bits = 1u << 20;
};

SNFResult smith_normal_form(const SparseMatrix& m, const LinalgLimits& limits = {});

/// Rank over F_p.
int rank_mod_p(const SparseMatrix& m, std::uint32_t p);

/// Rank over the ring's fraction field (Z and Q give the rational rank).
int rank_over(const SparseMatrix& m, const Ring& ring, const LinalgLimits& limits = {});

/// True when v lies in the Z-span of the columns of m.
bool in_integer_image(const SparseMatrix& m, const SparseVec& v, const LinalgLimits& limits = {});

/// Sublattice of Z^n kept in echelon form: every basis vector has a distinct
/// pivot (its smallest index) with a positive pivot entry.
class Lattice {
 public:
  void insert(SparseVec v);
  std::size_t rank() const { return basis_.size(); }
  /// Basis ordered by pivot.
  std::vector<SparseVec> basis() const;
  /// Coordinates of v in basis(), or nothing if v is not in the lattice.
  std::optional<SparseVec> coordinates(SparseVec v) const;

 private:
  std::map<int, SparseVec> basis_;  // pivot -> vector
  mutable std::map<int, int> ordinal_;
  mutable bool ordinal_valid_ = false;
};

}  // namespace vw
