#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "coclust/errors.hpp"

namespace coclust {

enum class Axis { rows, columns };

// Sorted, duplicate-free index set over one axis of a table.
struct IndexSubset {
  Axis axis = Axis::rows;
  std::vector<int> members;

  static IndexSubset of_rows(std::vector<int> indices);
  static IndexSubset of_columns(std::vector<int> indices);
  static IndexSubset all(Axis axis, int extent);

  bool empty() const { return members.empty(); }
  int size() const { return static_cast<int>(members.size()); }
};

struct Entry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Immutable nonnegative table with cached margins. Dense storage below
// kDenseCellLimit cells, coordinate-sparse above; both walk entries in
// row-major order.
class ContingencyTable {
 public:
  static constexpr std::int64_t kDenseCellLimit = 1'000'000;

  int n_rows() const { return n_; }
  int n_cols() const { return m_; }
  double entry(int i, int j) const;
  const Eigen::VectorXd& row_sums() const { return row_sums_; }
  const Eigen::VectorXd& col_sums() const { return col_sums_; }
  double total() const { return total_; }
  double original_total() const { return original_total_; }
  bool is_dense() const { return dense_.size() > 0; }
  bool is_normalized() const { return std::abs(total_ - 1.0) <= 1e-12; }

  Eigen::MatrixXd dense() const;

  // Visits stored nonzero entries in row-major order.
  template <class F>
  void for_each_nonzero(F&& f) const {
    if (dense_.size() > 0) {
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < m_; ++j)
          if (dense_(i, j) != 0.0) f(i, j, dense_(i, j));
    } else {
      for (const Entry& e : nnz_) f(e.row, e.col, e.value);
    }
  }

  // Entries divided by the current total; margins rescaled consistently,
  // original_total preserved. Normalizing a normalized table is the identity.
  ContingencyTable normalize_total() const;

  // True iff the bipartite support graph on rows+columns is connected,
  // equivalently C*C^T is irreducible given the positive margins.
  bool is_nondecomposable() const;

  // Margin mass of a subset: Vol(R) = sum of d_row over R (or d_col).
  double volume(const IndexSubset& subset) const;

  // Total mass of the rectangle rows x cols: c(R,C).
  double cut(const IndexSubset& rows, const IndexSubset& cols) const;

  friend ContingencyTable build_table(const Eigen::MatrixXd& raw);
  friend ContingencyTable build_table(int n_rows, int n_cols,
                                      std::vector<Entry> entries);

 private:
  ContingencyTable() = default;
  void compute_margins();

  int n_ = 0;
  int m_ = 0;
  Eigen::MatrixXd dense_;
  std::vector<Entry> nnz_;  // row-major sorted, used when dense_ is empty
  Eigen::VectorXd row_sums_;
  Eigen::VectorXd col_sums_;
  double total_ = 0.0;
  double original_total_ = 0.0;
};

// Validates entries (finite, nonnegative, no zero row/column) and caches
// margins. Does not normalize.
ContingencyTable build_table(const Eigen::MatrixXd& raw);

// Coordinate-entry construction; duplicate coordinates are summed.
ContingencyTable build_table(int n_rows, int n_cols, std::vector<Entry> entries);

// Preprocessing helper: removes identically zero rows/columns and reports
// which ones were dropped. Zero margins are otherwise a hard build error.
struct DropEmptyResult {
  Eigen::MatrixXd matrix;
  std::vector<int> dropped_rows;
  std::vector<int> dropped_cols;
};
DropEmptyResult drop_empty(const Eigen::MatrixXd& raw);

}  // namespace coclust
