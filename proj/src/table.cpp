#include "coclust/table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coclust {

namespace {

std::string at(int i, int j) {
  return "at row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1);
}

void check_value(double v, int i, int j) {
  if (!std::isfinite(v))
    throw ValidationError(errc::non_finite_entry, "entry " + at(i, j));
  if (v < 0.0)
    throw ValidationError(errc::negative_entry, "entry " + at(i, j));
}

}  // namespace

IndexSubset IndexSubset::of_rows(std::vector<int> indices) {
  IndexSubset s;
  s.axis = Axis::rows;
  s.members = std::move(indices);
  std::sort(s.members.begin(), s.members.end());
  s.members.erase(std::unique(s.members.begin(), s.members.end()),
                  s.members.end());
  if (!s.members.empty() && s.members.front() < 0)
    throw ValidationError(errc::index_out_of_range, "negative index");
  return s;
}

IndexSubset IndexSubset::of_columns(std::vector<int> indices) {
  IndexSubset s = of_rows(std::move(indices));
  s.axis = Axis::columns;
  return s;
}

IndexSubset IndexSubset::all(Axis axis, int extent) {
  IndexSubset s;
  s.axis = axis;
  s.members.resize(extent);
  for (int i = 0; i < extent; ++i) s.members[i] = i;
  return s;
}

void ContingencyTable::compute_margins() {
  row_sums_ = Eigen::VectorXd::Zero(n_);
  col_sums_ = Eigen::VectorXd::Zero(m_);
  double total = 0.0;
  for_each_nonzero([&](int i, int j, double v) {
    row_sums_[i] += v;
    col_sums_[j] += v;
    total += v;
  });
  for (int i = 0; i < n_; ++i)
    if (row_sums_[i] <= 0.0)
      throw ValidationError(errc::zero_row,
                            "row " + std::to_string(i + 1) + " sums to zero");
  for (int j = 0; j < m_; ++j)
    if (col_sums_[j] <= 0.0)
      throw ValidationError(
          errc::zero_column, "column " + std::to_string(j + 1) + " sums to zero");
  total_ = total;
  original_total_ = total;
}

ContingencyTable build_table(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 1 || raw.cols() < 1)
    throw ValidationError(errc::dimension_mismatch, "table must be at least 1x1");
  ContingencyTable t;
  t.n_ = static_cast<int>(raw.rows());
  t.m_ = static_cast<int>(raw.cols());
  for (int i = 0; i < t.n_; ++i)
    for (int j = 0; j < t.m_; ++j) check_value(raw(i, j), i, j);
  if (static_cast<std::int64_t>(t.n_) * t.m_ <= ContingencyTable::kDenseCellLimit) {
    t.dense_ = raw;
  } else {
    for (int i = 0; i < t.n_; ++i)
      for (int j = 0; j < t.m_; ++j)
        if (raw(i, j) != 0.0) t.nnz_.push_back({i, j, raw(i, j)});
  }
  t.compute_margins();
  return t;
}

ContingencyTable build_table(int n_rows, int n_cols, std::vector<Entry> entries) {
  if (n_rows < 1 || n_cols < 1)
    throw ValidationError(errc::dimension_mismatch, "table must be at least 1x1");
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols)
      throw ValidationError(errc::index_out_of_range, "entry " + at(e.row, e.col));
    check_value(e.value, e.row, e.col);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  // Sum duplicate coordinates.
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const Entry& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  ContingencyTable t;
  t.n_ = n_rows;
  t.m_ = n_cols;
  if (static_cast<std::int64_t>(n_rows) * n_cols <= ContingencyTable::kDenseCellLimit) {
    t.dense_ = Eigen::MatrixXd::Zero(n_rows, n_cols);
    for (const Entry& e : merged) t.dense_(e.row, e.col) = e.value;
  } else {
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Entry& e) { return e.value == 0.0; }),
                 merged.end());
    t.nnz_ = std::move(merged);
  }
  t.compute_margins();
  return t;
}

double ContingencyTable::entry(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= m_)
    throw ValidationError(errc::index_out_of_range, at(i, j));
  if (dense_.size() > 0) return dense_(i, j);
  Entry probe{i, j, 0.0};
  auto it = std::lower_bound(nnz_.begin(), nnz_.end(), probe,
                             [](const Entry& a, const Entry& b) {
                               return a.row != b.row ? a.row < b.row : a.col < b.col;
                             });
  if (it != nnz_.end() && it->row == i && it->col == j) return it->value;
  return 0.0;
}

Eigen::MatrixXd ContingencyTable::dense() const {
  if (dense_.size() > 0) return dense_;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, m_);
  for (const Entry& e : nnz_) out(e.row, e.col) = e.value;
  return out;
}

ContingencyTable ContingencyTable::normalize_total() const {
  ContingencyTable t(*this);
  if (total_ == 1.0) return t;
  const double scale = 1.0 / total_;
  if (t.dense_.size() > 0)
    t.dense_ *= scale;
  else
    for (Entry& e : t.nnz_) e.value *= scale;
  t.row_sums_ *= scale;
  t.col_sums_ *= scale;
  t.total_ = 1.0;
  t.original_total_ = original_total_;
  return t;
}

bool ContingencyTable::is_nondecomposable() const {
  // Breadth-first search on the bipartite support graph; nodes 0..n-1 are
  // rows, n..n+m-1 are columns.
  std::vector<std::vector<int>> row_adj(n_), col_adj(m_);
  for_each_nonzero([&](int i, int j, double v) {
    if (v > 0.0) {
      row_adj[i].push_back(j);
      col_adj[j].push_back(i);
    }
  });
  std::vector<char> row_seen(n_, 0), col_seen(m_, 0);
  std::vector<int> stack{0};
  row_seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    if (node < n_) {
      for (int j : row_adj[node])
        if (!col_seen[j]) {
          col_seen[j] = 1;
          ++reached;
          stack.push_back(n_ + j);
        }
    } else {
      for (int i : col_adj[node - n_])
        if (!row_seen[i]) {
          row_seen[i] = 1;
          ++reached;
          stack.push_back(i);
        }
    }
  }
  return reached == n_ + m_;
}

double ContingencyTable::volume(const IndexSubset& subset) const {
  const Eigen::VectorXd& margin =
      subset.axis == Axis::rows ? row_sums_ : col_sums_;
  const int extent = subset.axis == Axis::rows ? n_ : m_;
  double vol = 0.0;
  for (int idx : subset.members) {
    if (idx < 0 || idx >= extent)
      throw ValidationError(errc::index_out_of_range,
                            "subset index " + std::to_string(idx + 1));
    vol += margin[idx];
  }
  return vol;
}

double ContingencyTable::cut(const IndexSubset& rows, const IndexSubset& cols) const {
  if (rows.axis != Axis::rows || cols.axis != Axis::columns)
    throw ValidationError(errc::dimension_mismatch,
                          "cut expects a row subset and a column subset");
  std::vector<char> in_rows(n_, 0), in_cols(m_, 0);
  for (int i : rows.members) {
    if (i < 0 || i >= n_)
      throw ValidationError(errc::index_out_of_range,
                            "row index " + std::to_string(i + 1));
    in_rows[i] = 1;
  }
  for (int j : cols.members) {
    if (j < 0 || j >= m_)
      throw ValidationError(errc::index_out_of_range,
                            "column index " + std::to_string(j + 1));
    in_cols[j] = 1;
  }
  double sum = 0.0;
  for_each_nonzero([&](int i, int j, double v) {
    if (in_rows[i] && in_cols[j]) sum += v;
  });
  return sum;
}

DropEmptyResult drop_empty(const Eigen::MatrixXd& raw) {
  DropEmptyResult result;
  std::vector<int> keep_rows, keep_cols;
  for (int i = 0; i < raw.rows(); ++i) {
    if (raw.row(i).sum() > 0.0)
      keep_rows.push_back(i);
    else
      result.dropped_rows.push_back(i);
  }
  for (int j = 0; j < raw.cols(); ++j) {
    if (raw.col(j).sum() > 0.0)
      keep_cols.push_back(j);
    else
      result.dropped_cols.push_back(j);
  }
  result.matrix.resize(keep_rows.size(), keep_cols.size());
  for (size_t a = 0; a < keep_rows.size(); ++a)
    for (size_t b = 0; b < keep_cols.size(); ++b)
      result.matrix(a, b) = raw(keep_rows[a], keep_cols[b]);
  return result;
}

}  // namespace coclust
