#include "coclust/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coclust/enumeration.hpp"

namespace coclust {

namespace {

void check_partition_pair(const ContingencyTable& table, const Partition& rows,
                          const Partition& cols) {
  if (static_cast<int>(rows.labels.size()) != table.n_rows() ||
      static_cast<int>(cols.labels.size()) != table.n_cols())
    throw ValidationError(errc::partition_mismatch,
                          "partition length does not match the table axis");
  if (rows.k != cols.k)
    throw ValidationError(errc::partition_mismatch,
                          "row and column partitions use different k");
}

struct BlockStats {
  Eigen::VectorXd row_volumes;  // k
  Eigen::VectorXd col_volumes;  // k
  Eigen::MatrixXd cuts;         // k x k
};

BlockStats block_stats(const ContingencyTable& table, const Partition& rows,
                       const Partition& cols) {
  BlockStats b;
  const int k = rows.k;
  b.row_volumes = Eigen::VectorXd::Zero(k);
  b.col_volumes = Eigen::VectorXd::Zero(k);
  b.cuts = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < table.n_rows(); ++i)
    b.row_volumes[rows.labels[i]] += table.row_sums()[i];
  for (int j = 0; j < table.n_cols(); ++j)
    b.col_volumes[cols.labels[j]] += table.col_sums()[j];
  table.for_each_nonzero([&](int i, int j, double v) {
    b.cuts(rows.labels[i], cols.labels[j]) += v;
  });
  return b;
}

TwoWayCutValue evaluate(const BlockStats& b, const std::vector<int>& sigma) {
  const int k = static_cast<int>(b.row_volumes.size());
  TwoWayCutValue out;
  out.sigma = sigma;
  out.per_block_terms = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    for (int c = 0; c < k; ++c) {
      double coeff = 1.0 / b.row_volumes[a] + 1.0 / b.col_volumes[c];
      if (a == c)
        coeff += 2.0 * sigma[a] /
                 std::sqrt(b.row_volumes[a] * b.col_volumes[c]);
      out.per_block_terms(a, c) = coeff * b.cuts(a, c);
      out.value += out.per_block_terms(a, c);
    }
  }
  return out;
}

std::vector<int> minimizing_sigma(const BlockStats& b) {
  const int k = static_cast<int>(b.row_volumes.size());
  std::vector<int> sigma(k, 1);
  for (int a = 0; a < k; ++a)
    if (b.cuts(a, a) > 0.0) sigma[a] = -1;
  return sigma;
}

// Minimum value over signs without materializing the addend matrix; used in
// the enumeration hot loop.
double evaluate_min_value(const BlockStats& b) {
  const int k = static_cast<int>(b.row_volumes.size());
  double value = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int c = 0; c < k; ++c) {
      double coeff = 1.0 / b.row_volumes[a] + 1.0 / b.col_volumes[c];
      if (a == c)
        coeff -= 2.0 * (b.cuts(a, a) > 0.0 ? 1.0 : -1.0) /
                 std::sqrt(b.row_volumes[a] * b.col_volumes[c]);
      value += coeff * b.cuts(a, c);
    }
  }
  return value;
}

}  // namespace

Partition Partition::from_labels(std::vector<int> labels, int k) {
  if (k < 1) throw ValidationError(errc::k_out_of_range, "k must be positive");
  if (labels.empty())
    throw ValidationError(errc::partition_mismatch, "empty partition");
  std::vector<int> sizes(k, 0);
  for (int l : labels) {
    if (l < 0 || l >= k)
      throw ValidationError(errc::label_out_of_range,
                            "part id " + std::to_string(l) + " outside 0.." +
                                std::to_string(k - 1));
    ++sizes[l];
  }
  for (int a = 0; a < k; ++a)
    if (sizes[a] == 0)
      throw ValidationError(errc::empty_part,
                            "part " + std::to_string(a + 1) + " is empty");
  Partition p;
  p.k = k;
  p.labels = std::move(labels);
  return p;
}

Partition Partition::from_subsets(const std::vector<IndexSubset>& parts,
                                  int extent) {
  std::vector<int> labels(extent, -1);
  for (size_t a = 0; a < parts.size(); ++a) {
    if (parts[a].empty())
      throw ValidationError(errc::empty_part,
                            "part " + std::to_string(a + 1) + " is empty");
    for (int idx : parts[a].members) {
      if (idx < 0 || idx >= extent)
        throw ValidationError(errc::index_out_of_range,
                              "index " + std::to_string(idx + 1));
      if (labels[idx] != -1)
        throw ValidationError(errc::partition_mismatch,
                              "index " + std::to_string(idx + 1) +
                                  " appears in two parts");
      labels[idx] = static_cast<int>(a);
    }
  }
  for (int i = 0; i < extent; ++i)
    if (labels[i] == -1)
      throw ValidationError(errc::partition_mismatch,
                            "index " + std::to_string(i + 1) + " is uncovered");
  return from_labels(std::move(labels), static_cast<int>(parts.size()));
}

TwoWayCutValue two_way_cut(const ContingencyTable& table,
                           const Partition& row_partition,
                           const Partition& col_partition,
                           const std::vector<int>& sigma) {
  check_partition_pair(table, row_partition, col_partition);
  if (static_cast<int>(sigma.size()) != row_partition.k)
    throw ValidationError(errc::dimension_mismatch,
                          "sigma length does not match k");
  for (int s : sigma)
    if (s != 1 && s != -1)
      throw ValidationError(errc::dimension_mismatch,
                            "sigma entries must be +1 or -1");
  return evaluate(block_stats(table, row_partition, col_partition), sigma);
}

std::pair<std::vector<int>, TwoWayCutValue> optimize_sigma(
    const ContingencyTable& table, const Partition& row_partition,
    const Partition& col_partition) {
  check_partition_pair(table, row_partition, col_partition);
  const BlockStats b = block_stats(table, row_partition, col_partition);
  std::vector<int> sigma = minimizing_sigma(b);
  return {sigma, evaluate(b, sigma)};
}

MinCutResult min_two_way_cut_bruteforce(const ContingencyTable& table, int k,
                                        const CutsBudget& budget) {
  const int n = table.n_rows(), m = table.n_cols();
  if (k < 1 || k > std::min(n, m))
    throw ValidationError(errc::k_out_of_range,
                          "k=" + std::to_string(k) + " for a " +
                              std::to_string(n) + "x" + std::to_string(m) +
                              " table");
  const std::uint64_t row_count = stirling2(n, k);
  const std::uint64_t col_count = stirling2(m, k);
  const std::uint64_t pairs =
      row_count > std::numeric_limits<std::uint64_t>::max() / col_count
          ? std::numeric_limits<std::uint64_t>::max()
          : row_count * col_count;
  if (pairs > budget.max_partition_pairs && !budget.force)
    throw BudgetError(errc::budget_exceeded,
                      std::to_string(row_count) + " x " +
                          std::to_string(col_count) +
                          " partition pairs exceed the enumeration budget; "
                          "pass force to override");

  // Aggregate each row partition once so the inner loop only touches a
  // k x m matrix.
  const Eigen::MatrixXd dense = table.dense();
  MinCutResult best;
  bool have_best = false;
  KPartitionEnumerator row_enum(n, k);
  std::vector<int> row_labels, col_labels;
  while (row_enum.next(row_labels)) {
    Eigen::MatrixXd agg = Eigen::MatrixXd::Zero(k, m);
    Eigen::VectorXd row_volumes = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < n; ++i) {
      agg.row(row_labels[i]) += dense.row(i);
      row_volumes[row_labels[i]] += table.row_sums()[i];
    }
    KPartitionEnumerator col_enum(m, k);
    while (col_enum.next(col_labels)) {
      BlockStats b;
      b.row_volumes = row_volumes;
      b.col_volumes = Eigen::VectorXd::Zero(k);
      b.cuts = Eigen::MatrixXd::Zero(k, k);
      for (int j = 0; j < m; ++j) {
        b.col_volumes[col_labels[j]] += table.col_sums()[j];
        b.cuts.col(col_labels[j]) += agg.col(j);
      }
      ++best.pairs_evaluated;
      const double value = evaluate_min_value(b);
      if (!have_best || value < best.value) {
        best.value = value;
        best.row_partition = Partition::from_labels(row_labels, k);
        best.col_partition = Partition::from_labels(col_labels, k);
        best.sigma = minimizing_sigma(b);
        have_best = true;
      }
    }
  }
  return best;
}

BoundReport bound_report(const ContingencyTable& table, int k,
                         const CutsBudget& budget) {
  if (std::abs(table.total() - 1.0) > 1e-9)
    throw ValidationError(errc::not_normalized,
                          "bound comparisons need a total-volume-1 table");
  const MinCutResult brute = min_two_way_cut_bruteforce(table, k, budget);
  const CorrespondenceDecomposition decomp = decompose(table);
  if (k > decomp.rank())
    throw ValidationError(errc::k_out_of_range,
                          "k exceeds the numerical rank");
  const MinObjective mo = min_objective(decomp, k);
  BoundReport report;
  report.nu_k = brute.value;
  report.corrected_bound = mo.corrected;
  report.paper_bound = mo.paper_printed;
  report.corrected_holds = brute.value >= mo.corrected - 1e-9;
  report.paper_holds = brute.value >= mo.paper_printed - 1e-9;
  return report;
}

}  // namespace coclust
