#include "coclust/regularity.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace coclust {

namespace {

void require_normalized(const ContingencyTable& table) {
  if (std::abs(table.total() - 1.0) > 1e-9)
    throw ValidationError(errc::not_normalized,
                          "discrepancy quantities need a total-volume-1 table");
}

void require_cap(int extent, int cap, bool force, const char* what) {
  if (extent > cap && !force)
    throw BudgetError(errc::budget_exceeded,
                      std::string(what) + " has " + std::to_string(extent) +
                          " elements, above the enumeration cap of " +
                          std::to_string(cap) + "; pass force to override");
}

// Walks every subset pair (X over row_ids, Y over col_ids, both non-empty)
// in gray-code order, maintaining the rectangle sum and both subset volumes
// incrementally. visit(sum, vol_x, vol_y) runs once per pair.
template <class F>
void scan_rectangles(const Eigen::MatrixXd& values,
                     const Eigen::VectorXd& row_weights,
                     const Eigen::VectorXd& col_weights,
                     const std::vector<int>& row_ids,
                     const std::vector<int>& col_ids, F&& visit) {
  const int nr = static_cast<int>(row_ids.size());
  const int nc = static_cast<int>(col_ids.size());
  if (nr == 0 || nc == 0) return;
  std::vector<double> col_agg(nc, 0.0);
  double vol_x = 0.0;
  std::uint32_t prev = 0;
  for (std::uint32_t g = 1; g < (1u << nr); ++g) {
    const std::uint32_t gray = g ^ (g >> 1);
    const std::uint32_t flipped = gray ^ prev;
    const int bit = std::countr_zero(flipped);
    const double sign = (gray & flipped) ? 1.0 : -1.0;
    const int row = row_ids[bit];
    vol_x += sign * row_weights[row];
    for (int t = 0; t < nc; ++t) col_agg[t] += sign * values(row, col_ids[t]);
    prev = gray;

    double sum = 0.0, vol_y = 0.0;
    std::uint32_t prev_c = 0;
    for (std::uint32_t h = 1; h < (1u << nc); ++h) {
      const std::uint32_t gray_c = h ^ (h >> 1);
      const std::uint32_t flipped_c = gray_c ^ prev_c;
      const int bit_c = std::countr_zero(flipped_c);
      const double sign_c = (gray_c & flipped_c) ? 1.0 : -1.0;
      sum += sign_c * col_agg[bit_c];
      vol_y += sign_c * col_weights[col_ids[bit_c]];
      prev_c = gray_c;
      visit(sum, vol_x, vol_y);
    }
  }
}

std::vector<int> iota_ids(int extent) {
  std::vector<int> ids(extent);
  for (int i = 0; i < extent; ++i) ids[i] = i;
  return ids;
}

double max_mixing_ratio(const ContingencyTable& table) {
  double best = 0.0;
  scan_rectangles(table.dense(), table.row_sums(), table.col_sums(),
                  iota_ids(table.n_rows()), iota_ids(table.n_cols()),
                  [&](double sum, double vol_x, double vol_y) {
                    const double ratio = std::abs(sum - vol_x * vol_y) /
                                         std::sqrt(vol_x * vol_y);
                    if (ratio > best) best = ratio;
                  });
  return best;
}

}  // namespace

double relative_density(const ContingencyTable& table, const IndexSubset& rows,
                        const IndexSubset& cols) {
  if (rows.empty() || cols.empty())
    throw ValidationError(errc::empty_subset,
                          "relative density needs non-empty subsets");
  return table.cut(rows, cols) / (table.volume(rows) * table.volume(cols));
}

MixingCheck mixing_check(const ContingencyTable& table,
                         const CorrespondenceDecomposition& decomp,
                         const RegularityOptions& options) {
  require_normalized(table);
  require_cap(table.n_rows(), options.subset_cap, options.force, "row set");
  require_cap(table.n_cols(), options.subset_cap, options.force, "column set");
  MixingCheck check;
  check.max_ratio = max_mixing_ratio(table);
  check.s2 = decomp.s(2);
  check.holds = check.max_ratio <= check.s2 + 1e-9;
  return check;
}

double discrepancy_bruteforce(const ContingencyTable& table,
                              const RegularityOptions& options) {
  require_normalized(table);
  require_cap(table.n_rows(), options.subset_cap, options.force, "row set");
  require_cap(table.n_cols(), options.subset_cap, options.force, "column set");
  return max_mixing_ratio(table);
}

double volume_regularity_bruteforce(const ContingencyTable& table,
                                    const IndexSubset& rows,
                                    const IndexSubset& cols,
                                    const RegularityOptions& options) {
  require_normalized(table);
  if (rows.empty() || cols.empty())
    throw ValidationError(errc::empty_subset,
                          "volume regularity needs non-empty cluster pair");
  require_cap(rows.size(), options.subset_cap, options.force, "row cluster");
  require_cap(cols.size(), options.subset_cap, options.force, "column cluster");
  const double vol_r = table.volume(rows);
  const double vol_c = table.volume(cols);
  const double rho = table.cut(rows, cols) / (vol_r * vol_c);
  double max_dev = 0.0;  // empty X or Y deviate by exactly zero
  scan_rectangles(table.dense(), table.row_sums(), table.col_sums(),
                  rows.members, cols.members,
                  [&](double sum, double vol_x, double vol_y) {
                    const double dev = std::abs(sum - rho * vol_x * vol_y);
                    if (dev > max_dev) max_dev = dev;
                  });
  return max_dev / std::sqrt(vol_r * vol_c);
}

double cut_norm_bruteforce(const Eigen::MatrixXd& matrix,
                           const RegularityOptions& options) {
  require_cap(static_cast<int>(matrix.rows()), options.subset_cap,
              options.force, "row set");
  require_cap(static_cast<int>(matrix.cols()), options.subset_cap,
              options.force, "column set");
  const Eigen::VectorXd zero_rows = Eigen::VectorXd::Zero(matrix.rows());
  const Eigen::VectorXd zero_cols = Eigen::VectorXd::Zero(matrix.cols());
  double best = 0.0;  // the empty rectangle sums to zero
  scan_rectangles(matrix, zero_rows, zero_cols,
                  iota_ids(static_cast<int>(matrix.rows())),
                  iota_ids(static_cast<int>(matrix.cols())),
                  [&](double sum, double, double) {
                    if (std::abs(sum) > best) best = std::abs(sum);
                  });
  return best;
}

double cut_norm_spectral_bound(const Eigen::MatrixXd& matrix) {
  if (matrix.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  return std::sqrt(static_cast<double>(matrix.rows()) *
                   static_cast<double>(matrix.cols())) *
         svd.singularValues()[0];
}

ButlerCheck butler_converse_check(double s2, double alpha) {
  ButlerCheck check;
  if (!(alpha > 0.0 && alpha < 1.0)) return check;  // not applicable
  check.applicable = true;
  check.rhs = 150.0 * alpha * (1.0 - 8.0 * std::log(alpha));
  check.holds = s2 <= check.rhs + 1e-9;
  return check;
}

double theorem_bound(const CorrespondenceDecomposition& decomp, int k,
                     double sk_rows, double sk_cols) {
  if (k < 1 || k > decomp.rank())
    throw ValidationError(errc::k_out_of_range,
                          "k=" + std::to_string(k) + " with rank " +
                              std::to_string(decomp.rank()));
  return std::sqrt(2.0 * k) * (sk_rows + sk_cols) + decomp.s(k + 1);
}

RegularityReport k_way_discrepancy(const ContingencyTable& table,
                                   const CorrespondenceDecomposition& decomp,
                                   const ClusterAssignment& assignment,
                                   const RegularityOptions& options) {
  require_normalized(table);
  const int k = assignment.k;
  RegularityReport report;
  report.k = k;
  report.s2 = decomp.s(2);
  report.s_tail = decomp.s(k + 1);

  // Variances of the optimal representatives at this assignment.
  const Representation rep = representatives(table, decomp, k);
  report.sk_rows = std::sqrt(
      k_variance(rep.row_reps, table.row_sums(), assignment.row_labels));
  report.sk_cols = std::sqrt(
      k_variance(rep.col_reps, table.col_sums(), assignment.col_labels));
  report.theorem_bound_value =
      theorem_bound(decomp, k, report.sk_rows, report.sk_cols);

  std::vector<std::vector<int>> row_members(k), col_members(k);
  for (int i = 0; i < table.n_rows(); ++i)
    row_members[assignment.row_labels[i]].push_back(i);
  for (int j = 0; j < table.n_cols(); ++j)
    col_members[assignment.col_labels[j]].push_back(j);

  report.pair_densities = Eigen::MatrixXd::Zero(k, k);
  report.pair_gammas = Eigen::MatrixXd::Zero(k, k);
  report.pair_exact.assign(k, std::vector<bool>(k, false));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const IndexSubset rows = IndexSubset::of_rows(row_members[a]);
      const IndexSubset cols = IndexSubset::of_columns(col_members[b]);
      report.pair_densities(a, b) = relative_density(table, rows, cols);
      if (rows.size() <= options.subset_cap &&
          cols.size() <= options.subset_cap) {
        report.pair_gammas(a, b) =
            volume_regularity_bruteforce(table, rows, cols, options);
        report.pair_exact[a][b] = true;
      } else {
        report.pair_gammas(a, b) = report.theorem_bound_value;
        report.skipped.push_back(
            "pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
            ") exceeds the enumeration cap; spectral bound substituted");
      }
    }
  }
  report.k_way_discrepancy = report.pair_gammas.maxCoeff();

  if (table.n_rows() <= options.subset_cap &&
      table.n_cols() <= options.subset_cap) {
    const double alpha = max_mixing_ratio(table);
    report.global_discrepancy_alpha = alpha;
    report.mixing_margin = alpha;
    report.mixing_holds = alpha <= report.s2 + 1e-9;
    report.butler = butler_converse_check(report.s2, alpha);
  } else {
    report.skipped.push_back(
        "global discrepancy skipped: axis above the enumeration cap");
  }
  return report;
}

RegularityReport k_way_discrepancy(const ContingencyTable& table,
                                   const ClusterAssignment& assignment,
                                   const RegularityOptions& options) {
  return k_way_discrepancy(table, decompose(table, options.decompose),
                           assignment, options);
}

}  // namespace coclust
