#include "coclust/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

namespace coclust {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<int> expand_labels(const std::vector<int>& block_sizes) {
  std::vector<int> labels;
  for (size_t a = 0; a < block_sizes.size(); ++a)
    labels.insert(labels.end(), block_sizes[a], static_cast<int>(a));
  return labels;
}

void validate_model(const PlantedModel& model) {
  const int k = static_cast<int>(model.row_block_sizes.size());
  if (k < 1 || model.col_block_sizes.size() != model.row_block_sizes.size())
    throw ValidationError(errc::dimension_mismatch,
                          "row and column block lists must share k >= 1");
  for (int s : model.row_block_sizes)
    if (s < 1) throw ValidationError(errc::dimension_mismatch,
                                     "row block sizes must be positive");
  for (int s : model.col_block_sizes)
    if (s < 1) throw ValidationError(errc::dimension_mismatch,
                                     "column block sizes must be positive");
  if (model.block_probs.rows() != k || model.block_probs.cols() != k)
    throw ValidationError(errc::dimension_mismatch,
                          "block probability matrix must be k x k");
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (!(model.block_probs(a, b) >= 0.0 && model.block_probs(a, b) <= 1.0))
        throw ValidationError(errc::dimension_mismatch,
                              "block probabilities must lie in [0, 1]");
}

bool margins_positive(const Eigen::MatrixXd& raw) {
  for (int i = 0; i < raw.rows(); ++i)
    if (raw.row(i).sum() <= 0.0) return false;
  for (int j = 0; j < raw.cols(); ++j)
    if (raw.col(j).sum() <= 0.0) return false;
  return true;
}

Eigen::MatrixXd draw_binary(const PlantedModel& model,
                            const std::vector<int>& row_labels,
                            const std::vector<int>& col_labels,
                            std::mt19937_64& rng, bool zero_diagonal) {
  const int n = static_cast<int>(row_labels.size());
  const int m = static_cast<int>(col_labels.size());
  Eigen::MatrixXd raw(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      raw(i, j) =
          uniform01(rng) < model.block_probs(row_labels[i], col_labels[j])
              ? 1.0
              : 0.0;
  if (zero_diagonal)
    for (int i = 0; i < std::min(n, m); ++i) raw(i, i) = 0.0;
  return raw;
}

}  // namespace

PlantedDraw generate_planted(const PlantedModel& model) {
  validate_model(model);
  const std::vector<int> row_labels = expand_labels(model.row_block_sizes);
  const std::vector<int> col_labels = expand_labels(model.col_block_sizes);
  std::mt19937_64 rng(model.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Eigen::MatrixXd raw =
        draw_binary(model, row_labels, col_labels, rng, false);
    if (!margins_positive(raw)) continue;
    PlantedDraw draw{build_table(raw).normalize_total(), build_table(raw),
                     row_labels, col_labels};
    return draw;
  }
  throw ValidationError(errc::degenerate_draw,
                        "persistent zero margin after 100 attempts; "
                        "probabilities too sparse");
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty())
    throw ValidationError(errc::dimension_mismatch,
                          "label vectors must have equal positive length");
  std::map<int, int> ia, ib;
  for (int l : a) ia.emplace(l, static_cast<int>(ia.size()));
  for (int l : b) ib.emplace(l, static_cast<int>(ib.size()));
  const int ka = static_cast<int>(ia.size());
  const int kb = static_cast<int>(ib.size());
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(ka, kb);
  for (size_t i = 0; i < a.size(); ++i) counts(ia[a[i]], ib[b[i]]) += 1.0;

  auto comb2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double sum_cells = 0.0;
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < kb; ++j) sum_cells += comb2(counts(i, j));
  double sum_rows = 0.0, sum_cols = 0.0;
  for (int i = 0; i < ka; ++i) sum_rows += comb2(counts.row(i).sum());
  for (int j = 0; j < kb; ++j) sum_cols += comb2(counts.col(j).sum());
  const double expected = sum_rows * sum_cols / comb2(static_cast<double>(a.size()));
  const double denom = 0.5 * (sum_rows + sum_cols) - expected;
  if (denom == 0.0) return same_partition(a, b) ? 1.0 : 0.0;
  return (sum_cells - expected) / denom;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, bwd;
  for (size_t i = 0; i < a.size(); ++i) {
    auto f = fwd.emplace(a[i], b[i]);
    if (!f.second && f.first->second != b[i]) return false;
    auto g = bwd.emplace(b[i], a[i]);
    if (!g.second && g.first->second != a[i]) return false;
  }
  return true;
}

SpectralCharacterization spectral_characterization_check(
    const ContingencyTable& table, int k, const std::vector<int>& row_truth,
    const std::vector<int>& col_truth, const KMeansConfig& config) {
  const CorrespondenceDecomposition decomp = decompose(table);
  if (k < 1 || k > decomp.rank())
    throw ValidationError(errc::k_out_of_range,
                          "k=" + std::to_string(k) + " with rank " +
                              std::to_string(decomp.rank()));
  SpectralCharacterization out;
  out.tail_max = decomp.s(k + 1);
  const double midpoint = 0.5 * (decomp.s(k) + decomp.s(k + 1));
  for (int i = 1; i <= decomp.rank(); ++i)
    if (decomp.s(i) > midpoint) ++out.structural_count;

  const ClusterAssignment assignment = bicluster(table, decomp, k, config);
  out.skx = assignment.row_variance;
  out.sky = assignment.col_variance;
  out.row_match = adjusted_rand_index(assignment.row_labels, row_truth);
  out.col_match = adjusted_rand_index(assignment.col_labels, col_truth);
  out.row_exact = same_partition(assignment.row_labels, row_truth);
  out.col_exact = same_partition(assignment.col_labels, col_truth);
  return out;
}

DirectedGraph DirectedGraph::from_weights(const Eigen::MatrixXd& weights) {
  if (weights.rows() != weights.cols() || weights.rows() < 1)
    throw ValidationError(errc::dimension_mismatch,
                          "directed weight matrix must be square");
  const int n = static_cast<int>(weights.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(weights(i, j)))
        throw ValidationError(errc::non_finite_entry,
                              "weight at " + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1));
      if (weights(i, j) < 0.0)
        throw ValidationError(errc::negative_entry,
                              "weight at " + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1));
    }
  for (int i = 0; i < n; ++i)
    if (weights(i, i) != 0.0)
      throw ValidationError(errc::nonzero_diagonal,
                            "vertex " + std::to_string(i + 1) +
                                " carries a self-loop");
  DirectedGraph g;
  g.weights_ = weights;
  g.out_degrees_ = weights.rowwise().sum();
  g.in_degrees_ = weights.colwise().sum();
  for (int i = 0; i < n; ++i) {
    if (g.out_degrees_[i] <= 0.0)
      throw ValidationError(errc::source_or_sink,
                            "vertex " + std::to_string(i + 1) + " is a sink");
    if (g.in_degrees_[i] <= 0.0)
      throw ValidationError(errc::source_or_sink,
                            "vertex " + std::to_string(i + 1) + " is a source");
  }
  return g;
}

ContingencyTable directed_to_table(const DirectedGraph& graph) {
  const ContingencyTable table = build_table(graph.weights()).normalize_total();
  if (!table.is_nondecomposable())
    throw ValidationError(errc::decomposable_table,
                          "directed weights decompose as a contingency table");
  return table;
}

RegularityReport directed_regularity(const DirectedGraph& graph,
                                     const ClusterAssignment& assignment,
                                     const RegularityOptions& options) {
  return k_way_discrepancy(directed_to_table(graph), assignment, options);
}

DirectedPlantedDraw generate_planted_directed(const PlantedModel& model) {
  validate_model(model);
  const std::vector<int> row_labels = expand_labels(model.row_block_sizes);
  const std::vector<int> col_labels = expand_labels(model.col_block_sizes);
  if (row_labels.size() != col_labels.size())
    throw ValidationError(errc::dimension_mismatch,
                          "directed model needs a square shape");
  std::mt19937_64 rng(model.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Eigen::MatrixXd raw =
        draw_binary(model, row_labels, col_labels, rng, true);
    if (!margins_positive(raw)) continue;
    return {DirectedGraph::from_weights(raw), row_labels};
  }
  throw ValidationError(errc::degenerate_draw,
                        "persistent zero in/out degree after 100 attempts");
}

ContingencyTable block_constant_table(const Eigen::VectorXd& row_margins,
                                      const Eigen::VectorXd& col_margins,
                                      const std::vector<int>& row_labels,
                                      const std::vector<int>& col_labels,
                                      const Eigen::MatrixXd& block_joint) {
  const int n = static_cast<int>(row_margins.size());
  const int m = static_cast<int>(col_margins.size());
  const int k = static_cast<int>(block_joint.rows());
  if (static_cast<int>(row_labels.size()) != n ||
      static_cast<int>(col_labels.size()) != m || block_joint.cols() != k)
    throw ValidationError(errc::dimension_mismatch,
                          "margins, labels, and block joint disagree");
  Eigen::VectorXd row_vol = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd col_vol = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < n; ++i) {
    if (row_labels[i] < 0 || row_labels[i] >= k)
      throw ValidationError(errc::label_out_of_range, "row label");
    row_vol[row_labels[i]] += row_margins[i];
  }
  for (int j = 0; j < m; ++j) {
    if (col_labels[j] < 0 || col_labels[j] >= k)
      throw ValidationError(errc::label_out_of_range, "column label");
    col_vol[col_labels[j]] += col_margins[j];
  }
  for (int a = 0; a < k; ++a) {
    if (std::abs(block_joint.row(a).sum() - row_vol[a]) > 1e-9)
      throw ValidationError(errc::dimension_mismatch,
                            "block joint row marginal does not match the "
                            "cluster volume");
    if (std::abs(block_joint.col(a).sum() - col_vol[a]) > 1e-9)
      throw ValidationError(errc::dimension_mismatch,
                            "block joint column marginal does not match the "
                            "cluster volume");
  }
  Eigen::MatrixXd raw(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      raw(i, j) = row_margins[i] * col_margins[j] *
                  block_joint(row_labels[i], col_labels[j]) /
                  (row_vol[row_labels[i]] * col_vol[col_labels[j]]);
  return build_table(raw);
}

}  // namespace coclust
