#include "coclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace coclust {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Samples an index proportionally to the given nonnegative masses; falls
// back to the lowest index with positive mass on boundary rounding.
int sample_index(const std::vector<double>& mass, double total,
                 std::mt19937_64& rng) {
  const double ticket = uniform01(rng) * total;
  double acc = 0.0;
  int last_positive = 0;
  for (size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] > 0.0) last_positive = static_cast<int>(i);
    acc += mass[i];
    if (ticket < acc && mass[i] > 0.0) return static_cast<int>(i);
  }
  return last_positive;
}

struct LloydRun {
  std::vector<int> labels;
  Eigen::MatrixXd centers;
  double objective = 0.0;
  std::vector<double> trace;
};

std::vector<int> seed_centers_kmeanspp(const Eigen::MatrixXd& points,
                                       const Eigen::VectorXd& weights, int k,
                                       std::mt19937_64& rng) {
  const int n = static_cast<int>(points.rows());
  std::vector<int> centers;
  std::vector<char> chosen(n, 0);
  std::vector<double> mass(weights.data(), weights.data() + n);
  centers.push_back(sample_index(mass, weights.sum(), rng));
  chosen[centers[0]] = 1;

  std::vector<double> dist2(n);
  for (int i = 0; i < n; ++i)
    dist2[i] = (points.row(i) - points.row(centers[0])).squaredNorm();
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      mass[i] = chosen[i] ? 0.0 : weights[i] * dist2[i];
      total += mass[i];
    }
    int next;
    if (total > 0.0) {
      next = sample_index(mass, total, rng);
    } else {
      // All remaining points coincide with a center; take the lowest
      // unchosen index so seeding stays total.
      next = 0;
      while (next < n && chosen[next]) ++next;
      if (next == n) next = 0;
    }
    centers.push_back(next);
    chosen[next] = 1;
    for (int i = 0; i < n; ++i)
      dist2[i] = std::min(dist2[i], (points.row(i) - points.row(next)).squaredNorm());
  }
  return centers;
}

void assign_labels(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                   std::vector<int>& labels) {
  const int n = static_cast<int>(points.rows());
  const int k = static_cast<int>(centers.rows());
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_d = (points.row(i) - centers.row(0)).squaredNorm();
    for (int a = 1; a < k; ++a) {
      const double d = (points.row(i) - centers.row(a)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = a;
      }
    }
    labels[i] = best;
  }
}

// Moves the worst-fitting point of a multi-member cluster into each empty
// cluster so every id stays populated.
void repair_empty_clusters(const Eigen::MatrixXd& points,
                           const Eigen::VectorXd& weights,
                           const Eigen::MatrixXd& centers, int k,
                           std::vector<int>& labels) {
  const int n = static_cast<int>(points.rows());
  std::vector<int> sizes(k, 0);
  for (int l : labels) ++sizes[l];
  for (int a = 0; a < k; ++a) {
    if (sizes[a] > 0) continue;
    int worst = -1;
    double worst_cost = -1.0;
    for (int i = 0; i < n; ++i) {
      if (sizes[labels[i]] < 2) continue;
      const double cost =
          weights[i] * (points.row(i) - centers.row(labels[i])).squaredNorm();
      if (cost > worst_cost) {
        worst_cost = cost;
        worst = i;
      }
    }
    if (worst < 0) continue;  // fewer points than clusters; nothing to split
    --sizes[labels[worst]];
    labels[worst] = a;
    ++sizes[a];
  }
}

void update_centers(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                    const std::vector<int>& labels, Eigen::MatrixXd& centers) {
  const int k = static_cast<int>(centers.rows());
  centers.setZero();
  Eigen::VectorXd cluster_weight = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < points.rows(); ++i) {
    centers.row(labels[i]) += weights[i] * points.row(i);
    cluster_weight[labels[i]] += weights[i];
  }
  for (int a = 0; a < k; ++a)
    if (cluster_weight[a] > 0.0) centers.row(a) /= cluster_weight[a];
}

double weighted_objective(const Eigen::MatrixXd& points,
                          const Eigen::VectorXd& weights,
                          const std::vector<int>& labels,
                          const Eigen::MatrixXd& centers) {
  double obj = 0.0;
  for (int i = 0; i < points.rows(); ++i)
    obj += weights[i] * (points.row(i) - centers.row(labels[i])).squaredNorm();
  return obj;
}

LloydRun lloyd_once(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                    int k, const KMeansConfig& config, std::mt19937_64& rng) {
  const int n = static_cast<int>(points.rows());
  LloydRun run;
  run.labels.assign(n, 0);
  run.centers.resize(k, points.cols());
  const std::vector<int> seeds = seed_centers_kmeanspp(points, weights, k, rng);
  for (int a = 0; a < k; ++a) run.centers.row(a) = points.row(seeds[a]);

  double prev = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    assign_labels(points, run.centers, run.labels);
    repair_empty_clusters(points, weights, run.centers, k, run.labels);
    update_centers(points, weights, run.labels, run.centers);
    run.objective = weighted_objective(points, weights, run.labels, run.centers);
    run.trace.push_back(run.objective);
    if (run.objective > prev + 1e-12 * std::max(1.0, std::abs(prev)))
      throw NumericError(errc::convergence_failure,
                         "Lloyd objective increased between iterations");
    if (prev - run.objective < config.tolerance) break;
    prev = run.objective;
  }
  return run;
}

}  // namespace

KMeansResult weighted_kmeans(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& weights, int k,
                             const KMeansConfig& config) {
  const int n = static_cast<int>(points.rows());
  if (k < 1)
    throw ValidationError(errc::k_out_of_range, "k must be positive");
  if (n < k)
    throw ValidationError(errc::too_few_points,
                          std::to_string(n) + " points for k=" + std::to_string(k));
  if (weights.size() != n)
    throw ValidationError(errc::dimension_mismatch,
                          "weights length does not match point count");
  for (int i = 0; i < n; ++i)
    if (!(weights[i] > 0.0))
      throw ValidationError(errc::non_positive_weight,
                            "weight " + std::to_string(i + 1));

  LloydRun best;
  bool have_best = false;
  for (int r = 0; r < std::max(1, config.restarts); ++r) {
    // Independent stream per restart; ties resolved toward the lowest
    // restart index by the strict comparison.
    std::mt19937_64 rng(config.seed + 0x9e3779b97f4a7c15ULL *
                                          static_cast<std::uint64_t>(r));
    LloydRun run = lloyd_once(points, weights, k, config, rng);
    if (!have_best || run.objective < best.objective) {
      best = std::move(run);
      have_best = true;
    }
  }
  return {std::move(best.labels), best.objective, std::move(best.centers),
          std::move(best.trace)};
}

double k_variance(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                  const std::vector<int>& labels) {
  const int n = static_cast<int>(points.rows());
  if (static_cast<int>(labels.size()) != n || weights.size() != n)
    throw ValidationError(errc::dimension_mismatch,
                          "labels/weights length does not match point count");
  int k = 0;
  for (int l : labels) {
    if (l < 0)
      throw ValidationError(errc::label_out_of_range, "negative cluster id");
    k = std::max(k, l + 1);
  }
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, points.cols());
  update_centers(points, weights, labels, centers);
  return weighted_objective(points, weights, labels, centers);
}

ClusterAssignment bicluster(const ContingencyTable& table,
                            const CorrespondenceDecomposition& decomp, int k,
                            const KMeansConfig& config) {
  if (!table.is_nondecomposable())
    throw ValidationError(errc::decomposable_table,
                          "table decomposes into independent blocks");
  Representation rep = representatives(table, decomp, k);

  // The leading vector component is constant, so clustering happens in the
  // remaining k-1 coordinates.
  const Eigen::MatrixXd row_points = rep.row_reps.rightCols(k - 1);
  const Eigen::MatrixXd col_points = rep.col_reps.rightCols(k - 1);

  KMeansResult rows = weighted_kmeans(row_points, table.row_sums(), k, config);
  KMeansResult cols = weighted_kmeans(col_points, table.col_sums(), k, config);

  ClusterAssignment out;
  out.k = k;
  out.row_labels = std::move(rows.labels);
  out.col_labels = std::move(cols.labels);
  out.row_variance = rows.variance;
  out.col_variance = cols.variance;
  out.row_centers = std::move(rows.centers);
  out.col_centers = std::move(cols.centers);
  out.warnings = std::move(rep.warnings);

  if (config.min_cluster_fraction > 0.0) {
    std::vector<int> row_sizes(k, 0), col_sizes(k, 0);
    for (int l : out.row_labels) ++row_sizes[l];
    for (int l : out.col_labels) ++col_sizes[l];
    for (int a = 0; a < k; ++a) {
      if (row_sizes[a] < config.min_cluster_fraction * table.n_rows())
        out.warnings.push_back("row cluster " + std::to_string(a + 1) +
                               " below the advisory balance fraction");
      if (col_sizes[a] < config.min_cluster_fraction * table.n_cols())
        out.warnings.push_back("column cluster " + std::to_string(a + 1) +
                               " below the advisory balance fraction");
    }
  }
  return out;
}

ClusterAssignment bicluster(const ContingencyTable& table, int k,
                            const KMeansConfig& config) {
  return bicluster(table, decompose(table), k, config);
}

}  // namespace coclust
