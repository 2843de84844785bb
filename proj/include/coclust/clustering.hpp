#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "coclust/spectral.hpp"
#include "coclust/table.hpp"

namespace coclust {

struct KMeansConfig {
  int restarts = 10;
  int max_iterations = 300;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  // Advisory balance check: warn when a cluster holds fewer than this
  // fraction of the points. Never enforced.
  double min_cluster_fraction = 0.0;
};

struct KMeansResult {
  std::vector<int> labels;  // 0-based cluster ids, every id non-empty
  double variance = 0.0;    // achieved weighted within-cluster sum of squares
  Eigen::MatrixXd centers;  // k x d
  std::vector<double> objective_trace;  // per-iteration objective, best restart
};

// Lloyd iteration with weighted k-means++ seeding, best of `restarts` runs.
// The seed fully determines the outcome; the per-iteration objective never
// increases.
KMeansResult weighted_kmeans(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& weights, int k,
                             const KMeansConfig& config = {});

// Weighted within-cluster sum of squares for the given labels (no
// optimization). Cluster count is max label + 1.
double k_variance(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                  const std::vector<int>& labels);

// Simultaneous k-partition of rows and columns with the achieved weighted
// k-variances of the representatives.
struct ClusterAssignment {
  int k = 0;
  std::vector<int> row_labels;  // 0-based
  std::vector<int> col_labels;
  double row_variance = 0.0;
  double col_variance = 0.0;
  Eigen::MatrixXd row_centers;  // k x (k-1), trivial coordinate dropped
  Eigen::MatrixXd col_centers;
  std::vector<std::string> warnings;
};

// Full pipeline: decompose, take optimal representatives, drop the constant
// leading coordinate (the k-variance is unchanged by that), then cluster rows
// and columns independently with margin weights.
ClusterAssignment bicluster(const ContingencyTable& table, int k,
                            const KMeansConfig& config = {});

// Same pipeline against an already-computed decomposition.
ClusterAssignment bicluster(const ContingencyTable& table,
                            const CorrespondenceDecomposition& decomp, int k,
                            const KMeansConfig& config = {});

}  // namespace coclust
