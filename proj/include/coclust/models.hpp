#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "coclust/clustering.hpp"
#include "coclust/regularity.hpp"
#include "coclust/table.hpp"

namespace coclust {

// Generalized random binary contingency table: entry (i, j) with i in row
// block a and j in column block b is 1 with probability p_ab, independently.
struct PlantedModel {
  std::vector<int> row_block_sizes;
  std::vector<int> col_block_sizes;
  Eigen::MatrixXd block_probs;  // k x k, entries in [0, 1]
  std::uint64_t seed = 0;
};

struct PlantedDraw {
  ContingencyTable table;  // normalized
  ContingencyTable raw;    // the binary draw, for serialization
  std::vector<int> row_labels;
  std::vector<int> col_labels;
};

// Seeded draw; entries consume the stream in row-major order. Redraws on a
// zero margin, up to 100 attempts.
PlantedDraw generate_planted(const PlantedModel& model);

// Adjusted Rand index between two label vectors of equal length.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

// True when the two label vectors induce the same partition.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b);

// Recovery diagnostics against known ground truth: count of singular values
// above the midpoint of s_k and s_{k+1}, the tail maximum, the achieved
// k-variances, and label agreement per axis.
struct SpectralCharacterization {
  int structural_count = 0;
  double tail_max = 0.0;
  double skx = 0.0;  // row k-variance (squared distances)
  double sky = 0.0;
  double row_match = 0.0;  // adjusted Rand index
  double col_match = 0.0;
  bool row_exact = false;  // equal partitions up to relabeling
  bool col_exact = false;
};
SpectralCharacterization spectral_characterization_check(
    const ContingencyTable& table, int k, const std::vector<int>& row_truth,
    const std::vector<int>& col_truth, const KMeansConfig& config = {});

// Edge-weight matrix of a directed graph: square, zero diagonal, no sources
// or sinks.
class DirectedGraph {
 public:
  static DirectedGraph from_weights(const Eigen::MatrixXd& weights);

  int size() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::VectorXd& out_degrees() const { return out_degrees_; }
  const Eigen::VectorXd& in_degrees() const { return in_degrees_; }

 private:
  DirectedGraph() = default;
  Eigen::MatrixXd weights_;
  Eigen::VectorXd out_degrees_;
  Eigen::VectorXd in_degrees_;
};

// Reinterprets the weight matrix as a contingency table (rows = out side,
// columns = in side), normalized. Rejects tables whose support splits.
ContingencyTable directed_to_table(const DirectedGraph& graph);

// Volume-regularity report over out/in cluster pairs of the shared vertex
// set; row labels are out-clusters, column labels in-clusters.
RegularityReport directed_regularity(const DirectedGraph& graph,
                                     const ClusterAssignment& assignment,
                                     const RegularityOptions& options = {});

// Square-shape planted draw with the diagonal zeroed after drawing, margins
// revalidated; the directed analogue of generate_planted.
struct DirectedPlantedDraw {
  DirectedGraph graph;
  std::vector<int> labels;
};
DirectedPlantedDraw generate_planted_directed(const PlantedModel& model);

// Ideal fixture: c_ij = d_i d_j t_ab / (VolR_a VolC_b) for a block joint
// distribution t whose marginals match the block volumes of the prescribed
// margins. Every pair of such a table is 0-volume regular.
ContingencyTable block_constant_table(const Eigen::VectorXd& row_margins,
                                      const Eigen::VectorXd& col_margins,
                                      const std::vector<int>& row_labels,
                                      const std::vector<int>& col_labels,
                                      const Eigen::MatrixXd& block_joint);

}  // namespace coclust
