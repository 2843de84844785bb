#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "coclust/table.hpp"

namespace coclust {

// SVD of the correspondence matrix truncated to numerical rank, with a
// deterministic sign convention applied to the vector pairs.
struct CorrespondenceDecomposition {
  Eigen::VectorXd singular_values;  // descending, s_1 = 1 for valid tables
  Eigen::MatrixXd left_vectors;     // n x r, orthonormal columns
  Eigen::MatrixXd right_vectors;    // m x r, orthonormal columns

  int rank() const { return static_cast<int>(singular_values.size()); }
  // s_i with 1-based i; zero past the numerical rank.
  double s(int i) const {
    return i >= 1 && i <= rank() ? singular_values[i - 1] : 0.0;
  }
};

// Optimal k-dimensional row/column representatives (rows of the matrices).
struct Representation {
  int k = 0;
  Eigen::MatrixXd row_reps;  // n x k
  Eigen::MatrixXd col_reps;  // m x k
  std::vector<std::string> warnings;
};

struct DecomposeOptions {
  // Dense deterministic SVD up to this many rows/columns, block iteration above.
  int dense_limit = 2000;
  // 0 means full numerical rank; iterative path computes this many leading
  // triplets.
  int max_rank = 0;
  int max_iterations = 10000;
  double tolerance = 1e-12;
  // Retain s_i with s_i > rank_threshold * s_1.
  double rank_threshold = 1e-12;
};

// D_row^{-1/2} C D_col^{-1/2}; invariant under positive rescaling of C.
Eigen::MatrixXd correspondence_matrix(const ContingencyTable& table);

CorrespondenceDecomposition decompose(const Eigen::MatrixXd& corr,
                                      const DecomposeOptions& options = {});
CorrespondenceDecomposition decompose(const ContingencyTable& table,
                                      const DecomposeOptions& options = {});

// Theorem-style optimum: X* = D_row^{-1/2}(v_1..v_k), Y* = D_col^{-1/2}(u_1..u_k).
// Warns when the spectral gap s_k - s_{k+1} is below 1e-8; errors only on an
// exact tie.
Representation representatives(const ContingencyTable& table,
                               const CorrespondenceDecomposition& decomp, int k);

// The placement objective sum_ij c_ij ||r_i - c_j||^2, evaluated literally.
double objective_q(const ContingencyTable& table, const Representation& rep);

// Closed-form minimum of the placement objective over constrained
// representations. `corrected` carries the factor-2 trace coefficient that
// the literal objective expansion yields; `paper_printed` is the companion
// value 2k - sum_i s_i kept for traceability.
struct MinObjective {
  double corrected = 0.0;
  double paper_printed = 0.0;
};
MinObjective min_objective(const CorrespondenceDecomposition& decomp, int k);

// Count of singular values strictly above epsilon plus a largest-relative-gap
// suggestion (interior gaps only).
struct StructuralK {
  int count = 0;
  int suggested_by_gap = 1;
};
StructuralK structural_k(const CorrespondenceDecomposition& decomp,
                         double epsilon);

}  // namespace coclust
