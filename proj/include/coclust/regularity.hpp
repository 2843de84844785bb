#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "coclust/clustering.hpp"
#include "coclust/spectral.hpp"
#include "coclust/table.hpp"

namespace coclust {

struct RegularityOptions {
  // Exhaustive subset enumeration runs only when each involved axis has at
  // most this many elements.
  int subset_cap = 14;
  bool force = false;
  DecomposeOptions decompose;
};

// rho(R, C) = c(R, C) / (Vol(R) Vol(C)).
double relative_density(const ContingencyTable& table, const IndexSubset& rows,
                        const IndexSubset& cols);

// Exhaustive check of |c(R,C) - Vol(R)Vol(C)| <= s_2 sqrt(Vol(R)Vol(C)) over
// every non-empty subset pair.
struct MixingCheck {
  double max_ratio = 0.0;
  double s2 = 0.0;
  bool holds = false;
};
MixingCheck mixing_check(const ContingencyTable& table,
                         const CorrespondenceDecomposition& decomp,
                         const RegularityOptions& options = {});

// Exact minimal discrepancy constant, i.e. the mixing max ratio.
double discrepancy_bruteforce(const ContingencyTable& table,
                              const RegularityOptions& options = {});

// Minimal gamma making the pair (rows, cols) volume regular: the maximum of
// |c(X,Y) - rho(R,C) Vol(X) Vol(Y)| over X in R, Y in C (empty subsets
// contribute zero), divided by sqrt(Vol(R) Vol(C)).
double volume_regularity_bruteforce(const ContingencyTable& table,
                                    const IndexSubset& rows,
                                    const IndexSubset& cols,
                                    const RegularityOptions& options = {});

// max_{R,C} |sum of the rectangle| over all (possibly empty) subset pairs.
double cut_norm_bruteforce(const Eigen::MatrixXd& matrix,
                           const RegularityOptions& options = {});

// sqrt(n m) times the spectral norm; an upper bound for the cut norm.
double cut_norm_spectral_bound(const Eigen::MatrixXd& matrix);

// s_2 <= 150 alpha (1 - 8 ln alpha), natural log. Outside alpha in (0, 1)
// the right-hand side is undefined and the check reports not-applicable.
struct ButlerCheck {
  bool applicable = false;
  double rhs = 0.0;
  bool holds = false;
};
ButlerCheck butler_converse_check(double s2, double alpha);

// sqrt(2k) (S_k(X) + S_k(Y)) + s_{k+1}; the epsilon term is zero at full
// rank. Takes the k-variances' square roots.
double theorem_bound(const CorrespondenceDecomposition& decomp, int k,
                     double sk_rows, double sk_cols);

// Per-pair densities and regularity constants for a cluster assignment,
// global discrepancy and mixing fields when the axis caps allow, and the
// spectral bound quantity. Oversized pairs receive the spectral bound as a
// flagged fallback instead of an exact gamma.
struct RegularityReport {
  int k = 0;
  Eigen::MatrixXd pair_densities;          // k x k
  Eigen::MatrixXd pair_gammas;             // k x k
  std::vector<std::vector<bool>> pair_exact;
  double k_way_discrepancy = 0.0;          // max entry of pair_gammas
  double sk_rows = 0.0;                    // S_k(X) at the assignment
  double sk_cols = 0.0;                    // S_k(Y)
  double s_tail = 0.0;                     // s_{k+1}
  double s2 = 0.0;
  double theorem_bound_value = 0.0;
  std::optional<double> global_discrepancy_alpha;
  std::optional<double> mixing_margin;
  std::optional<bool> mixing_holds;
  std::optional<ButlerCheck> butler;
  std::vector<std::string> skipped;        // reasons for non-exact fields
};

RegularityReport k_way_discrepancy(const ContingencyTable& table,
                                   const ClusterAssignment& assignment,
                                   const RegularityOptions& options = {});
RegularityReport k_way_discrepancy(const ContingencyTable& table,
                                   const CorrespondenceDecomposition& decomp,
                                   const ClusterAssignment& assignment,
                                   const RegularityOptions& options = {});

}  // namespace coclust
