#include "coclust/spectral.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace coclust {

namespace {

// Portable uniform in [0,1): 53-bit mantissa from the top of the word, so
// fixtures reproduce across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Flip each vector pair so the largest-magnitude coordinate of v_i is
// positive (ties broken by lowest index); u_i follows v_i.
void apply_sign_convention(Eigen::MatrixXd& left, Eigen::MatrixXd& right) {
  for (int c = 0; c < left.cols(); ++c) {
    int pivot = 0;
    double best = -1.0;
    for (int i = 0; i < left.rows(); ++i) {
      const double mag = std::abs(left(i, c));
      if (mag > best + 1e-15) {
        best = mag;
        pivot = i;
      }
    }
    if (left(pivot, c) < 0.0) {
      left.col(c) = -left.col(c);
      right.col(c) = -right.col(c);
    }
  }
}

CorrespondenceDecomposition finalize(const Eigen::VectorXd& values,
                                     const Eigen::MatrixXd& left,
                                     const Eigen::MatrixXd& right,
                                     double rank_threshold) {
  const double s1 = values.size() > 0 ? values[0] : 0.0;
  int r = 0;
  while (r < values.size() && values[r] > rank_threshold * s1) ++r;
  CorrespondenceDecomposition d;
  d.singular_values = values.head(r);
  d.left_vectors = left.leftCols(r);
  d.right_vectors = right.leftCols(r);
  apply_sign_convention(d.left_vectors, d.right_vectors);
  return d;
}

CorrespondenceDecomposition decompose_dense(const Eigen::MatrixXd& corr,
                                            const DecomposeOptions& options) {
  const bool small = std::max(corr.rows(), corr.cols()) <= 128;
  Eigen::VectorXd values;
  Eigen::MatrixXd left, right;
  if (small) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(corr,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    values = svd.singularValues();
    left = svd.matrixU();
    right = svd.matrixV();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(corr,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    values = svd.singularValues();
    left = svd.matrixU();
    right = svd.matrixV();
  }
  if (options.max_rank > 0 && options.max_rank < values.size()) {
    values = values.head(options.max_rank).eval();
    left = left.leftCols(options.max_rank).eval();
    right = right.leftCols(options.max_rank).eval();
  }
  return finalize(values, left, right, options.rank_threshold);
}

// Abstracts the matrix so the block iteration can run on a dense matrix or
// on a sparse table without materializing the correspondence matrix.
struct LinearOperator {
  int rows = 0;
  int cols = 0;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> apply;        // A * X
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> apply_trans;  // A^T * X
};

// Block subspace iteration on A^T A with Rayleigh-Ritz extraction. Start
// basis is a fixed seeded Gaussian block, so runs are reproducible.
CorrespondenceDecomposition decompose_iterative(const LinearOperator& op,
                                                const DecomposeOptions& options) {
  const int n = op.rows, m = op.cols;
  const int full = std::min(n, m);
  const int want = options.max_rank > 0 ? std::min(options.max_rank, full) : full;
  const int p = std::min(full, want + 5);

  std::mt19937_64 rng(0x5eed5eed5eed5eedULL);
  Eigen::MatrixXd basis(m, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < m; ++i) {
      // Box-Muller on portable uniforms; keeps the start basis identical
      // across standard libraries.
      const double a = uniform01(rng), b = uniform01(rng);
      basis(i, j) = std::sqrt(-2.0 * std::log(a + 1e-300)) *
                    std::cos(6.283185307179586476925286766559 * b);
    }
  basis = Eigen::HouseholderQR<Eigen::MatrixXd>(basis)
              .householderQ() *
          Eigen::MatrixXd::Identity(m, p);

  Eigen::VectorXd prev = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd ritz_values;
  Eigen::MatrixXd ritz_left, ritz_right;
  bool converged = false;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::MatrixXd image = op.apply(basis);         // n x p
    const Eigen::MatrixXd pulled = op.apply_trans(image);  // m x p
    basis = Eigen::HouseholderQR<Eigen::MatrixXd>(pulled).householderQ() *
            Eigen::MatrixXd::Identity(m, p);

    const Eigen::MatrixXd projected = op.apply(basis);  // n x p
    Eigen::JacobiSVD<Eigen::MatrixXd> small(
        projected, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ritz_values = small.singularValues();
    ritz_left = small.matrixU();
    ritz_right = basis * small.matrixV();
    if ((ritz_values - prev).cwiseAbs().maxCoeff() < options.tolerance) {
      converged = true;
      break;
    }
    prev = ritz_values;
  }
  if (!converged)
    throw NumericError(errc::convergence_failure,
                       "block SVD iteration did not converge within " +
                           std::to_string(options.max_iterations) + " iterations");
  return finalize(ritz_values.head(want), ritz_left.leftCols(want),
                  ritz_right.leftCols(want), options.rank_threshold);
}

}  // namespace

Eigen::MatrixXd correspondence_matrix(const ContingencyTable& table) {
  const Eigen::VectorXd row_scale = table.row_sums().cwiseSqrt().cwiseInverse();
  const Eigen::VectorXd col_scale = table.col_sums().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(table.n_rows(), table.n_cols());
  table.for_each_nonzero([&](int i, int j, double v) {
    corr(i, j) = v * row_scale[i] * col_scale[j];
  });
  return corr;
}

CorrespondenceDecomposition decompose(const Eigen::MatrixXd& corr,
                                      const DecomposeOptions& options) {
  if (!corr.allFinite())
    throw ValidationError(errc::non_finite_entry, "matrix has non-finite entries");
  if (std::max(corr.rows(), corr.cols()) <= options.dense_limit)
    return decompose_dense(corr, options);
  LinearOperator op;
  op.rows = static_cast<int>(corr.rows());
  op.cols = static_cast<int>(corr.cols());
  op.apply = [&corr](const Eigen::MatrixXd& x) { return corr * x; };
  op.apply_trans = [&corr](const Eigen::MatrixXd& x) {
    return corr.transpose() * x;
  };
  return decompose_iterative(op, options);
}

CorrespondenceDecomposition decompose(const ContingencyTable& table,
                                      const DecomposeOptions& options) {
  if (std::max(table.n_rows(), table.n_cols()) <= options.dense_limit)
    return decompose_dense(correspondence_matrix(table), options);
  // Large tables: matrix-free products against D_row^{-1/2} C D_col^{-1/2}.
  const Eigen::VectorXd row_scale = table.row_sums().cwiseSqrt().cwiseInverse();
  const Eigen::VectorXd col_scale = table.col_sums().cwiseSqrt().cwiseInverse();
  LinearOperator op;
  op.rows = table.n_rows();
  op.cols = table.n_cols();
  op.apply = [&](const Eigen::MatrixXd& x) {
    Eigen::MatrixXd scaled = col_scale.asDiagonal() * x;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(table.n_rows(), x.cols());
    table.for_each_nonzero([&](int i, int j, double v) {
      out.row(i) += v * scaled.row(j);
    });
    return Eigen::MatrixXd(row_scale.asDiagonal() * out);
  };
  op.apply_trans = [&](const Eigen::MatrixXd& x) {
    Eigen::MatrixXd scaled = row_scale.asDiagonal() * x;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(table.n_cols(), x.cols());
    table.for_each_nonzero([&](int i, int j, double v) {
      out.row(j) += v * scaled.row(i);
    });
    return Eigen::MatrixXd(col_scale.asDiagonal() * out);
  };
  return decompose_iterative(op, options);
}

Representation representatives(const ContingencyTable& table,
                               const CorrespondenceDecomposition& decomp, int k) {
  if (k < 1 || k > decomp.rank())
    throw ValidationError(errc::k_out_of_range,
                          "k=" + std::to_string(k) + " with rank " +
                              std::to_string(decomp.rank()));
  const double gap = decomp.s(k) - decomp.s(k + 1);
  Representation rep;
  rep.k = k;
  if (gap == 0.0)
    throw ValidationError(errc::degenerate_gap,
                          "s_k equals s_{k+1} exactly; representation undefined");
  if (gap < 1e-8)
    rep.warnings.push_back("spectral gap s_" + std::to_string(k) + " - s_" +
                           std::to_string(k + 1) + " below 1e-8 (" +
                           std::to_string(gap) + "); representation unstable");
  rep.row_reps = table.row_sums().cwiseSqrt().cwiseInverse().asDiagonal() *
                 decomp.left_vectors.leftCols(k);
  rep.col_reps = table.col_sums().cwiseSqrt().cwiseInverse().asDiagonal() *
                 decomp.right_vectors.leftCols(k);
  return rep;
}

double objective_q(const ContingencyTable& table, const Representation& rep) {
  if (rep.row_reps.rows() != table.n_rows() ||
      rep.col_reps.rows() != table.n_cols() ||
      rep.row_reps.cols() != rep.col_reps.cols())
    throw ValidationError(errc::dimension_mismatch,
                          "representation does not match table shape");
  double q = 0.0;
  table.for_each_nonzero([&](int i, int j, double v) {
    q += v * (rep.row_reps.row(i) - rep.col_reps.row(j)).squaredNorm();
  });
  return q;
}

MinObjective min_objective(const CorrespondenceDecomposition& decomp, int k) {
  if (k < 1 || k > decomp.rank())
    throw ValidationError(errc::k_out_of_range,
                          "k=" + std::to_string(k) + " with rank " +
                              std::to_string(decomp.rank()));
  const double partial = decomp.singular_values.head(k).sum();
  return {2.0 * k - 2.0 * partial, 2.0 * k - partial};
}

StructuralK structural_k(const CorrespondenceDecomposition& decomp,
                         double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError(errc::epsilon_out_of_range,
                          "epsilon must lie in (0, 1)");
  StructuralK result;
  for (int i = 0; i < decomp.rank(); ++i)
    if (decomp.singular_values[i] > epsilon) ++result.count;
  result.suggested_by_gap = 1;
  double best = -1.0;
  for (int i = 1; i < decomp.rank(); ++i) {
    const double rel =
        (decomp.singular_values[i - 1] - decomp.singular_values[i]) /
        decomp.singular_values[i - 1];
    if (rel > best + 1e-15) {
      best = rel;
      result.suggested_by_gap = i;
    }
  }
  return result;
}

}  // namespace coclust
