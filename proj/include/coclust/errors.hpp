#pragma once

#include <stdexcept>
#include <string>

namespace coclust {

// Error conditions named by the failure they report. The exception class
// decides the CLI exit code: validation -> 2, budget -> 3, numeric -> 4.
enum class errc {
  negative_entry,
  non_finite_entry,
  zero_row,
  zero_column,
  index_out_of_range,
  dimension_mismatch,
  k_out_of_range,
  epsilon_out_of_range,
  degenerate_gap,
  empty_subset,
  empty_part,
  partition_mismatch,
  label_out_of_range,
  too_few_points,
  non_positive_weight,
  decomposable_table,
  not_normalized,
  nonzero_diagonal,
  source_or_sink,
  degenerate_draw,
  ragged_rows,
  non_numeric_cell,
  bad_header,
  index_out_of_declared_bounds,
  budget_exceeded,
  convergence_failure,
  io_failure,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::negative_entry: return "NegativeEntry";
    case errc::non_finite_entry: return "NonFinite";
    case errc::zero_row: return "ZeroRow";
    case errc::zero_column: return "ZeroColumn";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::k_out_of_range: return "KOutOfRange";
    case errc::epsilon_out_of_range: return "EpsilonOutOfRange";
    case errc::degenerate_gap: return "DegenerateGap";
    case errc::empty_subset: return "EmptySubset";
    case errc::empty_part: return "EmptyPart";
    case errc::partition_mismatch: return "PartitionMismatch";
    case errc::label_out_of_range: return "LabelOutOfRange";
    case errc::too_few_points: return "TooFewPoints";
    case errc::non_positive_weight: return "NonPositiveWeight";
    case errc::decomposable_table: return "DecomposableTable";
    case errc::not_normalized: return "NotNormalized";
    case errc::nonzero_diagonal: return "NonzeroDiagonal";
    case errc::source_or_sink: return "SourceOrSink";
    case errc::degenerate_draw: return "DegenerateDraw";
    case errc::ragged_rows: return "RaggedRows";
    case errc::non_numeric_cell: return "NonNumericCell";
    case errc::bad_header: return "BadHeader";
    case errc::index_out_of_declared_bounds: return "IndexOutOfDeclaredBounds";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::io_failure: return "IoFailure";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Rejected input: bad entries, bad shapes, bad flags. Exit code 2.
class ValidationError : public Error {
  using Error::Error;
};

// Exhaustive enumeration over its budget without force. Exit code 3.
class BudgetError : public Error {
  using Error::Error;
};

// An iterative numerical routine failed. Exit code 4.
class NumericError : public Error {
  using Error::Error;
};

// Filesystem-level failure. Exit code 2.
class IoError : public Error {
  using Error::Error;
};

}  // namespace coclust
