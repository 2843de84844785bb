#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coclust/clustering.hpp"
#include "coclust/table.hpp"

namespace coclust {

struct ParsedTable {
  ContingencyTable table;
  std::vector<std::string> row_labels;  // empty when the file carries none
  std::vector<std::string> col_labels;
};

// Rectangular numeric CSV; an all-text first row becomes column labels, an
// all-text first column row labels. Decimal point only, cells may carry
// surrounding whitespace, blank lines are ignored.
ParsedTable parse_dense_csv(std::string_view text);

// One "i j value" per line, 1-based indices, '#' starts a comment; duplicate
// coordinates are summed. Dimensions come from the largest indices.
ParsedTable parse_triplets(std::string_view text);

// Matrix Market "matrix coordinate real general" (integer accepted as real);
// duplicate coordinates are summed.
ParsedTable parse_matrix_market(std::string_view text);

ParsedTable parse_table(std::string_view text, const std::string& format);

// Table serialization for generated fixtures; the matrix is written as
// given, with every value at 17 significant digits.
std::string write_table_csv(const Eigen::MatrixXd& matrix);
std::string write_table_triplets(const Eigen::MatrixXd& matrix);
std::string write_table_matrix_market(const Eigen::MatrixXd& matrix);

// Deterministic JSON text: stable key order, 2-space indent, every float at
// 17 significant digits so the document reparses to the same bytes.
std::string write_json(const nlohmann::ordered_json& document);

// Parses a report document back into its key/value tree.
nlohmann::ordered_json read_report(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Heatmap of c_ij / (d_row_i d_col_j) with rows and columns sorted by
// cluster (stable by original index): an 8-bit binary graymap scaled
// linearly over [0, max] plus a sidecar CSV of the raw values, the display
// order, and the cluster boundaries.
struct HeatmapResult {
  std::string image_path;
  std::string csv_path;
  double max_value = 0.0;
};
HeatmapResult write_heatmap(const ContingencyTable& table,
                            const ClusterAssignment& assignment,
                            const std::string& out_prefix);

}  // namespace coclust
