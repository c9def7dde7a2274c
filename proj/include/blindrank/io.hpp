#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blindrank/filters.hpp"
#include "blindrank/graph.hpp"
#include "blindrank/ranking.hpp"
#include "blindrank/signals.hpp"

namespace blindrank {

/// Round-trippable decimal formatting (%.17g) used by every CSV writer.
std::string format_value(double v);

// Graph edge lists: header "src,dst,weight", 1-based ids, i<j rows in
// row-major order. Round trips are bit-exact for 0/1 weights.
void write_graph_csv(const Graph& g, const std::string& path);
void write_graph_sidecar(const Graph& g, const std::string& kind,
                         std::uint64_t seed, const std::string& params_json,
                         const std::string& path);
Graph read_graph_csv(const std::string& path);

// Headerless numeric CSV for batches (m rows x n cols) and covariance
// matrices (n x n).
void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

void write_vector_csv(const Eigen::VectorXd& v, const std::string& path);
Eigen::VectorXd read_vector_csv(const std::string& path);

void write_batch(const SignalBatch& b, const std::string& csv_path,
                 const std::string& sidecar_path);
SignalBatch read_batch(const std::string& csv_path,
                       const std::string& sidecar_path);

// Filter specs: {"type":"poly","coeffs":[...],"normalize":bool} or
// {"type":"spectral","name":"sqrt_abs"|"identity"|"heat:<t>"}.
GraphFilter filter_from_json(const std::string& json_text);
std::string filter_to_json(const GraphFilter& f);

// Orderings as JSON with a run-length list of pair relations.
void write_ordering_json(const NodeOrdering& o, const std::string& path);
NodeOrdering read_ordering_json(const std::string& path);

void write_concordance_json(const ConcordanceReport& r, const std::string& path);

/// Schema sidecar (<csv path>.schema.json) naming columns and types.
void write_csv_schema(const std::string& csv_path,
                      const std::vector<std::pair<std::string, std::string>>&
                          columns_and_types);

// Small file helpers shared by the experiment runners.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace blindrank
