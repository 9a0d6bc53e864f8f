#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "metagcn/graph.hpp"
#include "metagcn/matrix.hpp"

namespace metagcn {

struct TabularDataset {
    DenseMatrix features;     // N x F
    std::vector<int> labels;  // 0..C-1; class 1 is the minority/positive class
    std::size_t class_count = 0;
    std::string name;

    std::size_t n_rows() const { return features.rows(); }
    std::size_t n_features() const { return features.cols(); }
};

enum class Schema { haberman, pima_diabetes, generic_csv };

Schema schema_from_string(const std::string& s);
std::string to_string(Schema s);

// Comma-separated ingestion. haberman: 3 numeric features + survival label
// (2 -> class 1, 1 -> class 0); pima_diabetes: 8 numeric features + 0/1
// label; generic_csv: last column is the label, optional header, classes
// renumbered so rarer classes get higher ids (binary: minority -> 1).
// Malformed rows abort with a line-numbered DataError.
TabularDataset load_dataset(const std::string& path, Schema schema);

// Per-column z-score fitted on fit_indices only (population std) and applied
// to every row; constant columns map to zero.
TabularDataset standardize(const TabularDataset& d, const std::vector<std::size_t>& fit_indices);

struct SplitAssignment {
    std::vector<std::size_t> train, val, test, meta_pool;
};

// Stratified 60/10/20/10 shuffle split, deterministic per seed. Every class
// is represented in train and in meta_pool.
SplitAssignment split_dataset(const TabularDataset& d, std::uint64_t seed);

void write_split_manifest(const SplitAssignment& s, std::ostream& out);
SplitAssignment read_split_manifest(std::istream& in, std::size_t n_nodes);

struct MetaSet {
    std::vector<std::size_t> node_indices;  // ascending, subset of meta_pool
    DenseMatrix x_meta;
    std::vector<int> y_meta;
    GraphData graph_meta;  // induced subgraph on node_indices
    bool clamped = false;  // per_class exceeded some class pool
};

// Uniform class-balanced sample from the meta pool, without replacement.
// per_class == 0 selects the largest balanced sample the pool supports; if
// per_class exceeds a class pool, all classes clamp to the shortest pool
// (keeping the counts equal) and a warning is emitted.
MetaSet sample_meta_set(const TabularDataset& d, const SplitAssignment& splits,
                        const GraphData& g, std::size_t per_class, std::uint64_t seed);

struct GraphBuildConfig {
    std::size_t k = 5;
    Metric metric = Metric::euclidean;
};

struct SmoteResult {
    TabularDataset dataset;                  // original rows + synthetic rows
    std::vector<std::size_t> train_indices;  // original train + synthetic ids
    GraphData graph;                         // real edges + synthetic attachments
    std::size_t n_synthetic = 0;
};

// Synthetic minority oversampling: x_new = x_i + u * (x_nn - x_i) with
// u ~ U(0,1) and x_nn one of the k nearest minority training neighbours of
// x_i. Enough samples are generated to bring the minority training count to
// scale * majority count (never removing rows). Synthetic nodes join the
// graph via k-NN against the real nodes.
SmoteResult smote_oversample(const TabularDataset& d, const GraphData& g,
                             const std::vector<std::size_t>& train_indices, double scale,
                             std::size_t k, std::uint64_t seed, const GraphBuildConfig& gcfg);

DenseMatrix one_hot_labels(const std::vector<int>& labels, std::size_t class_count);

std::vector<std::size_t> class_counts(const std::vector<int>& labels, std::size_t class_count);

}  // namespace metagcn
