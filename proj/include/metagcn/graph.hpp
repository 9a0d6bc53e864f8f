#pragma once

#include <iosfwd>
#include <vector>

#include "metagcn/matrix.hpp"

namespace metagcn {

enum class Metric { euclidean, cosine };

// Undirected, unweighted graph over the dataset rows plus its normalized
// propagation matrix a_hat = D^{-1/2} (A + I) D^{-1/2}.
struct GraphData {
    std::size_t n_nodes = 0;
    SparseMatrix adjacency;  // binary, symmetric, zero diagonal
    SparseMatrix a_hat;      // symmetric, strictly positive diagonal

    std::size_t n_edges() const { return adjacency.nnz() / 2; }
};

// Symmetrized k-nearest-neighbour graph. An edge {i,j} exists if either
// endpoint selected the other. Self-pairs are excluded; distance ties break
// toward the lower node index.
GraphData knn_graph(const DenseMatrix& features, std::size_t k, Metric metric);

// a_hat = D^{-1/2} (A + I) D^{-1/2} with D_ii = 1 + degree(i).
// The input must be binary, symmetric, with an empty diagonal.
SparseMatrix normalize_adjacency(const SparseMatrix& adjacency);

// Subgraph on `nodes` (relabelled 0..m-1 in list order) keeping exactly the
// edges with both endpoints retained; a_hat is recomputed on the subgraph.
GraphData induced_subgraph(const GraphData& g, const std::vector<std::size_t>& nodes);

// Wraps an adjacency matrix (validating its contract) and computes a_hat.
GraphData graph_from_adjacency(SparseMatrix adjacency);

// Extends `base` (a graph over the first n_real rows of `features`) with the
// remaining rows: each new node is linked to its k nearest neighbours among
// the real nodes only, and the edge set is symmetrized by union.
GraphData attach_nodes_knn(const GraphData& base, const DenseMatrix& features,
                           std::size_t n_real, std::size_t k, Metric metric);

// Plain-text edge list, one undirected edge per line as "i j" with i < j.
void write_edge_list(const GraphData& g, std::ostream& out);

}  // namespace metagcn
