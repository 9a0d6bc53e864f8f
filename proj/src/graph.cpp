#include "metagcn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <string>
#include <tuple>

#include "metagcn/error.hpp"

namespace metagcn {

namespace {

// Squared euclidean or cosine distance between feature rows. Squared
// euclidean preserves the neighbour ordering and avoids the sqrt.
double pair_distance(const DenseMatrix& x, std::size_t i, std::size_t j, Metric metric) {
    const auto a = x.row(i);
    const auto b = x.row(j);
    if (metric == Metric::euclidean) {
        double acc = 0.0;
        for (std::size_t f = 0; f < a.size(); ++f) {
            const double d = a[f] - b[f];
            acc += d * d;
        }
        return acc;
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) {
        dot += a[f] * b[f];
        na += a[f] * a[f];
        nb += b[f] * b[f];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;  // zero vector: treat as orthogonal
    return 1.0 - dot / std::sqrt(na * nb);
}

// Indices of the k nearest candidates to node i; ties break toward the
// lower index. `candidates` maps the selectable rows of x.
std::vector<std::size_t> nearest_k(const DenseMatrix& x, std::size_t i,
                                   const std::vector<std::size_t>& candidates, std::size_t k,
                                   Metric metric) {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(candidates.size());
    for (std::size_t j : candidates) {
        if (j == i) continue;
        dist.emplace_back(pair_distance(x, i, j, metric), j);
    }
    const std::size_t kk = std::min(k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
    std::vector<std::size_t> out(kk);
    for (std::size_t t = 0; t < kk; ++t) out[t] = dist[t].second;
    return out;
}

SparseMatrix adjacency_from_edges(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    triplets.reserve(edges.size() * 2);
    for (const auto& [i, j] : edges) {
        triplets.emplace_back(i, j, 1.0);
        triplets.emplace_back(j, i, 1.0);
    }
    return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

}  // namespace

GraphData knn_graph(const DenseMatrix& features, std::size_t k, Metric metric) {
    const std::size_t n = features.rows();
    if (k < 1 || k >= n)
        throw ParamError("knn_graph: k=" + std::to_string(k) + " out of range for n=" +
                         std::to_string(n));
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;

    std::set<std::pair<std::size_t, std::size_t>> edges;  // (min, max)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : nearest_k(features, i, all, k, metric))
            edges.emplace(std::min(i, j), std::max(i, j));

    return graph_from_adjacency(adjacency_from_edges(n, edges));
}

SparseMatrix normalize_adjacency(const SparseMatrix& adjacency) {
    adjacency.validate();
    if (adjacency.rows != adjacency.cols)
        throw ContractError("normalize_adjacency: adjacency must be square");
    if (!adjacency.is_symmetric())
        throw ContractError("normalize_adjacency: adjacency must be symmetric");
    const std::size_t n = adjacency.rows;
    std::vector<double> deg(n, 1.0);  // self-loop contributes 1
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t kk = adjacency.row_offsets[i]; kk < adjacency.row_offsets[i + 1]; ++kk) {
            if (adjacency.col_indices[kk] == i)
                throw ContractError("normalize_adjacency: diagonal must be empty");
            if (adjacency.values[kk] != 1.0)
                throw ContractError("normalize_adjacency: adjacency must be binary");
            deg[i] += 1.0;
        }
    }
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    triplets.reserve(adjacency.nnz() + n);
    for (std::size_t i = 0; i < n; ++i) {
        triplets.emplace_back(i, i, 1.0 / std::sqrt(deg[i] * deg[i]));
        for (std::size_t kk = adjacency.row_offsets[i]; kk < adjacency.row_offsets[i + 1]; ++kk) {
            const std::size_t j = adjacency.col_indices[kk];
            triplets.emplace_back(i, j, 1.0 / std::sqrt(deg[i] * deg[j]));
        }
    }
    return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

GraphData graph_from_adjacency(SparseMatrix adjacency) {
    GraphData g;
    g.n_nodes = adjacency.rows;
    g.a_hat = normalize_adjacency(adjacency);
    g.adjacency = std::move(adjacency);
    return g;
}

GraphData induced_subgraph(const GraphData& g, const std::vector<std::size_t>& nodes) {
    std::vector<std::size_t> seen;
    std::vector<std::size_t> to_new(g.n_nodes, SIZE_MAX);
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        const std::size_t v = nodes[t];
        if (v >= g.n_nodes)
            throw ParamError("induced_subgraph: node " + std::to_string(v) + " out of range");
        if (to_new[v] != SIZE_MAX)
            throw ParamError("induced_subgraph: duplicate node " + std::to_string(v));
        to_new[v] = t;
    }
    std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
    for (std::size_t v : nodes) {
        const auto& a = g.adjacency;
        for (std::size_t kk = a.row_offsets[v]; kk < a.row_offsets[v + 1]; ++kk) {
            const std::size_t u = a.col_indices[kk];
            if (to_new[u] != SIZE_MAX) triplets.emplace_back(to_new[v], to_new[u], 1.0);
        }
    }
    return graph_from_adjacency(
        SparseMatrix::from_triplets(nodes.size(), nodes.size(), std::move(triplets)));
}

GraphData attach_nodes_knn(const GraphData& base, const DenseMatrix& features,
                           std::size_t n_real, std::size_t k, Metric metric) {
    const std::size_t n = features.rows();
    if (base.n_nodes != n_real)
        throw ParamError("attach_nodes_knn: base graph does not cover the real nodes");
    if (n < n_real) throw ParamError("attach_nodes_knn: fewer feature rows than real nodes");
    if (k < 1 || k >= n_real) throw ParamError("attach_nodes_knn: k out of range");

    std::vector<std::size_t> real(n_real);
    for (std::size_t i = 0; i < n_real; ++i) real[i] = i;

    std::set<std::pair<std::size_t, std::size_t>> edges;
    const auto& a = base.adjacency;
    for (std::size_t i = 0; i < n_real; ++i)
        for (std::size_t kk = a.row_offsets[i]; kk < a.row_offsets[i + 1]; ++kk)
            edges.emplace(std::min(i, a.col_indices[kk]), std::max(i, a.col_indices[kk]));
    for (std::size_t s = n_real; s < n; ++s)
        for (std::size_t j : nearest_k(features, s, real, k, metric))
            edges.emplace(std::min(s, j), std::max(s, j));

    return graph_from_adjacency(adjacency_from_edges(n, edges));
}

void write_edge_list(const GraphData& g, std::ostream& out) {
    const auto& a = g.adjacency;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t kk = a.row_offsets[i]; kk < a.row_offsets[i + 1]; ++kk)
            if (i < a.col_indices[kk]) out << i << ' ' << a.col_indices[kk] << '\n';
}

}  // namespace metagcn
