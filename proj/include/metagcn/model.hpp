#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metagcn/matrix.hpp"

namespace metagcn {

enum class OutputActivation { sigmoid, softmax };

// Per-layer weight matrices theta^l; layer l maps widths[l] -> widths[l+1].
// No bias terms: each layer is Z^l = relu(A_hat Z^{l-1} theta^l), the last
// layer is linear and feeds the output activation.
struct GcnParams {
    std::vector<DenseMatrix> layers;
    std::vector<std::size_t> widths;

    bool same_shape(const GcnParams& o) const;
    bool all_finite() const;
};

// Glorot-uniform initialization, deterministic per seed.
GcnParams init_params(const std::vector<std::size_t>& widths, std::uint64_t seed);

// Intermediates of one forward pass, retained for the backward pass.
// propagated[l] = A_hat * activations[l] is the left factor of layer l's
// weight gradient; preact[l] is its pre-activation.
struct ForwardCache {
    std::vector<DenseMatrix> propagated;
    std::vector<DenseMatrix> preact;
    std::vector<DenseMatrix> activations;  // activations[0] == input features
    DenseMatrix probs;
    OutputActivation out_act = OutputActivation::sigmoid;
};

ForwardCache gcn_forward(const GcnParams& params, const SparseMatrix& a_hat, const DenseMatrix& x,
                         OutputActivation act = OutputActivation::sigmoid);

// Reverse-mode gradients of a scalar loss w.r.t. every layer, given the
// loss gradient at the output logits (N x C). a_hat must be symmetric.
std::vector<DenseMatrix> gcn_backward(const ForwardCache& cache, const GcnParams& params,
                                      const SparseMatrix& a_hat,
                                      const DenseMatrix& per_node_loss_grad);

// MLP baseline: the GCN with propagation replaced by the identity.
ForwardCache mlp_forward(const GcnParams& params, const DenseMatrix& x,
                         OutputActivation act = OutputActivation::sigmoid);
std::vector<DenseMatrix> mlp_backward(const ForwardCache& cache, const GcnParams& params,
                                      const DenseMatrix& per_node_loss_grad);

// Checkpoint io; round-trips bit-exactly.
void save_params(const GcnParams& params, const std::string& path);
GcnParams load_params(const std::string& path);

}  // namespace metagcn
