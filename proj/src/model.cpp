#include "metagcn/model.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "metagcn/error.hpp"
#include "metagcn/rng.hpp"

namespace metagcn {

bool GcnParams::same_shape(const GcnParams& o) const {
    if (layers.size() != o.layers.size()) return false;
    for (std::size_t l = 0; l < layers.size(); ++l)
        if (!layers[l].same_shape(o.layers[l])) return false;
    return true;
}

bool GcnParams::all_finite() const {
    for (const auto& m : layers)
        if (!m.all_finite()) return false;
    return true;
}

GcnParams init_params(const std::vector<std::size_t>& widths, std::uint64_t seed) {
    if (widths.size() < 2) throw ParamError("init_params: need at least one layer");
    for (std::size_t w : widths)
        if (w == 0) throw ParamError("init_params: zero width");
    GcnParams p;
    p.widths = widths;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const std::size_t fan_in = widths[l];
        const std::size_t fan_out = widths[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Rng rng = Rng::stream(seed, 0x1717 + l);
        DenseMatrix m(fan_in, fan_out);
        for (double& v : m.data()) v = rng.uniform(-bound, bound);
        p.layers.push_back(std::move(m));
    }
    return p;
}

namespace {

void apply_output_activation(DenseMatrix& logits, OutputActivation act) {
    if (act == OutputActivation::sigmoid) {
        for (double& v : logits.data()) v = 1.0 / (1.0 + std::exp(-v));
        return;
    }
    for (std::size_t i = 0; i < logits.rows(); ++i) {
        auto row = logits.row(i);
        double mx = row[0];
        for (double v : row) mx = std::max(mx, v);
        double denom = 0.0;
        for (double& v : row) {
            v = std::exp(v - mx);
            denom += v;
        }
        for (double& v : row) v /= denom;
    }
}

void check_forward_shapes(const GcnParams& params, const SparseMatrix& a_hat,
                          const DenseMatrix& x) {
    if (params.layers.empty()) throw ParamError("gcn_forward: no layers");
    if (a_hat.rows != a_hat.cols || a_hat.rows != x.rows())
        throw ShapeError("gcn_forward: a_hat is " + std::to_string(a_hat.rows) + "x" +
                         std::to_string(a_hat.cols) + " but x has " + std::to_string(x.rows()) +
                         " rows");
    if (x.cols() != params.layers.front().rows())
        throw ShapeError("gcn_forward: feature width " + std::to_string(x.cols()) +
                         " does not match layer 0 input " +
                         std::to_string(params.layers.front().rows()));
    for (std::size_t l = 0; l + 1 < params.layers.size(); ++l)
        if (params.layers[l].cols() != params.layers[l + 1].rows())
            throw ShapeError("gcn_forward: layer width chain broken at layer " + std::to_string(l));
}

}  // namespace

ForwardCache gcn_forward(const GcnParams& params, const SparseMatrix& a_hat, const DenseMatrix& x,
                         OutputActivation act) {
    check_forward_shapes(params, a_hat, x);
    const std::size_t n_layers = params.layers.size();
    ForwardCache cache;
    cache.out_act = act;
    cache.activations.reserve(n_layers + 1);
    cache.activations.push_back(x);
    for (std::size_t l = 0; l < n_layers; ++l) {
        cache.propagated.push_back(spmm(a_hat, cache.activations.back()));
        cache.preact.push_back(matmul(cache.propagated.back(), params.layers[l]));
        DenseMatrix z = cache.preact.back();
        if (l + 1 < n_layers)
            for (double& v : z.data()) v = v > 0.0 ? v : 0.0;
        cache.activations.push_back(std::move(z));
    }
    cache.probs = cache.activations.back();
    apply_output_activation(cache.probs, act);
    if (!cache.probs.all_finite() || !cache.activations.back().all_finite())
        throw NumericError("gcn_forward: non-finite output");
    return cache;
}

std::vector<DenseMatrix> gcn_backward(const ForwardCache& cache, const GcnParams& params,
                                      const SparseMatrix& a_hat,
                                      const DenseMatrix& per_node_loss_grad) {
    const std::size_t n_layers = params.layers.size();
    if (cache.preact.size() != n_layers || cache.activations.size() != n_layers + 1)
        throw ContractError("gcn_backward: cache does not match params");
    if (per_node_loss_grad.rows() != cache.activations[0].rows() ||
        per_node_loss_grad.cols() != params.layers.back().cols())
        throw ShapeError("gcn_backward: upstream gradient has wrong shape");
    for (std::size_t l = 0; l < n_layers; ++l)
        if (!cache.propagated[l].same_shape(DenseMatrix(cache.activations[l].rows(),
                                                        params.layers[l].rows())))
            throw ContractError("gcn_backward: cache does not match params");

    std::vector<DenseMatrix> grads(n_layers);
    DenseMatrix g = per_node_loss_grad;  // dLoss/dPreact of the current layer
    for (std::size_t l = n_layers; l-- > 0;) {
        grads[l] = matmul(transpose(cache.propagated[l]), g);
        if (l == 0) break;
        // dZ^{l-1} = A_hat g theta^T, using the symmetry of a_hat
        DenseMatrix gz = spmm(a_hat, matmul(g, transpose(params.layers[l])));
        const DenseMatrix& s = cache.preact[l - 1];
        for (std::size_t i = 0; i < gz.size(); ++i)
            gz.data()[i] = s.data()[i] > 0.0 ? gz.data()[i] : 0.0;
        g = std::move(gz);
    }
    return grads;
}

ForwardCache mlp_forward(const GcnParams& params, const DenseMatrix& x, OutputActivation act) {
    return gcn_forward(params, SparseMatrix::identity(x.rows()), x, act);
}

std::vector<DenseMatrix> mlp_backward(const ForwardCache& cache, const GcnParams& params,
                                      const DenseMatrix& per_node_loss_grad) {
    return gcn_backward(cache, params, SparseMatrix::identity(per_node_loss_grad.rows()),
                        per_node_loss_grad);
}

namespace {
constexpr char kMagic[8] = {'M', 'G', 'C', 'N', 'P', 'A', 'R', '1'};
}

void save_params(const GcnParams& params, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("save_params: cannot open " + path);
    out.write(kMagic, sizeof(kMagic));
    const std::uint64_t n = params.layers.size();
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    for (const auto& m : params.layers) {
        const std::uint64_t r = m.rows(), c = m.cols();
        out.write(reinterpret_cast<const char*>(&r), sizeof(r));
        out.write(reinterpret_cast<const char*>(&c), sizeof(c));
        out.write(reinterpret_cast<const char*>(m.data().data()),
                  static_cast<std::streamsize>(m.size() * sizeof(double)));
    }
    if (!out) throw DataError("save_params: write failed for " + path);
}

GcnParams load_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("load_params: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
        throw DataError("load_params: bad magic in " + path);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!in || n == 0 || n > 64) throw DataError("load_params: bad layer count in " + path);
    GcnParams p;
    for (std::uint64_t l = 0; l < n; ++l) {
        std::uint64_t r = 0, c = 0;
        in.read(reinterpret_cast<char*>(&r), sizeof(r));
        in.read(reinterpret_cast<char*>(&c), sizeof(c));
        if (!in || r == 0 || c == 0) throw DataError("load_params: bad layer shape in " + path);
        DenseMatrix m(r, c);
        in.read(reinterpret_cast<char*>(m.data().data()),
                static_cast<std::streamsize>(m.size() * sizeof(double)));
        if (!in) throw DataError("load_params: truncated file " + path);
        if (l > 0 && p.layers.back().cols() != m.rows())
            throw DataError("load_params: layer width chain broken in " + path);
        p.layers.push_back(std::move(m));
    }
    p.widths.push_back(p.layers.front().rows());
    for (const auto& m : p.layers) p.widths.push_back(m.cols());
    return p;
}

}  // namespace metagcn
