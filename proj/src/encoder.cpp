#include "encoder.hpp"

#include <cmath>

#include "error.hpp"

namespace digmol {
namespace {

Matrix he_uniform(std::size_t rows, std::size_t cols, RngStream& rng) {
    double limit = std::sqrt(6.0 / static_cast<double>(rows));
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.next_uniform(-limit, limit);
    return m;
}

}  // namespace

EncoderParams init_encoder(const EncoderArchitecture& arch, RngStream& rng) {
    if (arch.num_layers == 0 || arch.k_steps < 1) {
        throw Error(ErrorCode::invalid_config, "encoder needs at least one layer and K >= 1");
    }
    EncoderParams params;
    std::size_t in = arch.input_dim;
    for (std::size_t l = 0; l < arch.num_layers; ++l) {
        DiffusionLayerParams layer;
        layer.epsilon = arch.epsilon;
        for (int k = 0; k <= arch.k_steps; ++k) {
            layer.w_fwd.push_back(he_uniform(in, arch.hidden_dim, rng));
            layer.w_bwd.push_back(he_uniform(in, arch.hidden_dim, rng));
        }
        params.layers.push_back(std::move(layer));
        in = arch.hidden_dim;
    }
    params.projection.w1 = he_uniform(arch.hidden_dim, arch.hidden_dim, rng);
    params.projection.b1 = Matrix(1, arch.hidden_dim);
    params.projection.w2 = he_uniform(arch.hidden_dim, arch.projection_dim, rng);
    params.projection.b2 = Matrix(1, arch.projection_dim);
    return params;
}

void for_each_parameter(EncoderParams& params,
                        const std::function<void(const std::string&, Matrix&)>& fn) {
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        DiffusionLayerParams& layer = params.layers[l];
        for (std::size_t k = 0; k < layer.w_fwd.size(); ++k) {
            fn("layer" + std::to_string(l) + ".w_fwd" + std::to_string(k), layer.w_fwd[k]);
            fn("layer" + std::to_string(l) + ".w_bwd" + std::to_string(k), layer.w_bwd[k]);
        }
    }
    fn("projection.w1", params.projection.w1);
    fn("projection.b1", params.projection.b1);
    fn("projection.w2", params.projection.w2);
    fn("projection.b2", params.projection.b2);
}

void for_each_parameter(const EncoderParams& params,
                        const std::function<void(const std::string&, const Matrix&)>& fn) {
    for_each_parameter(const_cast<EncoderParams&>(params),
                       [&fn](const std::string& name, Matrix& m) { fn(name, m); });
}

Tensor diffusion_layer(Tape& tape, const Tensor& h, const Tensor& p_fwd, const Tensor& p_bwd,
                       const std::vector<Tensor>& w_fwd, const std::vector<Tensor>& w_bwd,
                       double epsilon) {
    if (w_fwd.size() != w_bwd.size() || w_fwd.empty()) {
        throw Error(ErrorCode::shape_mismatch, "forward/backward weight lists must align");
    }
    Tensor acc;
    Tensor h_fwd = h;  // Pf^k H, built by repeated left-multiplication
    Tensor h_bwd = h;
    for (std::size_t k = 0; k < w_fwd.size(); ++k) {
        if (k > 0) {
            h_fwd = tape.matmul(p_fwd, h_fwd);
            h_bwd = tape.matmul(p_bwd, h_bwd);
        }
        if (epsilon != 0.0) {
            Tensor term = tape.scale(tape.matmul(h_fwd, w_fwd[k]), epsilon);
            acc = acc.defined() ? tape.add(acc, term) : term;
        }
        if (epsilon != 1.0) {
            Tensor term = tape.scale(tape.matmul(h_bwd, w_bwd[k]), 1.0 - epsilon);
            acc = acc.defined() ? tape.add(acc, term) : term;
        }
    }
    return tape.relu(acc);
}

Tensor gcn_layer(Tape& tape, const Tensor& h, const Tensor& a_norm, const Tensor& w) {
    return tape.relu(tape.matmul(tape.matmul(a_norm, h), w));
}

Tensor readout(Tape& tape, const Tensor& node_embeddings) {
    if (node_embeddings.rows() == 0) {
        throw Error(ErrorCode::empty_graph, "readout of an empty graph");
    }
    return tape.mean_rows(node_embeddings);
}

Tensor project(Tape& tape, const Tensor& h_graph, const Tensor& w1, const Tensor& b1,
               const Tensor& w2, const Tensor& b2) {
    Tensor hidden = tape.relu(tape.add(tape.matmul(h_graph, w1), b1));
    return tape.add(tape.matmul(hidden, w2), b2);
}

BoundEncoder::BoundEncoder(Tape& tape, const EncoderParams& params, bool requires_grad)
    : tape_(&tape) {
    for (const DiffusionLayerParams& layer : params.layers) {
        std::vector<Tensor> wf, wb;
        for (std::size_t k = 0; k < layer.w_fwd.size(); ++k) {
            wf.push_back(tape.input(layer.w_fwd[k], requires_grad));
            wb.push_back(tape.input(layer.w_bwd[k], requires_grad));
            flat_.push_back(wf.back());
            flat_.push_back(wb.back());
        }
        w_fwd_.push_back(std::move(wf));
        w_bwd_.push_back(std::move(wb));
        epsilon_.push_back(layer.epsilon);
    }
    p_w1_ = tape.input(params.projection.w1, requires_grad);
    p_b1_ = tape.input(params.projection.b1, requires_grad);
    p_w2_ = tape.input(params.projection.w2, requires_grad);
    p_b2_ = tape.input(params.projection.b2, requires_grad);
    flat_.push_back(p_w1_);
    flat_.push_back(p_b1_);
    flat_.push_back(p_w2_);
    flat_.push_back(p_b2_);
}

BoundEncoder::Result BoundEncoder::encode(const MolGraph& graph, EncoderMode mode) const {
    Tape& tape = *tape_;
    Tensor h = tape.constant(graph.features);
    if (mode == EncoderMode::diffusion) {
        TransitionPair trans = transitions(graph);
        Tensor p_fwd = tape.constant(trans.forward);
        Tensor p_bwd = tape.constant(trans.backward);
        for (std::size_t l = 0; l < w_fwd_.size(); ++l) {
            h = diffusion_layer(tape, h, p_fwd, p_bwd, w_fwd_[l], w_bwd_[l], epsilon_[l]);
        }
    } else {
        Tensor a_norm = tape.constant(normalized_self_loop_adjacency(graph));
        // the ablation reuses each layer's k=0 forward weight
        for (std::size_t l = 0; l < w_fwd_.size(); ++l) {
            h = gcn_layer(tape, h, a_norm, w_fwd_[l][0]);
        }
    }
    Result result;
    result.h_graph = readout(tape, h);
    result.z = project(tape, result.h_graph, p_w1_, p_b1_, p_w2_, p_b2_);
    return result;
}

std::vector<Matrix> BoundEncoder::parameter_gradients(const Gradients& grads) const {
    std::vector<Matrix> out;
    out.reserve(flat_.size());
    for (const Tensor& t : flat_) out.push_back(grads.grad(t));
    return out;
}

BoundEncoder::Result encode(Tape& tape, const MolGraph& graph, const EncoderParams& params,
                            EncoderMode mode) {
    BoundEncoder bound(tape, params, false);
    return bound.encode(graph, mode);
}

}  // namespace digmol
