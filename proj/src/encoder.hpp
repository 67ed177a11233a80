#ifndef DIGMOL_ENCODER_HPP
#define DIGMOL_ENCODER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "autodiff.hpp"
#include "molgraph.hpp"
#include "rng.hpp"

namespace digmol {

// One bidirectional diffusion layer:
//   H' = relu( sum_{k=0..K} eps * Pf^k H Wf[k] + (1-eps) * Pb^k H Wb[k] )
// with Pf/Pb the row-normalized forward/backward transition matrices and
// P^0 = I. Terms whose mixing coefficient is exactly zero are skipped, so
// the unused direction's weights stay out of the forward value.
struct DiffusionLayerParams {
    std::vector<Matrix> w_fwd;  // K+1 matrices, P_in x P_out
    std::vector<Matrix> w_bwd;  // same shapes
    double epsilon = 0.5;

    int k_steps() const { return static_cast<int>(w_fwd.size()) - 1; }
};

struct ProjectionParams {
    Matrix w1, b1;  // D -> D_h
    Matrix w2, b2;  // D_h -> D_z
};

struct EncoderParams {
    std::vector<DiffusionLayerParams> layers;
    ProjectionParams projection;

    std::size_t input_dim() const { return layers.front().w_fwd.front().rows(); }
    std::size_t embedding_dim() const { return layers.back().w_fwd.front().cols(); }
    std::size_t projection_dim() const { return projection.w2.cols(); }
};

struct EncoderArchitecture {
    std::size_t input_dim = 24;
    std::size_t num_layers = 5;
    int k_steps = 2;
    double epsilon = 0.5;
    std::size_t hidden_dim = 64;
    std::size_t projection_dim = 32;
};

// Uniform He-style fan-in initialization; biases start at zero.
EncoderParams init_encoder(const EncoderArchitecture& arch, RngStream& rng);

// Stable traversal order shared by the optimizer, the momentum update, and
// checkpoint serialization.
void for_each_parameter(EncoderParams& params,
                        const std::function<void(const std::string&, Matrix&)>& fn);
void for_each_parameter(const EncoderParams& params,
                        const std::function<void(const std::string&, const Matrix&)>& fn);

enum class EncoderMode { diffusion, gcn_ablation };

Tensor diffusion_layer(Tape& tape, const Tensor& h, const Tensor& p_fwd, const Tensor& p_bwd,
                       const std::vector<Tensor>& w_fwd, const std::vector<Tensor>& w_bwd,
                       double epsilon);

// Plain graph convolution relu(A_norm H W); the no-diffusion ablation.
Tensor gcn_layer(Tape& tape, const Tensor& h, const Tensor& a_norm, const Tensor& w);

// Column-wise mean over nodes.
Tensor readout(Tape& tape, const Tensor& node_embeddings);

// dense -> relu -> dense; the output is left unnormalized (the contrastive
// loss normalizes).
Tensor project(Tape& tape, const Tensor& h_graph, const Tensor& w1, const Tensor& b1,
               const Tensor& w2, const Tensor& b2);

// Parameters bound onto a tape once per step so gradients accumulate
// across every molecule encoded against them.
class BoundEncoder {
public:
    BoundEncoder(Tape& tape, const EncoderParams& params, bool requires_grad);

    struct Result {
        Tensor h_graph;  // 1 x D, feeds fine-tuning
        Tensor z;        // 1 x D_z, feeds the contrastive loss
    };

    Result encode(const MolGraph& graph, EncoderMode mode = EncoderMode::diffusion) const;

    // Gradients in for_each_parameter order.
    std::vector<Matrix> parameter_gradients(const Gradients& grads) const;
    const std::vector<Tensor>& parameter_tensors() const { return flat_; }

private:
    Tape* tape_;
    std::vector<std::vector<Tensor>> w_fwd_, w_bwd_;
    std::vector<double> epsilon_;
    Tensor p_w1_, p_b1_, p_w2_, p_b2_;
    std::vector<Tensor> flat_;
};

// One-shot convenience for inference paths.
BoundEncoder::Result encode(Tape& tape, const MolGraph& graph, const EncoderParams& params,
                            EncoderMode mode = EncoderMode::diffusion);

}  // namespace digmol

#endif
