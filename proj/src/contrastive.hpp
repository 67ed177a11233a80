#ifndef DIGMOL_CONTRASTIVE_HPP
#define DIGMOL_CONTRASTIVE_HPP

#include <vector>

#include "autodiff.hpp"

namespace digmol {

// The four projected batches derived from one mini-batch of molecules:
// online/target network x first/second augmented view, rows aligned by
// molecule. Target-side tensors are expected to be recorded without
// gradients.
struct ContrastiveBatch {
    Tensor z_theta_1;
    Tensor z_theta_2;
    Tensor z_xi_1;
    Tensor z_xi_2;
};

struct LossWeights {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double tau = 0.1;
};

double cosine_sim(const std::vector<double>& a, const std::vector<double>& b);

// Normalized temperature-scaled cross entropy over the stacked [Z_a; Z_b]
// batch: every row is an anchor, its positive sits B rows away, and the
// other 2B-1 rows form the candidate pool. Requires B >= 2 so negatives
// exist.
Tensor nt_xent(Tape& tape, const Tensor& z_a, const Tensor& z_b, double tau);

struct JointLoss {
    Tensor joint;
    Tensor graph_interaction;    // same network, different views
    Tensor encoder_interaction;  // same view, different networks
    Tensor multi_interaction;    // different view and network
};

// joint = alpha * L_GI + beta * L_EI + gamma * L_MI, each component the
// average of its two sub-pair losses. Components with a zero coefficient
// are still evaluated (they are reported in the metrics log) but excluded
// from the joint sum.
JointLoss joint_loss(Tape& tape, const ContrastiveBatch& batch, const LossWeights& weights);

}  // namespace digmol

#endif
