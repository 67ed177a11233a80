#include "contrastive.hpp"

#include <cmath>

#include "error.hpp"

namespace digmol {

double cosine_sim(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::shape_mismatch, "cosine of different-length vectors");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return dot / ((std::sqrt(na) + kRowNormalizeEpsilon) *
                  (std::sqrt(nb) + kRowNormalizeEpsilon));
}

Tensor nt_xent(Tape& tape, const Tensor& z_a, const Tensor& z_b, double tau) {
    if (tau <= 0.0) {
        throw Error(ErrorCode::invalid_config, "temperature must be positive");
    }
    std::size_t batch = z_a.rows();
    if (batch != z_b.rows() || z_a.cols() != z_b.cols()) {
        throw Error(ErrorCode::shape_mismatch, "contrastive batches must align");
    }
    if (batch < 2) {
        throw Error(ErrorCode::batch_too_small, "NT-Xent needs at least two molecules");
    }
    std::size_t rows = 2 * batch;

    Tensor stacked = tape.l2_normalize_rows(tape.concat_rows({z_a, z_b}));
    Tensor sims = tape.matmul(stacked, tape.transpose(stacked));
    Tensor weights = tape.exp(tape.scale(sims, 1.0 / tau));

    // self-pairs never count as candidates; positives sit B rows away
    Matrix off_diagonal(rows, rows, 1.0);
    Matrix positive(rows, rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        off_diagonal(i, i) = 0.0;
        positive(i, (i + batch) % rows) = 1.0;
    }
    Tensor ones_col = tape.constant(Matrix(rows, 1, 1.0));
    Tensor denom = tape.matmul(tape.mul_elementwise(weights, tape.constant(off_diagonal)),
                               ones_col);
    Tensor numer = tape.matmul(tape.mul_elementwise(weights, tape.constant(positive)),
                               ones_col);
    Tensor per_anchor = tape.sub(tape.log(denom), tape.log(numer));
    return tape.scale(tape.sum(per_anchor), 1.0 / static_cast<double>(rows));
}

JointLoss joint_loss(Tape& tape, const ContrastiveBatch& batch, const LossWeights& weights) {
    auto pair_mean = [&](const Tensor& a1, const Tensor& a2, const Tensor& b1,
                         const Tensor& b2) {
        return tape.scale(tape.add(nt_xent(tape, a1, a2, weights.tau),
                                   nt_xent(tape, b1, b2, weights.tau)),
                          0.5);
    };
    JointLoss loss;
    loss.graph_interaction =
        pair_mean(batch.z_theta_1, batch.z_theta_2, batch.z_xi_1, batch.z_xi_2);
    loss.encoder_interaction =
        pair_mean(batch.z_theta_1, batch.z_xi_1, batch.z_theta_2, batch.z_xi_2);
    loss.multi_interaction =
        pair_mean(batch.z_theta_1, batch.z_xi_2, batch.z_theta_2, batch.z_xi_1);

    Tensor joint;
    auto contribute = [&](const Tensor& component, double coefficient) {
        if (coefficient == 0.0) return;
        Tensor term = tape.scale(component, coefficient);
        joint = joint.defined() ? tape.add(joint, term) : term;
    };
    contribute(loss.graph_interaction, weights.alpha);
    contribute(loss.encoder_interaction, weights.beta);
    contribute(loss.multi_interaction, weights.gamma);
    if (!joint.defined()) {
        throw Error(ErrorCode::invalid_config, "loss weights must not all be zero");
    }
    loss.joint = joint;
    return loss;
}

}  // namespace digmol
