#include "optimizer.hpp"

#include <cmath>

#include "error.hpp"

namespace digmol {

void adam_step(Matrix& param, const Matrix& grad, AdamMoments& moments, double lr,
               std::int64_t t, const AdamConfig& config) {
    if (!param.same_shape(grad)) {
        throw Error(ErrorCode::shape_mismatch, "gradient shape differs from parameter");
    }
    if (moments.first.empty()) {
        moments.first = Matrix(param.rows(), param.cols());
        moments.second = Matrix(param.rows(), param.cols());
    }
    double correct1 = 1.0 - std::pow(config.beta1, static_cast<double>(t));
    double correct2 = 1.0 - std::pow(config.beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < param.size(); ++i) {
        double g = grad.data()[i];
        double m = config.beta1 * moments.first.data()[i] + (1.0 - config.beta1) * g;
        double v = config.beta2 * moments.second.data()[i] + (1.0 - config.beta2) * g * g;
        moments.first.data()[i] = m;
        moments.second.data()[i] = v;
        double m_hat = m / correct1;
        double v_hat = v / correct2;
        param.data()[i] -= lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
}

void AdamOptimizer::step(const std::vector<Matrix*>& params, const std::vector<Matrix>& grads,
                         double lr) {
    if (params.size() != grads.size()) {
        throw Error(ErrorCode::shape_mismatch, "parameter/gradient count mismatch");
    }
    if (moments_.empty()) moments_.resize(params.size());
    if (moments_.size() != params.size()) {
        throw Error(ErrorCode::shape_mismatch, "optimizer bound to a different parameter set");
    }
    ++step_count_;
    for (std::size_t i = 0; i < params.size(); ++i) {
        adam_step(*params[i], grads[i], moments_[i], lr, step_count_, config_);
    }
}

void AdamOptimizer::restore(std::vector<AdamMoments> moments, std::int64_t step_count) {
    moments_ = std::move(moments);
    step_count_ = step_count;
}

double cosine_lr(double lr0, std::int64_t epoch, std::int64_t total_epochs) {
    if (total_epochs <= 0 || epoch < 0 || epoch > total_epochs) {
        throw Error(ErrorCode::invalid_config, "epoch outside [0, total_epochs]");
    }
    double phase = M_PI * static_cast<double>(epoch) / static_cast<double>(total_epochs);
    return lr0 * 0.5 * (1.0 + std::cos(phase));
}

}  // namespace digmol
