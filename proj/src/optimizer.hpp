#ifndef DIGMOL_OPTIMIZER_HPP
#define DIGMOL_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "matrix.hpp"

namespace digmol {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamMoments {
    Matrix first;   // m
    Matrix second;  // v
};

// Bias-corrected update of one parameter tensor: t is the 1-based step.
void adam_step(Matrix& param, const Matrix& grad, AdamMoments& moments, double lr,
               std::int64_t t, const AdamConfig& config = {});

// Tracks moments for a fixed list of parameter tensors.
class AdamOptimizer {
public:
    AdamOptimizer() = default;
    explicit AdamOptimizer(const AdamConfig& config) : config_(config) {}

    void step(const std::vector<Matrix*>& params, const std::vector<Matrix>& grads, double lr);

    std::int64_t step_count() const { return step_count_; }
    std::vector<AdamMoments>& moments() { return moments_; }
    const std::vector<AdamMoments>& moments() const { return moments_; }
    void restore(std::vector<AdamMoments> moments, std::int64_t step_count);

private:
    AdamConfig config_;
    std::vector<AdamMoments> moments_;
    std::int64_t step_count_ = 0;
};

// lr0 * (1 + cos(pi * epoch / total)) / 2
double cosine_lr(double lr0, std::int64_t epoch, std::int64_t total_epochs);

}  // namespace digmol

#endif
