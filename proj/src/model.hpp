#ifndef DIGMOL_MODEL_HPP
#define DIGMOL_MODEL_HPP

#include "config.hpp"
#include "encoder.hpp"

namespace digmol {

enum class TaskKind { classification, regression };

// Two fully connected layers bolted onto the frozen encoder:
// D -> head_hidden -> task outputs.
struct FinetuneHead {
    Matrix w1, b1;
    Matrix w2, b2;
};

struct FinetunedModel {
    EncoderParams encoder;  // frozen online parameters
    EncoderMode mode = EncoderMode::diffusion;
    FinetuneHead head;
    TaskKind task = TaskKind::classification;
    FinetuneConfig config;
    std::vector<std::string> task_names;

    std::size_t num_tasks() const { return head.w2.cols(); }
};

// relu(H w1 + b1) w2 + b2, sigmoided per task for classification.
Matrix head_forward(const FinetuneHead& head, const Matrix& h_rows, TaskKind task);

}  // namespace digmol

#endif
