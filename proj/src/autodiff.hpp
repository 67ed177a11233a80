#ifndef DIGMOL_AUTODIFF_HPP
#define DIGMOL_AUTODIFF_HPP

#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "matrix.hpp"

namespace digmol {

class Tape;

// Handle to a value recorded on a tape. Cheap to copy; the matrix payload
// is shared and immutable once recorded.
class Tensor {
public:
    Tensor() = default;

    bool defined() const { return value_ != nullptr; }
    const Matrix& value() const { return *value_; }
    std::size_t rows() const { return value_->rows(); }
    std::size_t cols() const { return value_->cols(); }
    bool requires_grad() const { return requires_grad_; }
    int node_id() const { return node_id_; }

private:
    friend class Tape;
    Tensor(std::shared_ptr<const Matrix> value, Tape* tape, int node_id, bool requires_grad)
        : value_(std::move(value)), tape_(tape), node_id_(node_id), requires_grad_(requires_grad) {}

    std::shared_ptr<const Matrix> value_;
    Tape* tape_ = nullptr;
    int node_id_ = -1;
    bool requires_grad_ = false;
};

// Result of a backward pass. Tensors that did not participate in the loss
// report zero gradients of their own shape.
class Gradients {
public:
    const Matrix& grad(const Tensor& t) const;
    bool nonzero(const Tensor& t) const;

private:
    friend class Tape;
    std::vector<Matrix> by_node_;
    mutable std::deque<Matrix> zero_cache_;  // deque: stable references
    std::vector<std::pair<std::size_t, std::size_t>> shapes_;
};

// Single-threaded record of operations for one forward/backward cycle.
class Tape {
public:
    Tape();

    // NaN/Inf screening of every recorded value. Defaults on in debug
    // builds, off otherwise.
    void set_check_finite(bool enabled) { check_finite_ = enabled; }

    Tensor input(Matrix value, bool requires_grad = false);
    Tensor constant(Matrix value) { return input(std::move(value), false); }

    Tensor matmul(const Tensor& a, const Tensor& b);
    // Same shapes, or b of shape 1xC broadcast over the rows of a.
    Tensor add(const Tensor& a, const Tensor& b);
    Tensor sub(const Tensor& a, const Tensor& b);
    Tensor mul_elementwise(const Tensor& a, const Tensor& b);
    Tensor scale(const Tensor& a, double factor);
    Tensor relu(const Tensor& a);
    Tensor sigmoid(const Tensor& a);
    Tensor exp(const Tensor& a);
    Tensor log(const Tensor& a);
    // Row-wise x / (|x| + 1e-12); masked graphs can produce zero rows.
    Tensor l2_normalize_rows(const Tensor& a);
    Tensor sum(const Tensor& a);        // 1x1
    Tensor mean_rows(const Tensor& a);  // NxC -> 1xC column means
    Tensor transpose(const Tensor& a);
    Tensor concat_rows(const std::vector<Tensor>& parts);

    Gradients backward(const Tensor& scalar_loss);

    std::size_t num_nodes() const { return nodes_.size(); }

private:
    struct Node {
        std::shared_ptr<const Matrix> value;
        bool requires_grad = false;
        // Receives the upstream gradient and accumulates into parent slots.
        std::function<void(const Matrix& g, Tape& tape, std::vector<Matrix>& grads)> backprop;
    };

    Tensor record(Matrix value, bool requires_grad,
                  std::function<void(const Matrix&, Tape&, std::vector<Matrix>&)> backprop);
    void accumulate(std::vector<Matrix>& grads, int node_id, const Matrix& contribution);
    void require_same_tape(const Tensor& t) const;

    std::vector<Node> nodes_;
    bool check_finite_;
};

extern const double kRowNormalizeEpsilon;

// Central-difference audit of backward(). `build` must deterministically
// assemble a scalar loss from the bound parameter tensors. Returns the max
// over all parameter coordinates of
//   |g_ad - g_fd| / max(1e-8, |g_ad| + |g_fd|).
double finite_difference_check(
    const std::function<Tensor(Tape&, const std::vector<Tensor>&)>& build,
    const std::vector<Matrix>& params, double step);

}  // namespace digmol

#endif
