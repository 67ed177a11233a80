#include "autodiff.hpp"

#include <cmath>
#include <utility>

#include "error.hpp"

namespace digmol {

const double kRowNormalizeEpsilon = 1e-12;

const Matrix& Gradients::grad(const Tensor& t) const {
    if (t.node_id() < 0 || static_cast<std::size_t>(t.node_id()) >= shapes_.size()) {
        throw Error(ErrorCode::shape_mismatch, "tensor does not belong to this backward pass");
    }
    const Matrix& stored = by_node_[static_cast<std::size_t>(t.node_id())];
    if (!stored.empty()) return stored;
    auto [r, c] = shapes_[static_cast<std::size_t>(t.node_id())];
    zero_cache_.emplace_back(r, c, 0.0);
    return zero_cache_.back();
}

bool Gradients::nonzero(const Tensor& t) const {
    const Matrix& g = grad(t);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.data()[i] != 0.0) return true;
    }
    return false;
}

Tape::Tape()
#ifdef NDEBUG
    : check_finite_(false)
#else
    : check_finite_(true)
#endif
{
}

Tensor Tape::record(Matrix value, bool requires_grad,
                    std::function<void(const Matrix&, Tape&, std::vector<Matrix>&)> backprop) {
    if (check_finite_ && !all_finite(value)) {
        throw Error(ErrorCode::non_finite_value, "operation produced NaN or Inf");
    }
    auto shared = std::make_shared<const Matrix>(std::move(value));
    Node node;
    node.value = shared;
    node.requires_grad = requires_grad;
    if (requires_grad) node.backprop = std::move(backprop);
    nodes_.push_back(std::move(node));
    return Tensor(shared, this, static_cast<int>(nodes_.size()) - 1, requires_grad);
}

void Tape::accumulate(std::vector<Matrix>& grads, int node_id, const Matrix& contribution) {
    if (!nodes_[static_cast<std::size_t>(node_id)].requires_grad) return;
    Matrix& slot = grads[static_cast<std::size_t>(node_id)];
    if (slot.empty()) {
        slot = contribution;
    } else {
        add_in_place(slot, contribution);
    }
}

void Tape::require_same_tape(const Tensor& t) const {
    if (!t.defined() || t.tape_ != this) {
        throw Error(ErrorCode::shape_mismatch, "tensor is not recorded on this tape");
    }
}

Tensor Tape::input(Matrix value, bool requires_grad) {
    return record(std::move(value), requires_grad, nullptr);
}

Tensor Tape::matmul(const Tensor& a, const Tensor& b) {
    require_same_tape(a);
    require_same_tape(b);
    Matrix out = digmol::matmul(a.value(), b.value());
    bool grad = a.requires_grad() || b.requires_grad();
    int ia = a.node_id(), ib = b.node_id();
    auto va = a.value_, vb = b.value_;
    return record(std::move(out), grad,
                  [ia, ib, va, vb](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, digmol::matmul(g, transposed(*vb)));
                      tape.accumulate(grads, ib, digmol::matmul(transposed(*va), g));
                  });
}

Tensor Tape::add(const Tensor& a, const Tensor& b) {
    require_same_tape(a);
    require_same_tape(b);
    bool broadcast = b.rows() == 1 && a.rows() > 1 && b.cols() == a.cols();
    if (!broadcast && !a.value().same_shape(b.value())) {
        throw Error(ErrorCode::shape_mismatch, "add expects equal shapes or a 1xC bias row");
    }
    Matrix out = a.value();
    if (broadcast) {
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += b.value()(0, j);
    } else {
        add_in_place(out, b.value());
    }
    bool grad = a.requires_grad() || b.requires_grad();
    int ia = a.node_id(), ib = b.node_id();
    return record(std::move(out), grad,
                  [ia, ib, broadcast](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, g);
                      if (broadcast) {
                          Matrix gb(1, g.cols());
                          for (std::size_t i = 0; i < g.rows(); ++i)
                              for (std::size_t j = 0; j < g.cols(); ++j) gb(0, j) += g(i, j);
                          tape.accumulate(grads, ib, gb);
                      } else {
                          tape.accumulate(grads, ib, g);
                      }
                  });
}

Tensor Tape::sub(const Tensor& a, const Tensor& b) {
    require_same_tape(a);
    require_same_tape(b);
    if (!a.value().same_shape(b.value())) {
        throw Error(ErrorCode::shape_mismatch, "sub expects equal shapes");
    }
    Matrix out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.value().data()[i];
    bool grad = a.requires_grad() || b.requires_grad();
    int ia = a.node_id(), ib = b.node_id();
    return record(std::move(out), grad,
                  [ia, ib](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, g);
                      tape.accumulate(grads, ib, scaled(g, -1.0));
                  });
}

Tensor Tape::mul_elementwise(const Tensor& a, const Tensor& b) {
    require_same_tape(a);
    require_same_tape(b);
    Matrix out = hadamard(a.value(), b.value());
    bool grad = a.requires_grad() || b.requires_grad();
    int ia = a.node_id(), ib = b.node_id();
    auto va = a.value_, vb = b.value_;
    return record(std::move(out), grad,
                  [ia, ib, va, vb](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, hadamard(g, *vb));
                      tape.accumulate(grads, ib, hadamard(g, *va));
                  });
}

Tensor Tape::scale(const Tensor& a, double factor) {
    require_same_tape(a);
    Matrix out = scaled(a.value(), factor);
    int ia = a.node_id();
    return record(std::move(out), a.requires_grad(),
                  [ia, factor](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, scaled(g, factor));
                  });
}

Tensor Tape::relu(const Tensor& a) {
    require_same_tape(a);
    Matrix out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = std::max(0.0, out.data()[i]);
    int ia = a.node_id();
    auto va = a.value_;
    return record(std::move(out), a.requires_grad(),
                  [ia, va](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      Matrix gx(g.rows(), g.cols());
                      // subgradient 0 at the kink
                      for (std::size_t i = 0; i < g.size(); ++i)
                          gx.data()[i] = va->data()[i] > 0.0 ? g.data()[i] : 0.0;
                      tape.accumulate(grads, ia, gx);
                  });
}

Tensor Tape::sigmoid(const Tensor& a) {
    require_same_tape(a);
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double x = a.value().data()[i];
        // branch on sign to avoid exp overflow
        out.data()[i] = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                                 : std::exp(x) / (1.0 + std::exp(x));
    }
    int ia = a.node_id();
    auto shared_out = std::make_shared<Matrix>(out);
    return record(std::move(out), a.requires_grad(),
                  [ia, shared_out](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      Matrix gx(g.rows(), g.cols());
                      for (std::size_t i = 0; i < g.size(); ++i) {
                          double y = shared_out->data()[i];
                          gx.data()[i] = g.data()[i] * y * (1.0 - y);
                      }
                      tape.accumulate(grads, ia, gx);
                  });
}

Tensor Tape::exp(const Tensor& a) {
    require_same_tape(a);
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = std::exp(a.value().data()[i]);
    int ia = a.node_id();
    auto shared_out = std::make_shared<Matrix>(out);
    return record(std::move(out), a.requires_grad(),
                  [ia, shared_out](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, hadamard(g, *shared_out));
                  });
}

Tensor Tape::log(const Tensor& a) {
    require_same_tape(a);
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = std::log(a.value().data()[i]);
    int ia = a.node_id();
    auto va = a.value_;
    return record(std::move(out), a.requires_grad(),
                  [ia, va](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      Matrix gx(g.rows(), g.cols());
                      for (std::size_t i = 0; i < g.size(); ++i)
                          gx.data()[i] = g.data()[i] / va->data()[i];
                      tape.accumulate(grads, ia, gx);
                  });
}

Tensor Tape::l2_normalize_rows(const Tensor& a) {
    require_same_tape(a);
    const Matrix& x = a.value();
    Matrix out(x.rows(), x.cols());
    std::vector<double> norms(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double ss = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) ss += x(i, j) * x(i, j);
        norms[i] = std::sqrt(ss);
        double m = norms[i] + kRowNormalizeEpsilon;
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) / m;
    }
    int ia = a.node_id();
    auto va = a.value_;
    auto shared_norms = std::make_shared<std::vector<double>>(std::move(norms));
    return record(std::move(out), a.requires_grad(),
                  [ia, va, shared_norms](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      Matrix gx(g.rows(), g.cols());
                      for (std::size_t i = 0; i < g.rows(); ++i) {
                          double n = (*shared_norms)[i];
                          double m = n + kRowNormalizeEpsilon;
                          double dot = 0.0;
                          for (std::size_t j = 0; j < g.cols(); ++j) dot += g(i, j) * (*va)(i, j);
                          for (std::size_t j = 0; j < g.cols(); ++j) {
                              double v = g(i, j) / m;
                              // the projection term vanishes in the zero-row limit
                              if (n > 0.0) v -= (*va)(i, j) * dot / (n * m * m);
                              gx(i, j) = v;
                          }
                      }
                      tape.accumulate(grads, ia, gx);
                  });
}

Tensor Tape::sum(const Tensor& a) {
    require_same_tape(a);
    double total = 0.0;
    for (std::size_t i = 0; i < a.value().size(); ++i) total += a.value().data()[i];
    Matrix out(1, 1);
    out(0, 0) = total;
    int ia = a.node_id();
    std::size_t r = a.rows(), c = a.cols();
    return record(std::move(out), a.requires_grad(),
                  [ia, r, c](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, Matrix(r, c, g(0, 0)));
                  });
}

Tensor Tape::mean_rows(const Tensor& a) {
    require_same_tape(a);
    if (a.rows() == 0) {
        throw Error(ErrorCode::empty_graph, "mean over zero rows");
    }
    Matrix out(1, a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(0, j) += a.value()(i, j);
    for (std::size_t j = 0; j < a.cols(); ++j) out(0, j) /= static_cast<double>(a.rows());
    int ia = a.node_id();
    std::size_t r = a.rows();
    return record(std::move(out), a.requires_grad(),
                  [ia, r](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      Matrix gx(r, g.cols());
                      for (std::size_t i = 0; i < r; ++i)
                          for (std::size_t j = 0; j < g.cols(); ++j)
                              gx(i, j) = g(0, j) / static_cast<double>(r);
                      tape.accumulate(grads, ia, gx);
                  });
}

Tensor Tape::transpose(const Tensor& a) {
    require_same_tape(a);
    int ia = a.node_id();
    return record(transposed(a.value()), a.requires_grad(),
                  [ia](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      tape.accumulate(grads, ia, transposed(g));
                  });
}

Tensor Tape::concat_rows(const std::vector<Tensor>& parts) {
    if (parts.empty()) {
        throw Error(ErrorCode::shape_mismatch, "concat_rows of nothing");
    }
    std::size_t cols = parts.front().cols();
    std::size_t rows = 0;
    bool grad = false;
    for (const Tensor& p : parts) {
        require_same_tape(p);
        if (p.cols() != cols) {
            throw Error(ErrorCode::shape_mismatch, "concat_rows with unequal column counts");
        }
        rows += p.rows();
        grad = grad || p.requires_grad();
    }
    Matrix out(rows, cols);
    std::size_t at = 0;
    std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> spans;  // id -> (start, rows)
    for (const Tensor& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) out(at + i, j) = p.value()(i, j);
        spans.push_back({p.node_id(), {at, p.rows()}});
        at += p.rows();
    }
    return record(std::move(out), grad,
                  [spans, cols](const Matrix& g, Tape& tape, std::vector<Matrix>& grads) {
                      for (const auto& [id, span] : spans) {
                          Matrix gp(span.second, cols);
                          for (std::size_t i = 0; i < span.second; ++i)
                              for (std::size_t j = 0; j < cols; ++j)
                                  gp(i, j) = g(span.first + i, j);
                          tape.accumulate(grads, id, gp);
                      }
                  });
}

Gradients Tape::backward(const Tensor& scalar_loss) {
    require_same_tape(scalar_loss);
    if (scalar_loss.rows() != 1 || scalar_loss.cols() != 1) {
        throw Error(ErrorCode::not_scalar, "backward expects a 1x1 loss");
    }
    std::vector<Matrix> grads(nodes_.size());
    grads[static_cast<std::size_t>(scalar_loss.node_id())] = Matrix(1, 1, 1.0);
    for (int id = scalar_loss.node_id(); id >= 0; --id) {
        Node& node = nodes_[static_cast<std::size_t>(id)];
        if (grads[static_cast<std::size_t>(id)].empty() || !node.backprop) continue;
        node.backprop(grads[static_cast<std::size_t>(id)], *this, grads);
    }
    Gradients out;
    out.shapes_.reserve(nodes_.size());
    for (const Node& node : nodes_) out.shapes_.push_back({node.value->rows(), node.value->cols()});
    out.by_node_ = std::move(grads);
    return out;
}

double finite_difference_check(
    const std::function<Tensor(Tape&, const std::vector<Tensor>&)>& build,
    const std::vector<Matrix>& params, double step) {
    // analytic gradients
    Tape tape;
    std::vector<Tensor> bound;
    bound.reserve(params.size());
    for (const Matrix& p : params) bound.push_back(tape.input(p, true));
    Tensor loss = build(tape, bound);
    Gradients grads = tape.backward(loss);

    auto eval = [&](const std::vector<Matrix>& at) {
        Tape t;
        t.set_check_finite(false);
        std::vector<Tensor> b;
        b.reserve(at.size());
        for (const Matrix& p : at) b.push_back(t.input(p, false));
        return build(t, b).value()(0, 0);
    };

    double worst = 0.0;
    std::vector<Matrix> work = params;
    for (std::size_t p = 0; p < params.size(); ++p) {
        const Matrix& analytic = grads.grad(bound[p]);
        for (std::size_t i = 0; i < params[p].size(); ++i) {
            double original = work[p].data()[i];
            work[p].data()[i] = original + step;
            double up = eval(work);
            work[p].data()[i] = original - step;
            double down = eval(work);
            work[p].data()[i] = original;
            double fd = (up - down) / (2.0 * step);
            double ad = analytic.data()[i];
            double rel = std::fabs(ad - fd) / std::max(1e-8, std::fabs(ad) + std::fabs(fd));
            worst = std::max(worst, rel);
        }
    }
    return worst;
}

}  // namespace digmol
