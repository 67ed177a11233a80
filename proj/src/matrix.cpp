#include "matrix.hpp"

#include <cmath>
#include <utility>

#include "error.hpp"

namespace digmol {

Matrix Matrix::from_rows(std::size_t rows, std::size_t cols, std::vector<double> values) {
    if (values.size() != rows * cols) {
        throw Error(ErrorCode::shape_mismatch, "value count does not match rows*cols");
    }
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(values);
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::shape_mismatch, "matmul inner dimensions differ");
    }
    Matrix c(a.rows(), b.cols());
    // i-k-j order keeps the inner loop contiguous in b and c.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                ci[j] += aik * bk[j];
            }
        }
    }
    return c;
}

Matrix transposed(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::shape_mismatch, "elementwise product on different shapes");
    }
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] * b.data()[i];
    return c;
}

Matrix scaled(const Matrix& m, double s) {
    Matrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) c.data()[i] = m.data()[i] * s;
    return c;
}

void add_in_place(Matrix& dst, const Matrix& src) {
    if (!dst.same_shape(src)) {
        throw Error(ErrorCode::shape_mismatch, "accumulation on different shapes");
    }
    for (std::size_t i = 0; i < dst.size(); ++i) dst.data()[i] += src.data()[i];
}

bool all_finite(const Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!std::isfinite(m.data()[i])) return false;
    }
    return true;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::shape_mismatch, "max_abs_diff on different shapes");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::fabs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

}  // namespace digmol
