#include "sortlab/matrix.hpp"

#include "sortlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace sortlab {

namespace {

void require_square(const Matrix& a, const char* what) {
    if (!a.is_square()) {
        throw StatsError(StatsError::Kind::ShapeMismatch,
                         std::string(what) + " needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
    }
}

double max_abs_entry(const Matrix& a) {
    double m = 0.0;
    for (const double v : a.data()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw StatsError(StatsError::Kind::ShapeMismatch, "ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix Matrix::left_columns(std::size_t n) const {
    n = std::min(n, cols_);
    Matrix out(rows_, n);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = (*this)(r, c);
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw StatsError(StatsError::Kind::ShapeMismatch,
                         "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by " +
                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw StatsError(StatsError::Kind::ShapeMismatch, "max_abs_diff on different shapes");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

double determinant(const Matrix& a) {
    require_square(a, "determinant");
    Matrix lu = a;
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) {
                pivot = r;
            }
        }
        if (lu(pivot, col) == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(lu(pivot, c), lu(col, c));
            }
            det = -det;
        }
        det *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = lu(r, col) / lu(col, col);
            for (std::size_t c = col; c < n; ++c) {
                lu(r, c) -= f * lu(col, c);
            }
        }
    }
    return det;
}

Matrix inverse(const Matrix& a) {
    require_square(a, "inverse");
    const std::size_t n = a.rows();
    Matrix work = a;
    Matrix inv = Matrix::identity(n);
    const double tol = 1e-15 * max_abs_entry(a);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) {
                pivot = r;
            }
        }
        const double p = work(pivot, col);
        if (!std::isfinite(p) || std::abs(p) <= tol) {
            throw StatsError(StatsError::Kind::SingularMatrix, "matrix is singular to working precision");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(work(pivot, c), work(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        for (std::size_t c = 0; c < n; ++c) {
            work(col, c) /= p;
            inv(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const double f = work(r, col);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                work(r, c) -= f * work(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

}  // namespace sortlab
