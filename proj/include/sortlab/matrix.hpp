#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sortlab {

/// Small dense row-major matrix of doubles. Sized for the handful of
/// variables the factor analysis works with, not for large linear algebra.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    /// Row-wise literal; all rows must have the same length.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    /// First `n` columns.
    Matrix left_columns(std::size_t n) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Throws StatsError(ShapeMismatch) when inner dimensions differ.
Matrix operator*(const Matrix& a, const Matrix& b);

/// Largest absolute entrywise difference; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// LU with partial pivoting.
double determinant(const Matrix& a);

/// Gauss-Jordan with partial pivoting. Throws StatsError(SingularMatrix) when
/// a pivot vanishes relative to the matrix scale.
Matrix inverse(const Matrix& a);

}  // namespace sortlab
