#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "snelfs/error.hpp"

namespace snelfs {

using Vector = std::vector<double>;

/// Dense real matrix, row-major storage.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // rows * cols entries, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}
    Matrix(std::size_t r, std::size_t c, std::vector<double> values);

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    bool same_shape(const Matrix& other) const {
        return rows == other.rows && cols == other.cols;
    }

    static Matrix identity(std::size_t n);
};

Matrix matmul(const Matrix& a, const Matrix& b);
/// a^T * b without materializing the transpose.
Matrix matmul_at(const Matrix& a, const Matrix& b);
/// a * b^T without materializing the transpose.
Matrix matmul_bt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
Matrix hadamard(const Matrix& a, const Matrix& b);

/// Per-column sum of absolute values.
Vector column_sum_abs(const Matrix& a);
/// Per-column plain sum.
Vector column_sum(const Matrix& a);

/// Rows of `a` at the given indices, in the given order.
Matrix take_rows(const Matrix& a, const std::vector<std::size_t>& indices);
/// Columns of `a` at the given indices, in the given order.
Matrix take_columns(const Matrix& a, const std::vector<std::size_t>& indices);

bool is_finite(const Matrix& a);
bool is_finite(const Vector& v);
void require_finite(const Matrix& a, const std::string& what);
void require_finite(const Vector& v, const std::string& what);

} // namespace snelfs
