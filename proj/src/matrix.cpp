#include "snelfs/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace snelfs {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows) + "x" +
                         std::to_string(a.cols) + " vs " + std::to_string(b.rows) + "x" +
                         std::to_string(b.cols) + ")");
    }
}

} // namespace

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> values)
    : rows(r), cols(c), data(std::move(values)) {
    if (data.size() != rows * cols) {
        throw ShapeError("Matrix: data length " + std::to_string(data.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) {
        throw ShapeError("matmul: inner dimensions differ (" + std::to_string(a.cols) + " vs " +
                         std::to_string(b.rows) + ")");
    }
    Matrix c(a.rows, b.cols);
    // i-k-j order keeps the b and c rows contiguous.
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < b.cols; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix matmul_at(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) {
        throw ShapeError("matmul_at: row counts differ (" + std::to_string(a.rows) + " vs " +
                         std::to_string(b.rows) + ")");
    }
    Matrix c(a.cols, b.cols);
    for (std::size_t k = 0; k < a.rows; ++k) {
        const double* ak = a.row(k);
        const double* bk = b.row(k);
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* ci = c.row(i);
            for (std::size_t j = 0; j < b.cols; ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
    if (a.cols != b.cols) {
        throw ShapeError("matmul_bt: column counts differ (" + std::to_string(a.cols) + " vs " +
                         std::to_string(b.cols) + ")");
    }
    Matrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* ai = a.row(i);
        double* ci = c.row(i);
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* bj = b.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) s += ai[k] * bj[k];
            ci[j] = s;
        }
    }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

Matrix add(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "add");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
    return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "sub");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
    return c;
}

Matrix scale(const Matrix& a, double s) {
    Matrix c = a;
    for (double& x : c.data) x *= s;
    return c;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "hadamard");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] *= b.data[i];
    return c;
}

Vector column_sum_abs(const Matrix& a) {
    Vector s(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* ai = a.row(i);
        for (std::size_t j = 0; j < a.cols; ++j) s[j] += std::abs(ai[j]);
    }
    return s;
}

Vector column_sum(const Matrix& a) {
    Vector s(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* ai = a.row(i);
        for (std::size_t j = 0; j < a.cols; ++j) s[j] += ai[j];
    }
    return s;
}

Matrix take_rows(const Matrix& a, const std::vector<std::size_t>& indices) {
    Matrix out(indices.size(), a.cols);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        if (indices[r] >= a.rows) throw ParamError("take_rows: index out of range");
        const double* src = a.row(indices[r]);
        std::copy(src, src + a.cols, out.row(r));
    }
    return out;
}

Matrix take_columns(const Matrix& a, const std::vector<std::size_t>& indices) {
    Matrix out(a.rows, indices.size());
    for (std::size_t c = 0; c < indices.size(); ++c) {
        if (indices[c] >= a.cols) throw ParamError("take_columns: index out of range");
    }
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* src = a.row(i);
        double* dst = out.row(i);
        for (std::size_t c = 0; c < indices.size(); ++c) dst[c] = src[indices[c]];
    }
    return out;
}

bool is_finite(const Matrix& a) { return is_finite(a.data); }

bool is_finite(const Vector& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

void require_finite(const Matrix& a, const std::string& what) {
    if (!is_finite(a)) throw NumericError(what + ": non-finite entries");
}

void require_finite(const Vector& v, const std::string& what) {
    if (!is_finite(v)) throw NumericError(what + ": non-finite entries");
}

} // namespace snelfs
