#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ontoea {

/// Row-major dense matrix of doubles. Embedding tables are (rows x dim),
/// transforms are small square or rectangular blocks.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    void fill(double v) { data_.assign(data_.size(), v); }

    /// Identity on the top-left square block, zero elsewhere.
    void set_identity_block() {
        fill(0.0);
        std::size_t n = rows_ < cols_ ? rows_ : cols_;
        for (std::size_t i = 0; i < n; ++i) at(i, i) = 1.0;
    }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// -- span vector helpers ----------------------------------------------------

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Cosine similarity; 0 when either vector has (near-)zero norm.
inline double cosine(std::span<const double> a, std::span<const double> b) {
    double na = norm2(a);
    double nb = norm2(b);
    if (na < 1e-12 || nb < 1e-12) return 0.0;
    return dot(a, b) / (na * nb);
}

/// y += s * x
inline void axpy(double s, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

inline void scale_inplace(std::span<double> x, double s) {
    for (double& v : x) v *= s;
}

/// Scales to unit L2 norm; leaves (near-)zero vectors untouched.
inline void normalize_inplace(std::span<double> x) {
    double n = norm2(x);
    if (n > 1e-12) scale_inplace(x, 1.0 / n);
}

/// out = W x  (out_i = sum_j W(i,j) x_j)
inline void matvec(const Matrix& w, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < w.rows(); ++i) {
        out[i] = dot(w.row(i), x);
    }
}

/// out = W^T x  (out_j = sum_i W(i,j) x_i)
inline void matvec_t(const Matrix& w, std::span<const double> x, std::span<double> out) {
    for (std::size_t j = 0; j < w.cols(); ++j) out[j] = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        axpy(x[i], w.row(i), out);
    }
}

} // namespace ontoea
