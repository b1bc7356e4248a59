#pragma once

#include "polyfact/error.hpp"
#include "polyfact/trig.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace polyfact {

/// Row-major dense complex matrix. Zero-sized matrices are legal and act as
/// neutral summands in direct sums.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw dimension_error("DenseMatrix: entry count does not match shape");
    }
    /// Row-wise literal, handy in tests: {{1, 0}, {0, 1}}.
    DenseMatrix(std::initializer_list<std::initializer_list<complex>> rows) : rows_(rows.size()) {
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw dimension_error("DenseMatrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const complex> entries() const noexcept { return data_; }
    std::span<complex> entries() noexcept { return data_; }
    std::span<const complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

/// Plain O(rows*cols) matrix-vector product; the reference every fast path
/// is checked against.
inline std::vector<complex> apply_dense(const DenseMatrix& m, std::span<const complex> x) {
    if (x.size() != m.cols())
        throw dimension_error("apply_dense: vector length " + std::to_string(x.size()) +
                              " does not match " + std::to_string(m.cols()) + " columns");
    std::vector<complex> y(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        complex acc{};
        for (std::size_t c = 0; c < m.cols(); ++c)
            acc += m(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw dimension_error("matrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex aik = a(i, k);
            if (aik == complex{})
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("matrix difference: shapes differ");
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        c.entries()[i] = a.entries()[i] - b.entries()[i];
    return c;
}

inline DenseMatrix scaled(const DenseMatrix& a, complex s) {
    DenseMatrix c = a;
    for (auto& v : c.entries())
        v *= s;
    return c;
}

inline DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = a(i, j);
    return t;
}

inline DenseMatrix adjoint(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = std::conj(a(i, j));
    return t;
}

inline DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return k;
}

/// Block-diagonal stacking.
inline DenseMatrix direct_sum(std::span<const DenseMatrix> blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    DenseMatrix s(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                s(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return s;
}

inline DenseMatrix direct_sum(std::initializer_list<DenseMatrix> blocks) {
    return direct_sum(std::span<const DenseMatrix>(blocks.begin(), blocks.size()));
}

inline DenseMatrix diagonal_matrix(std::span<const complex> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

inline double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.entries())
        s += std::norm(v);
    return std::sqrt(s);
}

/// ||a - ref||_F / ||ref||_F (absolute when ref is zero).
inline double relative_error(const DenseMatrix& a, const DenseMatrix& ref) {
    const double num = frobenius_norm(a - ref);
    const double den = frobenius_norm(ref);
    return den > 0.0 ? num / den : num;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("max_abs_diff: shapes differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

} // namespace polyfact
