#pragma once

// Thin bridge to Eigen for the few decompositions the induction engine needs.

#include "polyfact/dense.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace polyfact {

namespace detail {

inline Eigen::MatrixXcd to_eigen(const DenseMatrix& m) {
    Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return e;
}

inline DenseMatrix from_eigen(const Eigen::MatrixXcd& e) {
    DenseMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return m;
}

} // namespace detail

/// Singular values in decreasing order.
inline std::vector<double> singular_values(const DenseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m));
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

/// Number of singular values above rel_tol * sigma_max.
inline std::size_t numerical_rank(const DenseMatrix& m, double rel_tol = 1e-9) {
    const auto s = singular_values(m);
    if (s.empty() || s.front() == 0.0)
        return 0;
    std::size_t r = 0;
    for (double v : s)
        if (v > rel_tol * s.front())
            ++r;
    return r;
}

/// 2-norm condition number; infinity for singular or empty input.
inline double condition_number(const DenseMatrix& m) {
    const auto s = singular_values(m);
    if (s.empty() || s.back() == 0.0)
        return std::numeric_limits<double>::infinity();
    return s.front() / s.back();
}

/// X with a * X = b, a square; partial-pivot LU.
inline DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw dimension_error("solve: expected square system with matching right-hand side");
    if (a.rows() == 0)
        return DenseMatrix(0, b.cols());
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(detail::to_eigen(a));
    return detail::from_eigen(lu.solve(detail::to_eigen(b)));
}

} // namespace polyfact
