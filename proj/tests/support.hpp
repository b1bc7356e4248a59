#pragma once

#include "random.hpp"

#include <gtest/gtest.h>

namespace polyfact::testing {

inline ::testing::AssertionResult matrices_near(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return ::testing::AssertionFailure() << "shape " << a.rows() << "x" << a.cols() << " vs "
                                             << b.rows() << "x" << b.cols();
    const double d = max_abs_diff(a, b);
    if (d <= tol)
        return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "max abs difference " << d << " exceeds " << tol;
}

} // namespace polyfact::testing
