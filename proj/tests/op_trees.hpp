#pragma once

#include "polyfact/linop.hpp"
#include "random.hpp"

namespace polyfact::testing {

class TreeGen {
public:
    explicit TreeGen(std::uint64_t seed) : g_(seed) {}

    // Random operator with exactly the requested shape.
    LinOp make(std::size_t rows, std::size_t cols, int depth) {
        if (rows == cols && pick(4) == 0)
            return square_leaf(rows);
        if (depth <= 0)
            return leaf(rows, cols);
        switch (pick(6)) {
        case 0: { // direct sum: split both dimensions
            if (rows < 2 || cols < 2)
                return leaf(rows, cols);
            const std::size_t r0 = 1 + pick(rows - 1), c0 = 1 + pick(cols - 1);
            return LinOp::direct_sum({make(r0, c0, depth - 1), make(rows - r0, cols - c0, depth - 1)});
        }
        case 1: {
            if (rows < 2 || cols < 2)
                return leaf(rows, cols);
            const std::size_t r0 = 1 + pick(rows - 1), c0 = 1 + pick(cols - 1);
            // block 0 has r0 rows and sits at the right end, block 1 fills the rest
            return LinOp::complementary_direct_sum(
                {make(r0, c0, depth - 1), make(rows - r0, cols - c0, depth - 1)});
        }
        case 2: { // tensor with a factorization of both dims
            auto dr = divisors(rows), dc = divisors(cols);
            const std::size_t a = dr[pick(dr.size())], b = dc[pick(dc.size())];
            return LinOp::tensor(make(a, b, depth - 1), make(rows / a, cols / b, depth - 1));
        }
        case 3: {
            const std::size_t mid = 1 + pick(12);
            return LinOp::compose({make(rows, mid, depth - 1), make(mid, cols, depth - 1)});
        }
        case 4: {
            if (cols < 2)
                return leaf(rows, cols);
            const std::size_t c0 = 1 + pick(cols - 1);
            return LinOp::column_concat({make(rows, c0, depth - 1), make(rows, cols - c0, depth - 1)});
        }
        default:
            return LinOp::transposed(make(cols, rows, depth - 1));
        }
    }

private:
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(g_); }

    LinOp leaf(std::size_t rows, std::size_t cols) {
        if (pick(2) == 0) {
            std::vector<LinOp::SparseRow> data(rows);
            for (auto& r : data) {
                r.count = pick(3);
                for (std::size_t e = 0; e < r.count; ++e)
                    r.entries[e] = {pick(cols), random_complex(g_)};
            }
            return LinOp::two_sparse(rows, cols, std::move(data));
        }
        return LinOp::dense(random_dense(g_, rows, cols));
    }

    LinOp square_leaf(std::size_t n) {
        const auto ks = divisors(n);
        const std::size_t k = ks[pick(ks.size())];
        switch (pick(8)) {
        case 0: return LinOp::identity(n);
        case 1: return LinOp::flip(n);
        case 2: return LinOp::circular_shift(n, pick(2) ? 1 : -1);
        case 3: return LinOp::stride(n, k);
        case 4: return LinOp::perm_k(n, k);
        case 5: return LinOp::twiddle(n, k);
        case 6: return LinOp::diagonal(random_vector(g_, n));
        default: return leaf(n, n);
        }
    }

    std::mt19937_64 g_;
};

} // namespace polyfact::testing
