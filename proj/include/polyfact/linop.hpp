#pragma once

// Structured linear operators: permutations, diagonals, sparse and dense
// blocks, and the combinators (direct sum, Kronecker product, composition,
// block row) used to write fast transform algorithms as matrix products.
//
// A LinOp is an immutable tree. Every node knows its shape, can be applied
// matrix-free (also transposed), densified independently of the apply path,
// and charged under a simple arithmetic cost model.

#include "polyfact/dense.hpp"
#include "polyfact/error.hpp"
#include "polyfact/trig.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace polyfact {

struct LinOpNode;

class LinOp {
public:
    LinOp() = default;

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::string& label() const noexcept { return label_; }
    const LinOpNode& node() const { return *node_; }
    bool empty() const noexcept { return node_ == nullptr; }

    /// Same operator, new provenance label.
    LinOp labeled(std::string label) const {
        LinOp copy = *this;
        copy.label_ = std::move(label);
        return copy;
    }

    // Factories. All validate shapes and throw dimension_error /
    // invalid_argument on malformed input.
    static LinOp dense(DenseMatrix m, std::string label = {});
    static LinOp diagonal(std::vector<complex> d, std::string label = {});
    static LinOp identity(std::size_t n);
    /// J_n: ones on the anti-diagonal.
    static LinOp flip(std::size_t n);
    /// Z_n (power +1) moves entry i to i+1 cyclically; power -1 is its inverse.
    static LinOp circular_shift(std::size_t n, int power);
    /// L^n_k: entry ik+j moves to jm+i (m = n/k), i.e. y reads x at stride k.
    static LinOp stride(std::size_t n, std::size_t k);
    /// K^n_k = (I_m (+) J_m (+) I_m (+) ...) L^n_k with k alternating blocks of size m = n/k.
    static LinOp perm_k(std::size_t n, std::size_t k);
    /// T^n_k = diag(omega_n^{ij}), position jk+i, 0 <= i < k, 0 <= j < n/k.
    static LinOp twiddle(std::size_t n, std::size_t k);

    struct SparseEntry {
        std::size_t col = 0;
        complex value{};
    };
    struct SparseRow {
        std::size_t count = 0;
        std::array<SparseEntry, 2> entries{};
    };
    /// At most two (column, value) pairs per row.
    static LinOp two_sparse(std::size_t rows, std::size_t cols, std::vector<SparseRow> data,
                            std::string label = {});

    static LinOp direct_sum(std::vector<LinOp> blocks, std::string label = {});
    /// Block anti-diagonal: A_0 in the top-right corner, A_{last} bottom-left.
    static LinOp complementary_direct_sum(std::vector<LinOp> blocks, std::string label = {});
    static LinOp tensor(LinOp a, LinOp b, std::string label = {});
    /// Product children[0] * children[1] * ... (applied right to left).
    static LinOp compose(std::vector<LinOp> children, std::string label = {});
    /// Block row (A_0 | A_1 | ...); children share the row count.
    static LinOp column_concat(std::vector<LinOp> blocks, std::string label = {});
    /// Lazy transpose node; see op_transpose for the structural version.
    static LinOp transposed(LinOp child, std::string label = {});

private:
    LinOp(std::shared_ptr<const LinOpNode> node, std::size_t rows, std::size_t cols, std::string label)
        : node_(std::move(node)), rows_(rows), cols_(cols), label_(std::move(label)) {}

    std::shared_ptr<const LinOpNode> node_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::string label_;
};

namespace node {
struct Dense {
    DenseMatrix m;
};
struct Diagonal {
    std::vector<complex> d;
};
struct Identity {
    std::size_t n;
};
struct FlipJ {
    std::size_t n;
};
struct CircShiftZ {
    std::size_t n;
    int power;
};
struct StrideL {
    std::size_t n, k;
};
struct PermK {
    std::size_t n, k;
};
struct TwiddleT {
    std::size_t n, k;
};
struct TwoSparse {
    std::vector<LinOp::SparseRow> rows;
};
struct DirectSum {
    std::vector<LinOp> blocks;
};
struct ComplementaryDirectSum {
    std::vector<LinOp> blocks;
};
struct Tensor {
    LinOp a, b;
};
struct Compose {
    std::vector<LinOp> children;
};
struct ColumnConcat {
    std::vector<LinOp> blocks;
};
struct Transpose {
    LinOp child;
};
} // namespace node

struct LinOpNode {
    std::variant<node::Dense, node::Diagonal, node::Identity, node::FlipJ, node::CircShiftZ,
                 node::StrideL, node::PermK, node::TwiddleT, node::TwoSparse, node::DirectSum,
                 node::ComplementaryDirectSum, node::Tensor, node::Compose, node::ColumnConcat,
                 node::Transpose>
        v;
};

/// Arithmetic cost of one application. Multiplications by 0 and +-1 are free.
struct CostReport {
    std::uint64_t complex_mults = 0;
    std::uint64_t complex_adds = 0;

    std::uint64_t total_real_flops() const noexcept { return 6 * complex_mults + 2 * complex_adds; }

    CostReport& operator+=(const CostReport& o) noexcept {
        complex_mults += o.complex_mults;
        complex_adds += o.complex_adds;
        return *this;
    }
    friend CostReport operator+(CostReport a, const CostReport& b) noexcept { return a += b; }
    friend CostReport operator*(std::uint64_t s, CostReport a) noexcept {
        a.complex_mults *= s;
        a.complex_adds *= s;
        return a;
    }
    bool operator==(const CostReport&) const = default;
};

// ---------------------------------------------------------------------------
// Factories

namespace detail {
template <class T>
std::shared_ptr<const LinOpNode> make_node(T&& v) {
    return std::make_shared<const LinOpNode>(LinOpNode{std::forward<T>(v)});
}

inline void check_stride(std::size_t n, std::size_t k, const char* what) {
    if (k == 0 || n % k != 0)
        throw invalid_argument(std::string(what) + ": k = " + std::to_string(k) +
                               " does not divide n = " + std::to_string(n));
}

inline bool is_free_multiplier(complex v) noexcept {
    return v == complex{} || v == complex{1.0} || v == complex{-1.0};
}
} // namespace detail

inline LinOp LinOp::dense(DenseMatrix m, std::string label) {
    const auto r = m.rows(), c = m.cols();
    return {detail::make_node(node::Dense{std::move(m)}), r, c, std::move(label)};
}

inline LinOp LinOp::diagonal(std::vector<complex> d, std::string label) {
    const auto n = d.size();
    return {detail::make_node(node::Diagonal{std::move(d)}), n, n, std::move(label)};
}

inline LinOp LinOp::identity(std::size_t n) {
    return {detail::make_node(node::Identity{n}), n, n, "I_" + std::to_string(n)};
}

inline LinOp LinOp::flip(std::size_t n) {
    return {detail::make_node(node::FlipJ{n}), n, n, "J_" + std::to_string(n)};
}

inline LinOp LinOp::circular_shift(std::size_t n, int power) {
    if (power != 1 && power != -1)
        throw invalid_argument("circular_shift: power must be +1 or -1");
    return {detail::make_node(node::CircShiftZ{n, power}), n, n,
            power == 1 ? "Z_" + std::to_string(n) : "Z^-1_" + std::to_string(n)};
}

inline LinOp LinOp::stride(std::size_t n, std::size_t k) {
    detail::check_stride(n, k, "stride");
    return {detail::make_node(node::StrideL{n, k}), n, n,
            "L^" + std::to_string(n) + "_" + std::to_string(k)};
}

inline LinOp LinOp::perm_k(std::size_t n, std::size_t k) {
    detail::check_stride(n, k, "perm_k");
    return {detail::make_node(node::PermK{n, k}), n, n,
            "K^" + std::to_string(n) + "_" + std::to_string(k)};
}

inline LinOp LinOp::twiddle(std::size_t n, std::size_t k) {
    detail::check_stride(n, k, "twiddle");
    return {detail::make_node(node::TwiddleT{n, k}), n, n,
            "T^" + std::to_string(n) + "_" + std::to_string(k)};
}

inline LinOp LinOp::two_sparse(std::size_t rows, std::size_t cols, std::vector<SparseRow> data,
                               std::string label) {
    if (data.size() != rows)
        throw dimension_error("two_sparse: row data count does not match rows");
    for (const auto& r : data) {
        if (r.count > 2)
            throw invalid_argument("two_sparse: more than two entries in a row");
        for (std::size_t e = 0; e < r.count; ++e)
            if (r.entries[e].col >= cols)
                throw dimension_error("two_sparse: column index out of range");
    }
    return {detail::make_node(node::TwoSparse{std::move(data)}), rows, cols, std::move(label)};
}

inline LinOp LinOp::direct_sum(std::vector<LinOp> blocks, std::string label) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    return {detail::make_node(node::DirectSum{std::move(blocks)}), r, c, std::move(label)};
}

inline LinOp LinOp::complementary_direct_sum(std::vector<LinOp> blocks, std::string label) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    return {detail::make_node(node::ComplementaryDirectSum{std::move(blocks)}), r, c, std::move(label)};
}

inline LinOp LinOp::tensor(LinOp a, LinOp b, std::string label) {
    const auto r = a.rows() * b.rows(), c = a.cols() * b.cols();
    return {detail::make_node(node::Tensor{std::move(a), std::move(b)}), r, c, std::move(label)};
}

inline LinOp LinOp::compose(std::vector<LinOp> children, std::string label) {
    if (children.empty())
        throw invalid_argument("compose: no factors");
    for (std::size_t i = 0; i + 1 < children.size(); ++i)
        if (children[i].cols() != children[i + 1].rows())
            throw dimension_error("compose: factor " + std::to_string(i) + " has " +
                                  std::to_string(children[i].cols()) + " columns but factor " +
                                  std::to_string(i + 1) + " has " +
                                  std::to_string(children[i + 1].rows()) + " rows");
    const auto r = children.front().rows(), c = children.back().cols();
    return {detail::make_node(node::Compose{std::move(children)}), r, c, std::move(label)};
}

inline LinOp LinOp::column_concat(std::vector<LinOp> blocks, std::string label) {
    if (blocks.empty())
        throw invalid_argument("column_concat: no blocks");
    std::size_t c = 0;
    for (const auto& b : blocks) {
        if (b.rows() != blocks.front().rows())
            throw dimension_error("column_concat: blocks differ in row count");
        c += b.cols();
    }
    const auto r = blocks.front().rows();
    return {detail::make_node(node::ColumnConcat{std::move(blocks)}), r, c, std::move(label)};
}

inline LinOp LinOp::transposed(LinOp child, std::string label) {
    const auto r = child.cols(), c = child.rows();
    return {detail::make_node(node::Transpose{std::move(child)}), r, c, std::move(label)};
}

// ---------------------------------------------------------------------------
// Matrix-free application

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline complex twiddle_entry(std::size_t n, std::size_t k, std::size_t pos) {
    const std::size_t i = pos % k, j = pos / k;
    return unit_root(static_cast<std::int64_t>(n), static_cast<std::int64_t>((i * j) % n));
}

/// Index permutation of K^n_k: y[perm[p]] = x[p].
inline std::size_t perm_k_target(std::size_t n, std::size_t k, std::size_t p) {
    const std::size_t m = n / k;
    const std::size_t i = p / k, j = p % k; // L: ik+j -> jm+i
    const std::size_t q = j * m + i;
    const std::size_t block = q / m, off = q % m;
    return block % 2 == 0 ? q : block * m + (m - 1 - off);
}

std::vector<complex> apply_impl(const LinOp& op, std::span<const complex> x, bool transposed);

inline std::vector<complex> apply_tensor(const LinOp& a, const LinOp& b, std::span<const complex> x,
                                         bool transposed) {
    // Effective shapes of A' = A or A^T, B' = B or B^T.
    const std::size_t ap = transposed ? a.cols() : a.rows();
    const std::size_t aq = transposed ? a.rows() : a.cols();
    const std::size_t br = transposed ? b.cols() : b.rows();
    const std::size_t bs = transposed ? b.rows() : b.cols();
    const bool a_id = std::holds_alternative<node::Identity>(a.node().v);
    const bool b_id = std::holds_alternative<node::Identity>(b.node().v);

    // x is aq x bs row-major; stage 1 applies B' to each row.
    std::vector<complex> t;
    if (b_id) {
        t.assign(x.begin(), x.end());
    } else {
        t.resize(aq * br);
        for (std::size_t i = 0; i < aq; ++i) {
            auto row = apply_impl(b, x.subspan(i * bs, bs), transposed);
            std::copy(row.begin(), row.end(), t.begin() + static_cast<std::ptrdiff_t>(i * br));
        }
    }
    if (a_id)
        return t;
    // Stage 2 applies A' to each column of the aq x br intermediate.
    std::vector<complex> y(ap * br), col(aq);
    for (std::size_t c = 0; c < br; ++c) {
        for (std::size_t i = 0; i < aq; ++i)
            col[i] = t[i * br + c];
        auto out = apply_impl(a, col, transposed);
        for (std::size_t i = 0; i < ap; ++i)
            y[i * br + c] = out[i];
    }
    return y;
}

inline std::vector<complex> apply_impl(const LinOp& op, std::span<const complex> x, bool transposed) {
    const std::size_t in = transposed ? op.rows() : op.cols();
    const std::size_t out = transposed ? op.cols() : op.rows();
    if (x.size() != in)
        throw dimension_error("apply: vector length " + std::to_string(x.size()) + " but operator '" +
                              op.label() + "' expects " + std::to_string(in));
    std::vector<complex> y(out);
    std::visit(
        overloaded{
            [&](const node::Dense& d) {
                const auto& m = d.m;
                if (!transposed) {
                    for (std::size_t r = 0; r < m.rows(); ++r) {
                        complex acc{};
                        for (std::size_t c = 0; c < m.cols(); ++c)
                            acc += m(r, c) * x[c];
                        y[r] = acc;
                    }
                } else {
                    for (std::size_t r = 0; r < m.rows(); ++r)
                        for (std::size_t c = 0; c < m.cols(); ++c)
                            y[c] += m(r, c) * x[r];
                }
            },
            [&](const node::Diagonal& d) {
                for (std::size_t i = 0; i < d.d.size(); ++i)
                    y[i] = d.d[i] * x[i];
            },
            [&](const node::Identity&) { std::copy(x.begin(), x.end(), y.begin()); },
            [&](const node::FlipJ& f) {
                for (std::size_t i = 0; i < f.n; ++i)
                    y[i] = x[f.n - 1 - i];
            },
            [&](const node::CircShiftZ& z) {
                const int p = transposed ? -z.power : z.power;
                for (std::size_t i = 0; i < z.n; ++i) {
                    if (p == 1)
                        y[(i + 1) % z.n] = x[i];
                    else
                        y[i] = x[(i + 1) % z.n];
                }
            },
            [&](const node::StrideL& l) {
                const std::size_t m = l.n / l.k;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < l.k; ++j) {
                        if (!transposed)
                            y[j * m + i] = x[i * l.k + j];
                        else
                            y[i * l.k + j] = x[j * m + i];
                    }
            },
            [&](const node::PermK& p) {
                for (std::size_t s = 0; s < p.n; ++s) {
                    const std::size_t t = perm_k_target(p.n, p.k, s);
                    if (!transposed)
                        y[t] = x[s];
                    else
                        y[s] = x[t];
                }
            },
            [&](const node::TwiddleT& t) {
                for (std::size_t s = 0; s < t.n; ++s)
                    y[s] = twiddle_entry(t.n, t.k, s) * x[s];
            },
            [&](const node::TwoSparse& s) {
                for (std::size_t r = 0; r < s.rows.size(); ++r)
                    for (std::size_t e = 0; e < s.rows[r].count; ++e) {
                        const auto& en = s.rows[r].entries[e];
                        if (!transposed)
                            y[r] += en.value * x[en.col];
                        else
                            y[en.col] += en.value * x[r];
                    }
            },
            [&](const node::DirectSum& d) {
                std::size_t xi = 0, yi = 0;
                for (const auto& b : d.blocks) {
                    const std::size_t bi = transposed ? b.rows() : b.cols();
                    const std::size_t bo = transposed ? b.cols() : b.rows();
                    auto part = apply_impl(b, x.subspan(xi, bi), transposed);
                    std::copy(part.begin(), part.end(), y.begin() + static_cast<std::ptrdiff_t>(yi));
                    xi += bi;
                    yi += bo;
                }
            },
            [&](const node::ComplementaryDirectSum& d) {
                // Block l occupies rows [r_l, r_l + rows) and columns ending at
                // cols(op) - (sum of previous block widths).
                std::size_t row0 = 0, col_end = op.cols();
                for (const auto& b : d.blocks) {
                    const std::size_t col0 = col_end - b.cols();
                    if (!transposed) {
                        auto part = apply_impl(b, x.subspan(col0, b.cols()), false);
                        std::copy(part.begin(), part.end(), y.begin() + static_cast<std::ptrdiff_t>(row0));
                    } else {
                        auto part = apply_impl(b, x.subspan(row0, b.rows()), true);
                        std::copy(part.begin(), part.end(), y.begin() + static_cast<std::ptrdiff_t>(col0));
                    }
                    row0 += b.rows();
                    col_end = col0;
                }
            },
            [&](const node::Tensor& t) { y = apply_tensor(t.a, t.b, x, transposed); },
            [&](const node::Compose& c) {
                std::vector<complex> cur(x.begin(), x.end());
                if (!transposed) {
                    for (std::size_t i = c.children.size(); i-- > 0;)
                        cur = apply_impl(c.children[i], cur, false);
                } else {
                    for (const auto& ch : c.children)
                        cur = apply_impl(ch, cur, true);
                }
                y = std::move(cur);
            },
            [&](const node::ColumnConcat& cc) {
                std::size_t off = 0;
                for (const auto& b : cc.blocks) {
                    if (!transposed) {
                        auto part = apply_impl(b, x.subspan(off, b.cols()), false);
                        for (std::size_t i = 0; i < part.size(); ++i)
                            y[i] += part[i];
                    } else {
                        auto part = apply_impl(b, x, true);
                        std::copy(part.begin(), part.end(), y.begin() + static_cast<std::ptrdiff_t>(off));
                    }
                    off += b.cols();
                }
            },
            [&](const node::Transpose& t) { y = apply_impl(t.child, x, !transposed); },
        },
        op.node().v);
    return y;
}

} // namespace detail

/// y = op * x without forming the matrix.
inline std::vector<complex> op_apply(const LinOp& op, std::span<const complex> x) {
    return detail::apply_impl(op, x, false);
}

/// y = op^T * x.
inline std::vector<complex> op_apply_transposed(const LinOp& op, std::span<const complex> x) {
    return detail::apply_impl(op, x, true);
}

// ---------------------------------------------------------------------------
// Densification, built from the matrix definitions rather than from op_apply
// so the two paths check each other.

inline DenseMatrix op_to_dense(const LinOp& op) {
    using detail::overloaded;
    DenseMatrix out(op.rows(), op.cols());
    std::visit(
        overloaded{
            [&](const node::Dense& d) { out = d.m; },
            [&](const node::Diagonal& d) { out = diagonal_matrix(d.d); },
            [&](const node::Identity& i) { out = DenseMatrix::identity(i.n); },
            [&](const node::FlipJ& f) {
                for (std::size_t k = 0; k < f.n; ++k)
                    out(k, f.n - 1 - k) = 1.0;
            },
            [&](const node::CircShiftZ& z) {
                // Z_n = [0 1; I_{n-1} 0]
                for (std::size_t r = 0; r < z.n; ++r) {
                    const std::size_t c = (r + z.n - 1) % z.n;
                    if (z.power == 1)
                        out(r, c) = 1.0;
                    else
                        out(c, r) = 1.0;
                }
            },
            [&](const node::StrideL& l) {
                const std::size_t m = l.n / l.k;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < l.k; ++j)
                        out(j * m + i, i * l.k + j) = 1.0;
            },
            [&](const node::PermK& p) {
                const std::size_t m = p.n / p.k;
                std::vector<DenseMatrix> blocks;
                for (std::size_t b = 0; b < p.k; ++b)
                    blocks.push_back(b % 2 == 0 ? DenseMatrix::identity(m)
                                                : op_to_dense(LinOp::flip(m)));
                out = direct_sum(blocks) * op_to_dense(LinOp::stride(p.n, p.k));
            },
            [&](const node::TwiddleT& t) {
                const std::size_t m = t.n / t.k;
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t i = 0; i < t.k; ++i)
                        out(j * t.k + i, j * t.k + i) =
                            unit_root(static_cast<std::int64_t>(t.n), static_cast<std::int64_t>((i * j) % t.n));
            },
            [&](const node::TwoSparse& s) {
                for (std::size_t r = 0; r < s.rows.size(); ++r)
                    for (std::size_t e = 0; e < s.rows[r].count; ++e)
                        out(r, s.rows[r].entries[e].col) += s.rows[r].entries[e].value;
            },
            [&](const node::DirectSum& d) {
                std::vector<DenseMatrix> blocks;
                for (const auto& b : d.blocks)
                    blocks.push_back(op_to_dense(b));
                out = direct_sum(blocks);
            },
            [&](const node::ComplementaryDirectSum& d) {
                std::size_t row0 = 0, col_end = op.cols();
                for (const auto& b : d.blocks) {
                    const DenseMatrix bd = op_to_dense(b);
                    const std::size_t col0 = col_end - b.cols();
                    for (std::size_t i = 0; i < bd.rows(); ++i)
                        for (std::size_t j = 0; j < bd.cols(); ++j)
                            out(row0 + i, col0 + j) = bd(i, j);
                    row0 += b.rows();
                    col_end = col0;
                }
            },
            [&](const node::Tensor& t) { out = kronecker(op_to_dense(t.a), op_to_dense(t.b)); },
            [&](const node::Compose& c) {
                out = op_to_dense(c.children.front());
                for (std::size_t i = 1; i < c.children.size(); ++i)
                    out = out * op_to_dense(c.children[i]);
            },
            [&](const node::ColumnConcat& cc) {
                std::size_t off = 0;
                for (const auto& b : cc.blocks) {
                    const DenseMatrix bd = op_to_dense(b);
                    for (std::size_t i = 0; i < bd.rows(); ++i)
                        for (std::size_t j = 0; j < bd.cols(); ++j)
                            out(i, off + j) = bd(i, j);
                    off += b.cols();
                }
            },
            [&](const node::Transpose& t) { out = transpose(op_to_dense(t.child)); },
        },
        op.node().v);
    return out;
}

// ---------------------------------------------------------------------------
// Cost model: 6 real flops per complex multiply, 2 per complex add.
// Dense r x c: one multiply per entry outside {0, +1, -1}, r(c-1) adds.
// Permutations and identities are free.

namespace detail {

inline CostReport cost_impl(const LinOp& op, bool transposed) {
    CostReport c;
    auto count_mults = [](auto first, auto last) {
        std::uint64_t n = 0;
        for (; first != last; ++first)
            if (!is_free_multiplier(*first))
                ++n;
        return n;
    };
    std::visit(
        overloaded{
            [&](const node::Dense& d) {
                c.complex_mults = count_mults(d.m.entries().begin(), d.m.entries().end());
                const std::size_t out = transposed ? d.m.cols() : d.m.rows();
                const std::size_t in = transposed ? d.m.rows() : d.m.cols();
                c.complex_adds = in ? out * (in - 1) : 0;
            },
            [&](const node::Diagonal& d) { c.complex_mults = count_mults(d.d.begin(), d.d.end()); },
            [&](const node::Identity&) {},
            [&](const node::FlipJ&) {},
            [&](const node::CircShiftZ&) {},
            [&](const node::StrideL&) {},
            [&](const node::PermK&) {},
            [&](const node::TwiddleT& t) {
                for (std::size_t s = 0; s < t.n; ++s)
                    if (!is_free_multiplier(twiddle_entry(t.n, t.k, s)))
                        ++c.complex_mults;
            },
            [&](const node::TwoSparse& s) {
                std::vector<std::size_t> per_col(op.cols());
                for (const auto& r : s.rows) {
                    std::size_t nnz = 0;
                    for (std::size_t e = 0; e < r.count; ++e) {
                        if (r.entries[e].value == complex{})
                            continue;
                        ++nnz;
                        ++per_col[r.entries[e].col];
                        if (!is_free_multiplier(r.entries[e].value))
                            ++c.complex_mults;
                    }
                    if (!transposed && nnz > 1)
                        c.complex_adds += nnz - 1;
                }
                if (transposed)
                    for (auto nnz : per_col)
                        if (nnz > 1)
                            c.complex_adds += nnz - 1;
            },
            [&](const node::DirectSum& d) {
                for (const auto& b : d.blocks)
                    c += cost_impl(b, transposed);
            },
            [&](const node::ComplementaryDirectSum& d) {
                for (const auto& b : d.blocks)
                    c += cost_impl(b, transposed);
            },
            [&](const node::Tensor& t) {
                // (A (x) B) x = (A (x) I)(I (x) B) x
                const std::size_t aq = transposed ? t.a.rows() : t.a.cols();
                const std::size_t br = transposed ? t.b.cols() : t.b.rows();
                c = aq * cost_impl(t.b, transposed) + br * cost_impl(t.a, transposed);
            },
            [&](const node::Compose& k) {
                for (const auto& ch : k.children)
                    c += cost_impl(ch, transposed);
            },
            [&](const node::ColumnConcat& cc) {
                for (const auto& b : cc.blocks)
                    c += cost_impl(b, transposed);
                if (!transposed)
                    c.complex_adds += (cc.blocks.size() - 1) * op.rows();
            },
            [&](const node::Transpose& t) { c = cost_impl(t.child, !transposed); },
        },
        op.node().v);
    return c;
}

} // namespace detail

inline CostReport op_cost(const LinOp& op) { return detail::cost_impl(op, false); }

// ---------------------------------------------------------------------------
// Structural transpose

inline LinOp op_transpose(const LinOp& op) {
    using detail::overloaded;
    const std::string label = op.label().empty() ? std::string{} : "(" + op.label() + ")^T";
    return std::visit(
        overloaded{
            [&](const node::Dense& d) { return LinOp::dense(transpose(d.m), label); },
            [&](const node::Diagonal&) { return op; },
            [&](const node::Identity&) { return op; },
            [&](const node::FlipJ&) { return op; },
            [&](const node::TwiddleT&) { return op; },
            [&](const node::CircShiftZ& z) { return LinOp::circular_shift(z.n, -z.power); },
            [&](const node::StrideL& l) { return LinOp::stride(l.n, l.n ? l.n / l.k : l.k); },
            [&](const node::PermK&) { return LinOp::transposed(op, label); },
            [&](const node::TwoSparse&) { return LinOp::transposed(op, label); },
            [&](const node::DirectSum& d) {
                std::vector<LinOp> t;
                for (const auto& b : d.blocks)
                    t.push_back(op_transpose(b));
                return LinOp::direct_sum(std::move(t), label);
            },
            [&](const node::ComplementaryDirectSum& d) {
                std::vector<LinOp> t;
                for (auto it = d.blocks.rbegin(); it != d.blocks.rend(); ++it)
                    t.push_back(op_transpose(*it));
                return LinOp::complementary_direct_sum(std::move(t), label);
            },
            [&](const node::Tensor& t) {
                return LinOp::tensor(op_transpose(t.a), op_transpose(t.b), label);
            },
            [&](const node::Compose& c) {
                std::vector<LinOp> t;
                for (auto it = c.children.rbegin(); it != c.children.rend(); ++it)
                    t.push_back(op_transpose(*it));
                return LinOp::compose(std::move(t), label);
            },
            [&](const node::ColumnConcat&) { return LinOp::transposed(op, label); },
            [&](const node::Transpose& t) { return t.child; },
        },
        op.node().v);
}

/// Largest number of nonzero entries in any row of a dense matrix.
inline std::size_t max_row_nonzeros(const DenseMatrix& m, double tol = 0.0) {
    std::size_t best = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t n = 0;
        for (auto v : m.row(r))
            if (std::abs(v) > tol)
                ++n;
        best = std::max(best, n);
    }
    return best;
}

} // namespace polyfact
