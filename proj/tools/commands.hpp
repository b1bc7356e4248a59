#pragma once

// Subcommands of the polyfact tool. Each returns the process exit code:
// 0 success, 1 numerical failure, 2 usage or parse error, 3 failed precondition.
// Data goes to `out` or to files, diagnostics to `err`.

#include "polyfact/polyfact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace polyfact::cli {

enum exit_code : int { ok = 0, numerical_failure = 1, usage_error = 2, precondition_failed = 3 };

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline std::string shape(const LinOp& op) { return std::to_string(op.rows()) + "x" + std::to_string(op.cols()); }

/// Writes the named transform in matrix text format; "-" or "" writes to `out`.
inline int cmd_emit(const std::string& name, std::size_t n, const std::string& path, std::ostream& out,
                    std::ostream& err) {
    const auto t = parse_transform_name(name);
    if (!t) {
        err << "emit: unknown transform '" << name << "'\n";
        return usage_error;
    }
    DenseMatrix m;
    try {
        m = named_transform(*t, n);
    } catch (const polyfact_error& e) {
        err << "emit: " << e.what() << '\n';
        return usage_error;
    }
    const auto text = render_matrix(m);
    if (path.empty() || path == "-") {
        out << text;
        return ok;
    }
    try {
        write_text_file(path, text);
    } catch (const polyfact_error& e) {
        err << "emit: " << e.what() << '\n';
        return usage_error;
    }
    return ok;
}

inline int cmd_verify(const std::string& algorithm, std::size_t k, std::size_t m, double tol, std::ostream& out,
                      std::ostream& err) {
    const auto a = parse_algorithm(algorithm);
    if (!a) {
        err << "verify: unknown algorithm '" << algorithm << "' (cooley-tukey, britanak-rao, wang)\n";
        return usage_error;
    }
    Factorization f;
    try {
        f = factorize(*a, k, m);
    } catch (const polyfact_error& e) {
        err << "verify: " << e.what() << '\n';
        return usage_error;
    }
    const double e = f.reconstruction_error();
    out << to_string(*a) << " k=" << k << " m=" << m << " n=" << f.target.rows() << '\n';
    for (std::size_t i = 0; i < f.factors.size(); ++i)
        out << "  factor " << i + 1 << ": " << f.factors[i].label() << " (" << shape(f.factors[i]) << ")\n";
    out << "relative error " << sci(e) << '\n';
    if (!(e <= tol)) {
        err << "verify: error " << sci(e) << " exceeds tolerance " << sci(tol) << '\n';
        return numerical_failure;
    }
    return ok;
}

/// Columns: n, real flops, median apply time in microseconds, flops / (n log2 n).
inline int cmd_bench(const std::string& algorithm, const std::vector<std::size_t>& sizes, std::size_t reps,
                     std::ostream& out, std::ostream& err) {
    const auto a = parse_algorithm(algorithm);
    if (!a) {
        err << "bench: unknown algorithm '" << algorithm << "'\n";
        return usage_error;
    }
    if (sizes.empty() || reps == 0) {
        err << "bench: need at least one size and one repetition\n";
        return usage_error;
    }
    std::vector<RadixPlan> plans;
    for (auto n : sizes) {
        try {
            plans.push_back(build_plan(*a, n));
        } catch (const polyfact_error& e) {
            err << "bench: " << e.what() << '\n';
            return usage_error;
        }
    }

    char line[128];
    std::snprintf(line, sizeof line, "%8s %12s %14s %16s\n", "n", "flops", "median_us", "flops/(n log2 n)");
    out << line;
    for (const auto& plan : plans) {
        const std::size_t n = plan.n;
        std::vector<complex> x(n);
        for (std::size_t j = 0; j < n; ++j)
            x[j] = complex{std::cos(0.37 * double(j)), std::sin(0.61 * double(j))};
        std::vector<double> times;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto y = plan_apply(plan, x);
            const auto t1 = std::chrono::steady_clock::now();
            if (y.size() != n)
                return numerical_failure;
            times.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        }
        std::nth_element(times.begin(), times.begin() + long(times.size() / 2), times.end());
        const double median = times[times.size() / 2];
        const auto flops = plan_cost(plan).total_real_flops();
        if (n > 1) {
            const double ratio = double(flops) / (double(n) * std::log2(double(n)));
            std::snprintf(line, sizeof line, "%8zu %12llu %14.3f %16.4f\n", n, (unsigned long long)flops, median,
                          ratio);
        } else {
            std::snprintf(line, sizeof line, "%8zu %12llu %14.3f %16s\n", n, (unsigned long long)flops, median, "-");
        }
        out << line;
    }
    return ok;
}

/// Runs the induction engine on a spec file. With `emit_dir` set, writes
/// factor-1.txt ... and product.txt there.
inline int cmd_derive(const std::string& spec_path, const std::string& emit_dir, double tol, std::ostream& out,
                      std::ostream& err) {
    InductionSpec spec;
    try {
        spec = load_spec(spec_path);
    } catch (const parse_error& e) {
        err << "derive: " << spec_path << ": " << e.what() << '\n';
        return usage_error;
    }

    Factorization f;
    try {
        f = induction_factorize(spec);
    } catch (const transversal_error& e) {
        const auto& d = e.diagnostics();
        err << "derive: " << e.what() << '\n';
        err << "  coset dimensions:";
        for (auto m : d.m_ell)
            err << ' ' << m;
        err << '\n';
        return precondition_failed;
    } catch (const polyfact_error& e) {
        err << "derive: " << e.what() << '\n';
        return precondition_failed;
    }
    for (const auto& w : f.warnings)
        err << "derive: warning: " << w << '\n';

    const auto product = f.product();
    const double e = relative_error(product, f.target);
    const auto ones = ones_count_check(spec);

    out << "n=" << f.target.rows() << " cosets=" << spec.transversal.size() << '\n';
    for (std::size_t i = 0; i < f.factors.size(); ++i)
        out << "  factor " << i + 1 << ": " << f.factors[i].label() << " (" << shape(f.factors[i]) << ")\n";
    out << "reconstruction error " << sci(e) << '\n';
    out << "ones count " << (ones.holds ? "holds" : "FAILS") << " (" << ones.ones << " ones, column counts";
    for (auto c : ones.column_ones)
        out << ' ' << c;
    out << ")\n";

    if (!emit_dir.empty()) {
        try {
            std::filesystem::create_directories(emit_dir);
            const std::filesystem::path dir(emit_dir);
            for (std::size_t i = 0; i < f.factors.size(); ++i)
                write_matrix_file((dir / ("factor-" + std::to_string(i + 1) + ".txt")).string(),
                                  op_to_dense(f.factors[i]));
            write_matrix_file((dir / "product.txt").string(), product);
        } catch (const std::exception& ex) {
            err << "derive: " << ex.what() << '\n';
            return usage_error;
        }
    }

    if (!(e <= tol)) {
        err << "derive: reconstruction error " << sci(e) << " exceeds tolerance " << sci(tol) << '\n';
        return numerical_failure;
    }
    return ok;
}

} // namespace polyfact::cli
