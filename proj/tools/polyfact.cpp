#include "commands.hpp"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <iostream>

int main(int argc, char** argv) {
    using namespace polyfact::cli;

    CLI::App app{"Polynomial transforms and their fast factorizations"};
    app.require_subcommand(1);

    std::string name, path = "-", algorithm, spec, emit_dir;
    std::size_t n = 0, k = 0, m = 0, reps = 5;
    double verify_tol = 1e-10, derive_tol = 1e-10;
    std::vector<std::size_t> sizes;

    auto* emit = app.add_subcommand("emit", "Write a named transform matrix");
    emit->add_option("transform", name, "dft, dct1..dct4, dst1..dst4")->required();
    emit->add_option("n", n, "size")->required();
    emit->add_option("output", path, "output file, '-' for standard output");

    auto* verify = app.add_subcommand("verify", "Check a fast factorization against the dense transform");
    verify->add_option("algorithm", algorithm, "cooley-tukey, britanak-rao or wang")->required();
    verify->add_option("k", k, "radix")->required();
    verify->add_option("m", m, "second size parameter")->required();
    verify->add_option("--tol", verify_tol, "relative Frobenius tolerance")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Operation counts and apply timings of recursive plans");
    bench->add_option("algorithm", algorithm, "cooley-tukey, britanak-rao or wang")->required();
    bench->add_option("--sizes", sizes, "comma separated transform sizes")->required()->delimiter(',');
    bench->add_option("--reps", reps, "timed repetitions per size")->capture_default_str();

    auto* derive = app.add_subcommand("derive", "Factor a polynomial transform from a spec file");
    derive->add_option("spec", spec, "spec file")->required();
    derive->add_option("--emit-factors", emit_dir, "directory for factor matrices");
    derive->add_option("--tol", derive_tol, "reconstruction tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : usage_error;
    }

    if (*emit)
        return cmd_emit(name, n, path, std::cout, std::cerr);
    if (*verify)
        return cmd_verify(algorithm, k, m, verify_tol, std::cout, std::cerr);
    if (*bench)
        return cmd_bench(algorithm, sizes, reps, std::cout, std::cerr);
    return cmd_derive(spec, emit_dir, derive_tol, std::cout, std::cerr);
}
