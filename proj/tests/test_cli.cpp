#include "commands.hpp"
#include "goldens.hpp"
#include "support.hpp"

#include <filesystem>
#include <sstream>

using namespace polyfact;
using namespace polyfact::cli;
namespace fs = std::filesystem;
namespace pt = polyfact::testing;

namespace {

const std::string spec_dir = POLYFACT_SPEC_DIR;

struct Run {
    int code;
    std::string out, err;
};

template <class F>
Run run(F&& f) {
    std::ostringstream out, err;
    const int code = f(out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        v.push_back(l);
    return v;
}

// Value printed after `key` in the command output.
double reported(const std::string& out, const std::string& key) {
    const auto pos = out.find(key);
    if (pos == std::string::npos)
        return -1;
    return std::stod(out.substr(pos + key.size()));
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("polyfact-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST(Emit, Dft4SecondLine) {
    const auto r = run([](auto& o, auto& e) { return cmd_emit("dft", 4, "-", o, e); });
    EXPECT_EQ(r.code, 0);
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[1], "1+0i, 0-1i, -1+0i, 0+1i");
}

TEST(Emit, SmallExamples) {
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_emit("dft", 1, "", o, e); }).out, "1+0i\n");
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_emit("dct1", 3, "-", o, e); }).out,
              "1+0i, 1+0i, 1+0i\n1+0i, 0+0i, -1+0i\n1+0i, -1+0i, 1+0i\n");
}

TEST(Emit, WritesFile) {
    const auto dir = scratch("emit");
    const auto path = (dir / "dct4_8.txt").string();
    const auto r = run([&](auto& o, auto& e) { return cmd_emit("DCT-IV", 8, path, o, e); });
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(pt::matrices_near(read_matrix_file(path), named_transform(TransformName::dct4, 8), 0));
    fs::remove_all(dir);
}

TEST(Emit, BadArguments) {
    auto bad_name = run([](auto& o, auto& e) { return cmd_emit("fft", 4, "-", o, e); });
    EXPECT_EQ(bad_name.code, 2);
    EXPECT_TRUE(bad_name.out.empty());
    EXPECT_FALSE(bad_name.err.empty());
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_emit("dft", 0, "-", o, e); }).code, 2);
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_emit("dft", 2, "/nonexistent/dir/x.txt", o, e); }).code, 2);
}

TEST(Verify, Examples) {
    const auto br = run([](auto& o, auto& e) { return cmd_verify("britanak-rao", 1, 2, 1e-10, o, e); });
    EXPECT_EQ(br.code, 0);
    EXPECT_LT(reported(br.out, "relative error "), 1e-12);
    EXPECT_NE(br.out.find("factor 8: B"), std::string::npos);

    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_verify("cooley-tukey", 2, 2, 1e-10, o, e); }).code, 0);

    const auto w = run([](auto& o, auto& e) { return cmd_verify("wang", 2, 3, 1e-10, o, e); });
    EXPECT_EQ(w.code, 0);
    EXPECT_LT(reported(w.out, "relative error "), 1e-10);
}

TEST(Verify, ExitCodes) {
    // A zero tolerance cannot be met once rounding enters.
    const auto tight = run([](auto& o, auto& e) { return cmd_verify("wang", 2, 3, 0.0, o, e); });
    EXPECT_EQ(tight.code, 1);
    EXPECT_NE(tight.err.find("exceeds"), std::string::npos);
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_verify("radix-9", 2, 2, 1e-10, o, e); }).code, 2);
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_verify("cooley-tukey", 0, 2, 1e-10, o, e); }).code, 2);
}

TEST(Bench, FrozenDft8Count) {
    const auto r = run([](auto& o, auto& e) { return cmd_bench("cooley-tukey", {8}, 3, o, e); });
    ASSERT_EQ(r.code, 0);
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    std::istringstream row(l[1]);
    std::size_t n = 0, flops = 0;
    row >> n >> flops;
    EXPECT_EQ(n, 8u);
    EXPECT_EQ(flops, 78u);
}

TEST(Bench, SizeOneCostsNothing) {
    const auto r = run([](auto& o, auto& e) { return cmd_bench("cooley-tukey", {1}, 1, o, e); });
    ASSERT_EQ(r.code, 0);
    std::istringstream row(lines(r.out).at(1));
    std::size_t n = 9, flops = 9;
    row >> n >> flops;
    EXPECT_EQ(n, 1u);
    EXPECT_EQ(flops, 0u);
}

TEST(Bench, NormalizedCostIsFlat) {
    const auto r = run([](auto& o, auto& e) { return cmd_bench("cooley-tukey", {64, 256, 1024}, 1, o, e); });
    ASSERT_EQ(r.code, 0);
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 4u);
    double lo = 1e300, hi = 0;
    for (std::size_t i = 1; i < l.size(); ++i) {
        std::istringstream row(l[i]);
        double n, flops, us, ratio;
        row >> n >> flops >> us >> ratio;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    EXPECT_LT(hi / lo, 2.0);
}

TEST(Bench, InvalidSizes) {
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_bench("cooley-tukey", {7}, 1, o, e); }).code, 2);
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_bench("wang", {6, 9}, 1, o, e); }).code, 2);
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_bench("cooley-tukey", {}, 1, o, e); }).code, 2);
    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_bench("britanak-rao", {24}, 1, o, e); }).code, 0);
}

TEST(Derive, GoldenFactorsOnDisk) {
    struct Case {
        const char* file;
        std::array<DenseMatrix, 3> golden;
    };
    for (const auto& c : {Case{"dft4-radix2.spec", pt::dft4_radix2_factors()},
                          Case{"dft4-britanak.spec", pt::dft4_britanak_factors()}}) {
        const auto dir = scratch(std::string("derive-") + c.file);
        const auto r = run([&](auto& o, auto& e) { return cmd_derive(spec_dir + "/" + c.file, dir.string(), 1e-10, o, e); });
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_NE(r.out.find("ones count holds"), std::string::npos);
        EXPECT_LE(reported(r.out, "reconstruction error "), 1e-12);
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_TRUE(pt::matrices_near(read_matrix_file((dir / ("factor-" + std::to_string(i + 1) + ".txt")).string()),
                                          c.golden[i], 1e-12))
                << c.file << " factor " << i + 1;
        EXPECT_TRUE(pt::matrices_near(read_matrix_file((dir / "product.txt").string()),
                                      named_transform(TransformName::dft, 4), 1e-12));
        fs::remove_all(dir);
    }
}

TEST(Derive, OtherShippedSpecs) {
    for (const char* f : {"dft4-lagrange.spec", "dct4-cosets.spec"})
        EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_derive(spec_dir + "/" + f, "", 1e-10, o, e); }).code, 0) << f;
}

TEST(Derive, ExitCodes) {
    const auto dup = run([](auto& o, auto& e) { return cmd_derive(spec_dir + "/dft4-duplicated.spec", "", 1e-10, o, e); });
    EXPECT_EQ(dup.code, 3);
    EXPECT_NE(dup.err.find("rank 2"), std::string::npos);

    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_derive("/nonexistent.spec", "", 1e-10, o, e); }).code, 2);

    const auto dir = scratch("derive-bad");
    const auto bad = (dir / "bad.spec").string();
    write_text_file(bad, "[alpha]\n1, 2\n[generator]\n0, 1\n[transversal]\n1, ?\n");
    const auto r = run([&](auto& o, auto& e) { return cmd_derive(bad, "", 1e-10, o, e); });
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 6"), std::string::npos);

    // Basis of the wrong size is a precondition failure, not a parse error.
    const auto wrong = (dir / "wrong-basis.spec").string();
    write_text_file(wrong, "[alpha]\n1, 2\n[generator]\n0, 1\n[transversal]\n1\n[basis]\n1\n");
    EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_derive(wrong, "", 1e-10, o, e); }).code, 3);
    fs::remove_all(dir);

    EXPECT_EQ(run([](auto& o, auto& e) { return cmd_derive(spec_dir + "/dct4-cosets.spec", "", 0.0, o, e); }).code, 1);
}

TEST(Commands, Deterministic) {
    auto twice = [](auto f) { return run(f).out == run(f).out; };
    EXPECT_TRUE(twice([](auto& o, auto& e) { return cmd_emit("dst3", 9, "-", o, e); }));
    EXPECT_TRUE(twice([](auto& o, auto& e) { return cmd_verify("britanak-rao", 3, 4, 1e-10, o, e); }));
    EXPECT_TRUE(twice([](auto& o, auto& e) { return cmd_derive(spec_dir + "/dft4-britanak.spec", "", 1e-10, o, e); }));
}
