#pragma once

// Text formats.
//
// Matrices: one row per line, entries separated by ", ", each entry written
// as <re><sign><|im|>i with 17 significant digits ("0.70710678118654757-0.5i"),
// which round-trips every double exactly.
//
// Induction specs: sections in brackets, '#' starts a comment.
//
//     [alpha]            sample points, or "roots-of-unity N"
//     [generator]        monomial coefficients of r(x), constant term first
//     [transversal]      one coefficient list per line
//     [basis]            monomial | chebyshev-T/U/V/W, or one coefficient list per line
//     [coset-basis L]    basis of coset L, same syntax as [basis]

#include "polyfact/dense.hpp"
#include "polyfact/error.hpp"
#include "polyfact/induction.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace polyfact {

inline std::string render_entry(complex v) {
    double re = v.real(), im = v.imag();
    if (re == 0.0)
        re = 0.0; // drop the sign of -0
    if (im == 0.0)
        im = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", re, std::signbit(im) ? '-' : '+', std::fabs(im));
    return buf;
}

inline std::string render_matrix(const DenseMatrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c)
                out += ", ";
            out += render_entry(m(r, c));
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(',');
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos)
            break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

} // namespace detail

/// Accepts the rendered form "a+bi", a plain real "a", or an imaginary "bi".
inline std::optional<complex> parse_entry(std::string_view s) {
    s = detail::trim(s);
    if (s.empty())
        return std::nullopt;
    if (s.back() != 'i') {
        if (auto re = detail::parse_double(s))
            return complex{*re};
        return std::nullopt;
    }
    const auto body = s.substr(0, s.size() - 1);
    // The sign between the two parts is the last '+' or '-' not opening an
    // exponent and not at position 0.
    for (std::size_t i = body.size(); i-- > 1;) {
        const char ch = body[i];
        if ((ch == '+' || ch == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            const auto re = detail::parse_double(body.substr(0, i));
            const auto im = detail::parse_double(body.substr(i + 1));
            if (!re || !im)
                return std::nullopt;
            return complex{*re, ch == '-' ? -*im : *im};
        }
    }
    if (body.empty() || body == "+")
        return complex{0, 1};
    if (body == "-")
        return complex{0, -1};
    if (auto im = detail::parse_double(body))
        return complex{0, *im};
    return std::nullopt;
}

inline std::vector<complex> parse_entry_list(std::string_view line, std::size_t line_no) {
    std::vector<complex> out;
    for (auto tok : detail::split_commas(line)) {
        auto v = parse_entry(tok);
        if (!v)
            throw parse_error(line_no, "cannot read complex number '" + std::string(tok) + "'");
        out.push_back(*v);
    }
    return out;
}

inline DenseMatrix parse_matrix(std::string_view text) {
    std::vector<complex> entries;
    std::size_t rows = 0, cols = 0, line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty())
            continue;
        const auto row = parse_entry_list(t, line_no);
        if (rows == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw parse_error(line_no, "row has " + std::to_string(row.size()) + " entries, expected " +
                                           std::to_string(cols));
        entries.insert(entries.end(), row.begin(), row.end());
        ++rows;
    }
    return DenseMatrix(rows, cols, std::move(entries));
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw polyfact_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw polyfact_error("failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_matrix_file(const std::string& path, const DenseMatrix& m) { write_text_file(path, render_matrix(m)); }

inline DenseMatrix read_matrix_file(const std::string& path) { return parse_matrix(read_text_file(path)); }

// ---------------------------------------------------------------------------
// Spec files

namespace detail {

inline std::optional<BasisFamily> parse_basis_family(std::string_view s) {
    if (s == "monomial")
        return BasisFamily{};
    if (s.size() == 11 && s.substr(0, 10) == "chebyshev-") {
        switch (s[10]) {
        case 'T': return BasisFamily{ChebKind::first};
        case 'U': return BasisFamily{ChebKind::second};
        case 'V': return BasisFamily{ChebKind::third};
        case 'W': return BasisFamily{ChebKind::fourth};
        default: break;
        }
    }
    return std::nullopt;
}

struct BasisSection {
    std::size_t line = 0;
    std::optional<BasisFamily> family;
    PolyBasis explicit_basis;

    BasisChoice choice() const { return family ? BasisChoice{*family} : BasisChoice{explicit_basis}; }
};

inline void basis_line(BasisSection& sec, std::string_view t, std::size_t line_no) {
    if (auto f = parse_basis_family(t)) {
        if (sec.family || !sec.explicit_basis.evaluators.empty())
            throw parse_error(line_no, "basis given twice");
        sec.family = f;
        return;
    }
    if (sec.family)
        throw parse_error(line_no, "basis family already given");
    sec.explicit_basis.evaluators.emplace_back(MonomialPoly(parse_entry_list(t, line_no)));
}

} // namespace detail

inline InductionSpec parse_spec(std::string_view text) {
    enum class Section { none, alpha, generator, transversal, basis, coset };
    Section section = Section::none;
    std::size_t coset_index = 0;

    std::vector<complex> alpha;
    std::size_t alpha_line = 0, generator_line = 0, transversal_line = 0;
    std::optional<MonomialPoly> generator;
    std::vector<MonomialPoly> transversal;
    detail::BasisSection basis;
    std::vector<std::optional<detail::BasisSection>> cosets;
    bool saw_alpha = false, saw_transversal = false;

    std::istringstream in{std::string(text)};
    std::size_t line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string_view t = raw;
        if (const auto hash = t.find('#'); hash != std::string_view::npos)
            t = t.substr(0, hash);
        t = detail::trim(t);
        if (t.empty())
            continue;

        if (t.front() == '[') {
            if (t.back() != ']')
                throw parse_error(line_no, "unterminated section header");
            const auto name = detail::trim(t.substr(1, t.size() - 2));
            if (name == "alpha") {
                section = Section::alpha;
                saw_alpha = true;
                alpha_line = line_no;
            } else if (name == "generator") {
                section = Section::generator;
                generator_line = line_no;
            } else if (name == "transversal") {
                section = Section::transversal;
                saw_transversal = true;
                transversal_line = line_no;
            } else if (name == "basis") {
                section = Section::basis;
                basis.line = line_no;
            } else if (name.substr(0, 11) == "coset-basis") {
                const auto idx = detail::trim(name.substr(11));
                std::size_t v = 0;
                const auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), v);
                if (idx.empty() || ec != std::errc{} || p != idx.data() + idx.size())
                    throw parse_error(line_no, "coset-basis needs a non-negative index");
                section = Section::coset;
                coset_index = v;
                if (cosets.size() <= v)
                    cosets.resize(v + 1);
                if (cosets[v])
                    throw parse_error(line_no, "coset-basis " + std::to_string(v) + " given twice");
                cosets[v] = detail::BasisSection{line_no, std::nullopt, {}};
            } else {
                throw parse_error(line_no, "unknown section [" + std::string(name) + "]");
            }
            continue;
        }

        switch (section) {
        case Section::none: throw parse_error(line_no, "content before the first section header");
        case Section::alpha:
            if (t.substr(0, 14) == "roots-of-unity") {
                std::size_t n = 0;
                const auto num = detail::trim(t.substr(14));
                const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
                if (num.empty() || ec != std::errc{} || p != num.data() + num.size() || n == 0)
                    throw parse_error(line_no, "roots-of-unity needs a positive count");
                const auto pts = SamplePoints::roots_of_unity(n).points();
                alpha.insert(alpha.end(), pts.begin(), pts.end());
            } else {
                const auto v = parse_entry_list(t, line_no);
                alpha.insert(alpha.end(), v.begin(), v.end());
            }
            break;
        case Section::generator:
            if (generator)
                throw parse_error(line_no, "generator must be a single coefficient list");
            generator = MonomialPoly(parse_entry_list(t, line_no));
            break;
        case Section::transversal: transversal.emplace_back(parse_entry_list(t, line_no)); break;
        case Section::basis: detail::basis_line(basis, t, line_no); break;
        case Section::coset: detail::basis_line(*cosets[coset_index], t, line_no); break;
        }
    }

    if (!saw_alpha || alpha.empty())
        throw parse_error(alpha_line, "missing or empty [alpha] section");
    if (!generator)
        throw parse_error(generator_line, "missing [generator] section");
    if (!saw_transversal || transversal.empty())
        throw parse_error(transversal_line, "missing or empty [transversal] section");
    if (cosets.size() > transversal.size())
        throw parse_error(cosets.back()->line, "coset-basis index beyond the transversal");

    InductionSpec spec;
    try {
        spec.alpha = SamplePoints(std::move(alpha));
    } catch (const invalid_argument& e) {
        throw parse_error(alpha_line, e.what());
    }
    spec.generator = std::move(*generator);
    spec.transversal = std::move(transversal);
    if (basis.line) {
        if (!basis.family && basis.explicit_basis.evaluators.empty())
            throw parse_error(basis.line, "empty [basis] section");
        spec.basis = basis.choice();
    }
    for (const auto& c : cosets) {
        if (c && !c->family && c->explicit_basis.evaluators.empty())
            throw parse_error(c->line, "empty coset-basis section");
        spec.coset_bases.push_back(c ? std::optional<BasisChoice>(c->choice()) : std::nullopt);
    }
    return spec;
}

inline InductionSpec load_spec(const std::string& path) { return parse_spec(read_text_file(path)); }

} // namespace polyfact
