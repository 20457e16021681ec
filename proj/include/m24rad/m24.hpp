// M24 class data, character table and decomposition of class functions into
// irreducible characters.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "m24rad/modgroup.hpp"
#include "m24rad/phase_arith.hpp"

namespace m24rad {

struct CycleFactor {
    long length;
    long multiplicity;
};

/// One conjugacy class: cycle shape, weight k, levels n, N = n h, and the
/// number of fixed points chi.
struct ClassRecord {
    std::string name;
    std::vector<CycleFactor> cycle_shape;
    long k = 0, n = 1, N = 1, h = 1, chi = 0;
    std::string ttilde;

    GroupCtx ctx() const { return GroupCtx(n, h); }
    std::vector<std::pair<long, long>> eta_factors() const {
        std::vector<std::pair<long, long>> f;
        for (auto& c : cycle_shape) f.emplace_back(c.length, c.multiplicity);
        return f;
    }
};

/// re + im * sqrt(-radical); radical = 0 for rational values.
struct Alg {
    Rat re, im;
    long radical = 0;

    Alg conj() const { return {re, -im, radical}; }
    bool operator==(const Alg& o) const {
        if (im == 0 && o.im == 0) return re == o.re;
        return re == o.re && im == o.im && radical == o.radical;
    }
    bool is_rational() const { return im == 0; }
};

struct CharTable {
    std::vector<std::string> classes;
    std::vector<std::string> names;       // chi1 .. chi26
    std::vector<std::vector<Alg>> value;  // value[i][g] = chi_{i+1}(g)
};

struct M24Data {
    std::vector<ClassRecord> classes;
    CharTable table;
};

namespace detail {

inline Rat json_rat(const nlohmann::json& j, const char* num, const char* den) {
    return make_rat(Int(j.at(num).get<long>()), Int(j.at(den).get<long>()));
}

inline void check(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error("m24 data: " + what);
}

inline void validate(const M24Data& d) {
    check(d.classes.size() == 26, "expected 26 classes");
    for (auto& c : d.classes) {
        long total = 0;
        for (auto& f : c.cycle_shape) total += f.length * f.multiplicity;
        check(total == 24, c.name + ": cycle lengths do not sum to 24");
        long wsum = 0;
        for (auto& f : c.cycle_shape) wsum += f.multiplicity;
        check(wsum == 2 * c.k, c.name + ": weight is not half the number of cycles");
        check(c.N == c.n * c.h, c.name + ": N != n h");
        check(c.n % c.h == 0 && 24 % c.h == 0, c.name + ": h must divide n and 24");
        // balanced: i -> N/i preserves the shape
        for (auto& f : c.cycle_shape) {
            check(c.N % f.length == 0, c.name + ": cycle length does not divide N");
            long partner = c.N / f.length;
            bool found = false;
            for (auto& g : c.cycle_shape)
                if (g.length == partner && g.multiplicity == f.multiplicity) found = true;
            check(found, c.name + ": cycle shape is not balanced");
        }
        long fixed = c.cycle_shape.front().length == 1 ? c.cycle_shape.front().multiplicity : 0;
        check(fixed == c.chi, c.name + ": chi is not the number of fixed points");
        check((c.h == 1) == (c.chi > 0), c.name + ": h > 1 exactly for fixed-point-free classes");
    }
    const CharTable& t = d.table;
    check(t.value.size() == 26, "expected 26 characters");
    for (auto& row : t.value) check(row.size() == 26, "character row length");
    for (std::size_t g = 0; g < 26; ++g) check(t.value[0][g] == Alg{Rat(1), Rat(0), 0}, "trivial character");
    for (std::size_t i = 0; i < 26; ++i) {
        const Alg& dim = t.value[i][0];
        check(dim.is_rational() && dim.re > 0 && dim.re.get_den() == 1, "dimension column");
    }
    // a column with an irrational entry is followed by its conjugate partner,
    // which shares the class order and the eta-product
    for (std::size_t g = 0; g < 26; ++g) {
        bool irr = false;
        for (std::size_t i = 0; i < 26; ++i) irr = irr || !t.value[i][g].is_rational();
        if (!irr) continue;
        check(g + 1 < 26, "unpaired irrational column " + t.classes[g]);
        for (std::size_t i = 0; i < 26; ++i)
            check(t.value[i][g + 1] == t.value[i][g].conj(), "column " + t.classes[g] + " has no conjugate partner");
        const ClassRecord &a = d.classes[g], &b = d.classes[g + 1];
        check(a.n == b.n && a.h == b.h && a.ttilde == b.ttilde, "paired classes differ: " + a.name + "/" + b.name);
        ++g;
    }
}

}  // namespace detail

inline M24Data parse_m24_data(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    M24Data d;
    for (auto& c : j.at("classes")) {
        ClassRecord r;
        r.name = c.at("name").get<std::string>();
        for (auto& f : c.at("cycle_shape"))
            r.cycle_shape.push_back({f.at("length").get<long>(), f.at("multiplicity").get<long>()});
        r.k = c.at("k").get<long>();
        r.n = c.at("n").get<long>();
        r.N = c.at("N").get<long>();
        r.h = c.at("h").get<long>();
        r.chi = c.at("chi").get<long>();
        r.ttilde = c.at("ttilde").get<std::string>();
        d.classes.push_back(std::move(r));
        d.table.classes.push_back(d.classes.back().name);
    }
    for (auto& ch : j.at("characters")) {
        d.table.names.push_back(ch.at("name").get<std::string>());
        std::vector<Alg> row;
        for (auto& v : ch.at("values")) {
            Alg a{detail::json_rat(v, "re_numerator", "re_denominator"),
                  detail::json_rat(v, "im_numerator", "im_denominator"), v.at("radical").get<long>()};
            if (a.im == 0) a.radical = 0;
            row.push_back(a);
        }
        d.table.value.push_back(std::move(row));
    }
    detail::validate(d);
    return d;
}

inline M24Data load_m24_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_m24_data(ss.str());
}

#if __has_include("m24rad/m24_data_json.inc")
inline const char* embedded_m24_json() {
    static const char* text =
#include "m24rad/m24_data_json.inc"
        ;
    return text;
}
#define M24RAD_HAVE_EMBEDDED_DATA 1
#endif

/// Class records and character table, parsed and validated once.
inline const M24Data& m24_data() {
#ifdef M24RAD_HAVE_EMBEDDED_DATA
    static const M24Data d = parse_m24_data(embedded_m24_json());
#else
    static const M24Data d = load_m24_data(M24RAD_DATA_FILE);
#endif
    return d;
}

inline const std::vector<ClassRecord>& all_classes() { return m24_data().classes; }

inline const ClassRecord& class_data(const std::string& name) {
    for (auto& c : m24_data().classes)
        if (c.name == name) return c;
    throw std::invalid_argument("unknown class label: " + name);
}

inline std::size_t class_index(const std::string& name) {
    auto& cs = m24_data().classes;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i].name == name) return i;
    throw std::invalid_argument("unknown class label: " + name);
}

inline const CharTable& character_table() { return m24_data().table; }

struct Decomposition {
    std::vector<Rat> multiplicity;  // indexed by character
    bool integral = true;
    bool nonnegative = true;
};

namespace detail {

// Turn the 26 complex equations into 26 rational ones: for a conjugate
// column pair (g, g') keep (row_g + row_g')/2 and the sqrt(-n) part of row_g.
inline std::vector<std::vector<Rat>> realify(const CharTable& t, const std::vector<Alg>& rhs,
                                             std::vector<Rat>& b) {
    std::size_t G = t.classes.size(), K = t.value.size();
    std::vector<std::vector<Rat>> A;
    b.clear();
    std::vector<bool> done(G, false);
    for (std::size_t g = 0; g < G; ++g) {
        if (done[g]) continue;
        long rad = 0;
        for (std::size_t i = 0; i < K; ++i)
            if (!t.value[i][g].is_rational()) rad = t.value[i][g].radical;
        if (rad == 0) {
            std::vector<Rat> row(K);
            for (std::size_t i = 0; i < K; ++i) row[i] = t.value[i][g].re;
            if (!rhs[g].is_rational()) throw std::domain_error("decompose: irrational value at a rational class");
            A.push_back(row);
            b.push_back(rhs[g].re);
            done[g] = true;
            continue;
        }
        std::size_t partner = g + 1;
        check(partner < G, "unpaired irrational column");
        for (std::size_t i = 0; i < K; ++i)
            check(t.value[i][partner] == t.value[i][g].conj(), "column pair mismatch");
        if (!(rhs[partner] == rhs[g].conj()))
            throw std::domain_error("decompose: input does not respect conjugate pairing");
        std::vector<Rat> re(K), im(K);
        for (std::size_t i = 0; i < K; ++i) {
            re[i] = t.value[i][g].re;
            im[i] = t.value[i][g].im;
        }
        A.push_back(re);
        b.push_back(rhs[g].re);
        if (rhs[g].im != 0 && rhs[g].radical != rad) throw std::domain_error("decompose: radical mismatch");
        A.push_back(im);
        b.push_back(rhs[g].im);
        done[g] = done[partner] = true;
    }
    return A;
}

// exact Gauss-Jordan elimination
inline std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("decompose: singular system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        Rat inv = 1 / A[col][col];
        for (std::size_t j = col; j < n; ++j) A[col][j] *= inv;
        b[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (std::size_t j = col; j < n; ++j) A[r][j] -= f * A[col][j];
            b[r] -= f * b[col];
        }
    }
    return b;
}

}  // namespace detail

/// Solve sum_i m_i chi_i(g) = coeff(g) exactly for the multiplicities m_i.
inline Decomposition decompose(const std::vector<Alg>& coeffs) {
    const CharTable& t = character_table();
    if (coeffs.size() != t.classes.size()) throw std::invalid_argument("decompose: need one value per class");
    std::vector<Rat> b;
    auto A = detail::realify(t, coeffs, b);
    Decomposition d;
    d.multiplicity = detail::solve_exact(A, b);
    for (auto& m : d.multiplicity) {
        if (m.get_den() != 1) d.integral = false;
        if (m < 0) d.nonnegative = false;
    }
    return d;
}

inline Decomposition decompose(const std::vector<Rat>& coeffs) {
    std::vector<Alg> a;
    for (auto& c : coeffs) a.push_back({c, Rat(0), 0});
    return decompose(a);
}

}  // namespace m24rad
