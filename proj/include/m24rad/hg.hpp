// McKay-Thompson series H_g = (chi(g)/24) H - T_g / eta^3 and 1/eta_g.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "m24rad/m24.hpp"
#include "m24rad/modforms.hpp"

namespace m24rad {

inline PSeries eta_product(const ClassRecord& c, const Rat& order) {
    return eta_quotient(c.eta_factors(), order);
}

/// 1/eta_g
inline PSeries eta_mckay_series(const ClassRecord& c, const Rat& order) {
    // 1/s of valuation -1 is known to (o_s - 2 v_s); v_s = 1 for every class
    return eta_product(c, order + Rat(2)).inverse().truncated(order);
}

/// The weight two form T_g for a recipe tag. `use_eta` selects the
/// eta-quotient form for the two classes that list both (2B, 4A).
inline PSeries ttilde_series(const std::string& tag, const Rat& order, bool use_eta = false) {
    auto L = [&](long m) { return lambda_series(m, order); };
    auto E = [&](std::vector<std::pair<long, long>> f) { return eta_quotient(f, order); };
    if (tag == "1A") return PSeries(order);
    if (tag == "2A") return Rat(16) * L(2);
    if (tag == "2B") return use_eta ? Rat(2) * E({{1, 8}, {2, -4}}) : Rat(-24) * L(2) + Rat(8) * L(4);
    if (tag == "3A") return Rat(6) * L(3);
    if (tag == "3B") return Rat(2) * E({{1, 6}, {3, -2}});
    if (tag == "4A")
        return use_eta ? Rat(2) * E({{2, 8}, {4, -4}}) : Rat(4) * L(2) - Rat(6) * L(4) + Rat(2) * L(8);
    if (tag == "4B") return Rat(4) * (L(4) - L(2));
    if (tag == "4C") return Rat(2) * E({{1, 4}, {2, 2}, {4, -2}});
    if (tag == "5A") return Rat(2) * L(5);
    if (tag == "6A") return Rat(2) * (L(6) - L(2) - L(3));
    if (tag == "6B") return Rat(2) * E({{1, 2}, {2, 2}, {3, 2}, {6, -2}});
    if (tag == "7AB") return L(7);
    if (tag == "8A") return L(8) - L(4);
    if (tag == "10A") return Rat(2) * E({{1, 3}, {2, 1}, {5, 1}, {10, -1}});
    if (tag == "11A") return make_rat(2, 5) * (L(11) - Rat(11) * E({{1, 2}, {11, 2}}));
    if (tag == "12A") return Rat(2) * E({{1, 3}, {4, 2}, {6, 3}, {2, -1}, {3, -1}, {12, -2}});
    if (tag == "12B") return Rat(2) * E({{1, 4}, {4, 1}, {6, 1}, {2, -1}, {12, -1}});
    if (tag == "14AB") return make_rat(1, 3) * (L(14) - L(2) - L(7) - Rat(14) * E({{1, 1}, {2, 1}, {7, 1}, {14, 1}}));
    if (tag == "15AB") return make_rat(1, 4) * (L(15) - L(3) - L(5) - Rat(15) * E({{1, 1}, {3, 1}, {5, 1}, {15, 1}}));
    if (tag == "21AB") return make_rat(1, 3) * (Rat(7) * E({{1, 3}, {7, 3}, {3, -1}, {21, -1}}) - E({{1, 6}, {3, -2}}));
    // phi coefficients fixed by the q and q^2 terms of H_g; the combination
    // L(23) - 23 phi_1 + 23 phi_2 gives non-integral coefficients.
    if (tag == "23AB")
        return make_rat(1, 11) * (L(23) - Rat(138) * phi23_series(1, order) - Rat(23) * phi23_series(2, order));
    throw std::invalid_argument("unknown T_g recipe: " + tag);
}

/// H_g known below `order`.
inline PSeries hg_series(const ClassRecord& c, const Rat& order, const PSeries* h = nullptr) {
    Rat o = order + Rat(1);
    PSeries hs = h ? *h : h_series(o);
    PSeries inv_eta3 = eta_series(1, o + Rat(1)).pow(3).inverse();
    PSeries r = make_rat(c.chi, 24) * hs - ttilde_series(c.ttilde, o) * inv_eta3;
    return r.truncated(order);
}

enum class SeriesKind { hg, etainv };

inline const char* kind_name(SeriesKind k) { return k == SeriesKind::hg ? "hg" : "etainv"; }

inline SeriesKind parse_kind(const std::string& s) {
    if (s == "hg") return SeriesKind::hg;
    if (s == "etainv") return SeriesKind::etainv;
    throw std::invalid_argument("unknown series kind: " + s);
}

/// Exponent of table row `row`: -1/8 + row for H_g, row for 1/eta_g (the
/// leading q^{-1} of 1/eta_g is not a table row).
inline Rat row_exponent(SeriesKind kind, long row) {
    return kind == SeriesKind::hg ? make_rat(8 * row - 1, 8) : Rat(row);
}

/// Coefficients at rows 0..rows-1 of one class.
inline std::vector<Rat> series_column(SeriesKind kind, const ClassRecord& c, long rows, const PSeries* h = nullptr) {
    Rat order = row_exponent(kind, rows);
    PSeries s = kind == SeriesKind::hg ? hg_series(c, order, h) : eta_mckay_series(c, order);
    std::vector<Rat> col;
    for (long r = 0; r < rows; ++r) col.push_back(s.coeff(row_exponent(kind, r)));
    return col;
}

/// table[class][row] over all_classes()
inline std::vector<std::vector<Rat>> series_table(SeriesKind kind, long rows) {
    std::optional<PSeries> h;
    if (kind == SeriesKind::hg) h = h_series(row_exponent(kind, rows) + Rat(1));
    std::vector<std::vector<Rat>> t;
    for (auto& c : all_classes()) t.push_back(series_column(kind, c, rows, h ? &*h : nullptr));
    return t;
}

/// Decompose each row of a full table into irreducible multiplicities.
inline std::vector<Decomposition> decompose_table(const std::vector<std::vector<Rat>>& table) {
    std::vector<Decomposition> out;
    if (table.empty()) return out;
    for (std::size_t r = 0; r < table[0].size(); ++r) {
        std::vector<Rat> row;
        for (auto& col : table) row.push_back(col[r]);
        out.push_back(decompose(row));
    }
    return out;
}

}  // namespace m24rad
