// JSON and CSV encodings. Exact rationals are integer pairs; an integer that
// does not fit in 64 bits is written as a decimal string. Floats are decimal
// strings carrying every significant digit of the working precision.
#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "m24rad/bigreal.hpp"
#include "m24rad/pseries.hpp"
#include "m24rad/rademacher.hpp"

namespace m24rad {

using Json = nlohmann::json;

inline Json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
    return Json(v.get_str());
}

inline Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a decimal string");
}

inline Rat rat_from_json(const Json& num, const Json& den) {
    Int d = int_from_json(den);
    if (d == 0) throw std::invalid_argument("zero denominator");
    Rat r(int_from_json(num), d);
    r.canonicalize();
    return r;
}

/// Decimal string with all digits of `x` at its precision.
inline std::string full_digits(const BigReal& x) { return x.str(); }

inline Json term_record(const Rat& e, const Rat& c) {
    return {{"exponent_numerator", int_to_json(e.get_num())},
            {"exponent_denominator", int_to_json(e.get_den())},
            {"coefficient_numerator", int_to_json(c.get_num())},
            {"coefficient_denominator", int_to_json(c.get_den())}};
}

/// [{exponent_numerator, exponent_denominator, coefficient_numerator, coefficient_denominator}, ...]
inline Json series_to_json(const PSeries& s) {
    Json arr = Json::array();
    for (auto& [num, c] : s.terms()) arr.push_back(term_record(s.exponent_of(num), c));
    return arr;
}

inline PSeries series_from_json(const Json& arr, const Rat& order) {
    PSeries s(order);
    for (auto& t : arr)
        s.set(rat_from_json(t.at("exponent_numerator"), t.at("exponent_denominator")),
              rat_from_json(t.at("coefficient_numerator"), t.at("coefficient_denominator")));
    return s;
}

inline Json rat_to_json(const Rat& r) {
    return {{"numerator", int_to_json(r.get_num())}, {"denominator", int_to_json(r.get_den())}};
}

inline Rat rat_from_json(const Json& j) { return rat_from_json(j.at("numerator"), j.at("denominator")); }

/// One entry per verified k: {class, k, c_max, value_re, value_im, target, pass}
inline Json report_to_json(const VerifyReport& r) {
    Json arr = Json::array();
    for (auto& e : r.entries)
        arr.push_back({{"class", r.cls},
                       {"k", e.k},
                       {"c_max", e.c_max},
                       {"value_re", full_digits(e.value.re)},
                       {"value_im", full_digits(e.value.im)},
                       {"target", int_to_json(e.target)},
                       {"pass", e.pass && r.stable}});
    return arr;
}

// RFC 4180: fields holding a comma, quote, CR or LF are quoted, quotes doubled,
// records end in CRLF.
inline std::string csv_field(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string out = "\"";
    for (char ch : f) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << "\r\n";
}

/// Inverse of csv_row over a whole document.
inline std::vector<std::vector<std::string>> csv_parse(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        any = true;
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (ch == '\r' || ch == '\n') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else {
            field += ch;
        }
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace m24rad
