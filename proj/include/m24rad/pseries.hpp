// Exact Puiseux q-series with rational exponents over a fixed denominator.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "m24rad/phase_arith.hpp"

namespace m24rad {

/// sum_e c_e q^{e/denom}, known for exponents < order. Terms at or beyond the
/// order are unknown rather than zero.
class PSeries {
public:
    explicit PSeries(Rat order = Rat(0), long denom = 24) : denom_(denom), order_(std::move(order)) {
        if (denom_ <= 0) throw std::domain_error("PSeries: denominator must be positive");
    }

    static PSeries monomial(const Rat& exponent, const Rat& coeff, const Rat& order, long denom = 24) {
        PSeries s(order, denom);
        s.set(exponent, coeff);
        return s;
    }
    static PSeries constant(const Rat& c, const Rat& order, long denom = 24) {
        return monomial(Rat(0), c, order, denom);
    }

    long denom() const { return denom_; }
    const Rat& order() const { return order_; }
    const std::map<long, Rat>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Rat exponent_of(long num) const { return make_rat(num, denom_); }

    Rat coeff(const Rat& exponent) const {
        if (exponent >= order_) throw std::out_of_range("PSeries::coeff: exponent beyond truncation order");
        long num = 0;
        if (!to_num(exponent, num)) return Rat(0);
        auto it = terms_.find(num);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void set(const Rat& exponent, const Rat& c) {
        if (exponent >= order_) return;
        long num = 0;
        if (!to_num(exponent, num)) {
            rebase(std::lcm(denom_, static_cast<long>(exponent.get_den().get_si())));
            to_num(exponent, num);
        }
        if (c == 0) terms_.erase(num);
        else terms_[num] = c;
    }

    void add_term(long num, const Rat& c) {
        if (make_rat(num, denom_) >= order_ || c == 0) return;
        auto& slot = terms_[num];
        slot += c;
        if (slot == 0) terms_.erase(num);
    }

    /// Smallest exponent with nonzero coefficient.
    Rat valuation() const {
        if (terms_.empty()) throw std::domain_error("PSeries::valuation: zero series");
        return make_rat(terms_.begin()->first, denom_);
    }

    /// Re-express over a denominator that is a multiple of the current one.
    void rebase(long new_denom) {
        if (new_denom == denom_) return;
        if (new_denom % denom_ != 0) throw std::domain_error("PSeries::rebase: not a multiple");
        long f = new_denom / denom_;
        std::map<long, Rat> t;
        for (auto& [e, c] : terms_) t.emplace(e * f, c);
        terms_.swap(t);
        denom_ = new_denom;
    }

    /// Lower the truncation order (never raises it).
    PSeries truncated(const Rat& order) const {
        PSeries r(std::min(order, order_), denom_);
        for (auto& [e, c] : terms_)
            if (make_rat(e, denom_) < r.order_) r.terms_.emplace(e, c);
        return r;
    }

    /// q -> q^s
    PSeries scaled(long s) const {
        if (s <= 0) throw std::domain_error("PSeries::scaled: positive factor required");
        PSeries r(order_ * s, denom_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e * s, c);
        return r;
    }

    /// multiply by q^r
    PSeries shifted(const Rat& r) const {
        PSeries out = *this;
        long num = 0;
        if (!out.to_num(r, num)) {
            out.rebase(std::lcm(denom_, static_cast<long>(r.get_den().get_si())));
            out.to_num(r, num);
        }
        std::map<long, Rat> t;
        for (auto& [e, c] : out.terms_) t.emplace(e + num, c);
        out.terms_.swap(t);
        out.order_ += r;
        return out;
    }

    friend PSeries operator+(PSeries a, PSeries b) {
        unify(a, b);
        PSeries r(std::min(a.order_, b.order_), a.denom_);
        for (auto& [e, c] : a.terms_) r.add_term(e, c);
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend PSeries operator-(const PSeries& a) {
        PSeries r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend PSeries operator-(const PSeries& a, const PSeries& b) { return a + (-b); }
    friend PSeries operator*(const Rat& s, const PSeries& a) {
        PSeries r(a.order_, a.denom_);
        if (s == 0) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }
    friend PSeries operator*(const PSeries& a, const Rat& s) { return s * a; }
    friend PSeries operator*(long s, const PSeries& a) { return Rat(s) * a; }

    friend PSeries operator*(PSeries a, PSeries b) {
        unify(a, b);
        if (a.terms_.empty() || b.terms_.empty()) {
            // zero known up to the weaker of the two bounds
            Rat oa = a.order_ + (b.terms_.empty() ? Rat(0) : b.valuation());
            Rat ob = b.order_ + (a.terms_.empty() ? Rat(0) : a.valuation());
            return PSeries(std::min(oa, ob), a.denom_);
        }
        Rat order = std::min(a.order_ + b.valuation(), b.order_ + a.valuation());
        PSeries r(order, a.denom_);
        // exponent bound as a numerator: e < order * denom
        Rat lim_r = order * a.denom_;
        long lim = static_cast<long>(rat_floor(lim_r).get_si());
        if (Rat(lim) == lim_r) --lim;
        for (auto& [ea, ca] : a.terms_) {
            for (auto& [eb, cb] : b.terms_) {
                if (ea + eb > lim) break;
                r.terms_[ea + eb] += ca * cb;
            }
        }
        for (auto it = r.terms_.begin(); it != r.terms_.end();) {
            if (it->second == 0) it = r.terms_.erase(it);
            else ++it;
        }
        return r;
    }

    /// Multiplicative inverse; requires a nonzero leading coefficient.
    PSeries inverse() const {
        if (terms_.empty()) throw std::domain_error("PSeries::inverse: zero leading coefficient");
        long v = terms_.begin()->first;
        const Rat& lead = terms_.begin()->second;
        Rat vr = make_rat(v, denom_);
        // s = lead q^v (1 + u), u known below order - v
        Rat order = order_ - 2 * vr;
        PSeries r(order, denom_);
        // coefficients b_j of 1/(lead (1+u)) at offsets j (numerators), j < (order_-v)*denom
        Rat span_r = (order_ - vr) * denom_;
        long span = static_cast<long>(rat_floor(span_r).get_si());
        if (Rat(span) == span_r) --span;
        std::vector<Rat> a(span + 1), b(span + 1);
        for (auto& [e, c] : terms_)
            if (e - v <= span) a[e - v] = c;
        Rat inv_lead = 1 / lead;
        for (long j = 0; j <= span; ++j) {
            Rat acc = (j == 0) ? Rat(1) : Rat(0);
            for (long i = 1; i <= j; ++i)
                if (a[i] != 0 && b[j - i] != 0) acc -= a[i] * b[j - i];
            b[j] = acc * inv_lead;
        }
        for (long j = 0; j <= span; ++j)
            if (b[j] != 0) r.add_term(j - v, b[j]);
        return r;
    }

    friend PSeries operator/(const PSeries& a, const PSeries& b) { return a * b.inverse(); }

    PSeries pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        if (k == 0) return constant(Rat(1), order_ - valuation(), denom_);
        PSeries result, base = *this;
        bool first = true;
        while (k) {
            if (k & 1) {
                result = first ? base : result * base;
                first = false;
            }
            k >>= 1;
            if (k) base = base * base;
        }
        return result;
    }

    /// Exact equality of known coefficients up to the smaller order.
    static bool equal_upto(PSeries a, PSeries b, const Rat& order) {
        unify(a, b);
        Rat o = std::min({order, a.order_, b.order_});
        for (auto& [e, c] : a.terms_)
            if (make_rat(e, a.denom_) < o && b.coeff(make_rat(e, a.denom_)) != c) return false;
        for (auto& [e, c] : b.terms_)
            if (make_rat(e, b.denom_) < o && a.coeff(make_rat(e, b.denom_)) != c) return false;
        return true;
    }

    /// Coefficients at exponents start, start+1, ..., for count steps.
    std::vector<Rat> column(const Rat& start, int count) const {
        std::vector<Rat> out;
        for (int i = 0; i < count; ++i) out.push_back(coeff(start + i));
        return out;
    }

private:
    bool to_num(const Rat& exponent, long& num) const {
        Rat t = exponent * denom_;
        if (t.get_den() != 1) return false;
        num = t.get_num().get_si();
        return true;
    }
    static void unify(PSeries& a, PSeries& b) {
        long l = std::lcm(a.denom_, b.denom_);
        a.rebase(l);
        b.rebase(l);
    }

    long denom_;
    Rat order_;
    std::map<long, Rat> terms_;
};

}  // namespace m24rad
