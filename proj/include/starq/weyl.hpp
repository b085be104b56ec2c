#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "starq/multipoly.hpp"
#include "starq/poisson.hpp"

namespace starq {

// Normal-ordered Weyl monomial key: q^a d^b with all q's left of all d's.
using WeylKey = std::pair<Exponents, Exponents>;

inline int word_length(const WeylKey& k) { return exponent_sum(k.first) + exponent_sum(k.second); }

struct WeylKeyLess {
    bool operator()(const WeylKey& a, const WeylKey& b) const {
        int wa = word_length(a), wb = word_length(b);
        if (wa != wb) return wa < wb;
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    }
};

/// Element of the Weyl algebra A_n in normal order: a finite sum of
/// c * q^a d^b terms where d_k q_k = q_k d_k + 1. The normal form is unique,
/// so equality is structural. Filtration weights q and d at one half-unit
/// each; the filtration degree of a term is |a| + |b| half-units.
class WeylElement {
public:
    using TermMap = std::map<WeylKey, GaussianRational, WeylKeyLess>;

    explicit WeylElement(size_t n) : n_(n) {}

    static WeylElement zero(size_t n) { return WeylElement(n); }

    static WeylElement one(size_t n) {
        return monomial(n, Exponents(n, 0), Exponents(n, 0), GaussianRational::one());
    }

    static WeylElement monomial(size_t n, Exponents qa, Exponents db, GaussianRational c) {
        if (qa.size() != n || db.size() != n) throw InputError("Weyl exponent arity mismatch");
        WeylElement u(n);
        u.add_term({std::move(qa), std::move(db)}, std::move(c));
        return u;
    }

    static WeylElement q(size_t n, size_t k) {
        Exponents a(n, 0), b(n, 0);
        a.at(k) = 1;
        return monomial(n, std::move(a), std::move(b), GaussianRational::one());
    }

    static WeylElement d(size_t n, size_t k) {
        Exponents a(n, 0), b(n, 0);
        b.at(k) = 1;
        return monomial(n, std::move(a), std::move(b), GaussianRational::one());
    }

    size_t n() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRational coeff(const WeylKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? GaussianRational::zero() : it->second;
    }

    void add_term(WeylKey k, GaussianRational c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // Max |a|+|b| over terms, in half-units; -1 for zero.
    int filtration_halfdeg() const {
        int deg = -1;
        for (const auto& [k, c] : terms_) deg = std::max(deg, word_length(k));
        return deg;
    }

    bool is_grade_homogeneous() const {
        int deg = -1;
        for (const auto& [k, c] : terms_) {
            int w = word_length(k);
            if (deg >= 0 && w != deg) return false;
            deg = w;
        }
        return true;
    }

    // 0 (even), 1 (odd) when superhomogeneous, -1 when mixed.
    int parity() const {
        int p = -1;
        for (const auto& [k, c] : terms_) {
            int tp = word_length(k) & 1;
            if (p >= 0 && tp != p) return -1;
            p = tp;
        }
        return p < 0 ? 0 : p;
    }

    WeylElement even_part() const { return parity_part(0); }
    WeylElement odd_part() const { return parity_part(1); }

    WeylElement operator-() const {
        WeylElement u(n_);
        for (const auto& [k, c] : terms_) u.terms_.emplace(k, -c);
        return u;
    }

    WeylElement operator+(const WeylElement& o) const {
        check_n(o);
        WeylElement u = *this;
        for (const auto& [k, c] : o.terms_) u.add_term(k, c);
        return u;
    }

    WeylElement operator-(const WeylElement& o) const {
        check_n(o);
        WeylElement u = *this;
        for (const auto& [k, c] : o.terms_) u.add_term(k, -c);
        return u;
    }

    WeylElement& operator+=(const WeylElement& o) { *this = *this + o; return *this; }
    WeylElement& operator-=(const WeylElement& o) { *this = *this - o; return *this; }

    WeylElement operator*(const GaussianRational& c) const {
        WeylElement u(n_);
        if (c.is_zero()) return u;
        for (const auto& [k, v] : terms_) u.terms_.emplace(k, v * c);
        return u;
    }

    // Normal-ordered product. Moving d^b past q^c produces the finite sum
    //   d^b q^c = sum_k k! C(b,k) C(c,k) q^(c-k) d^(b-k)
    // independently in each Darboux pair.
    WeylElement mul(const WeylElement& o) const {
        check_n(o);
        WeylElement out(n_);
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_) mul_term(out, k1, c1, k2, c2);
        return out;
    }

    WeylElement operator*(const WeylElement& o) const { return mul(o); }

    WeylElement pow(unsigned e) const {
        WeylElement acc = one(n_), base = *this;
        for (unsigned k = 0; k < e; ++k) acc = acc.mul(base);
        return acc;
    }

    bool operator==(const WeylElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }

    // Scalar Galois action on the generator span: each term picks up
    // c^(word length).
    WeylElement scale_generators_pow(const GaussianRational& c) const {
        WeylElement u(n_);
        for (const auto& [k, v] : terms_)
            u.add_term(k, v * c.pow(static_cast<unsigned long>(word_length(k))));
        return u;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            std::string mon;
            auto app = [&](const char* sym, const Exponents& e) {
                for (size_t i = 0; i < e.size(); ++i) {
                    if (e[i] == 0) continue;
                    if (!mon.empty()) mon += " ";
                    mon += sym;
                    if (n_ > 1) mon += std::to_string(i + 1);
                    if (e[i] > 1) mon += "^" + std::to_string(e[i]);
                }
            };
            app("q", k.first);
            app("d", k.second);
            if (mon.empty()) s += c.to_string();
            else if (c == GaussianRational::one()) s += mon;
            else s += "(" + c.to_string() + ")*" + mon;
        }
        return s;
    }

private:
    WeylElement parity_part(int p) const {
        WeylElement u(n_);
        for (const auto& [k, c] : terms_)
            if ((word_length(k) & 1) == p) u.terms_.emplace(k, c);
        return u;
    }

    void mul_term(WeylElement& out, const WeylKey& k1, const GaussianRational& c1,
                  const WeylKey& k2, const GaussianRational& c2) const {
        const Exponents& a = k1.first;
        const Exponents& b = k1.second;
        const Exponents& c = k2.first;
        const Exponents& d = k2.second;
        Exponents kk(n_, 0);
        GaussianRational base = c1 * c2;
        // odometer over 0 <= kk <= min(b, c) componentwise
        while (true) {
            Int w = 1;
            for (size_t i = 0; i < n_; ++i)
                if (kk[i]) w *= binomial(b[i], kk[i]) * binomial(c[i], kk[i]) * factorial(kk[i]);
            Exponents qa(n_), db(n_);
            for (size_t i = 0; i < n_; ++i) {
                qa[i] = a[i] + c[i] - kk[i];
                db[i] = b[i] + d[i] - kk[i];
            }
            out.add_term({std::move(qa), std::move(db)}, base * GaussianRational(Rational(w)));
            size_t i = 0;
            while (i < n_) {
                if (kk[i] < std::min(b[i], c[i])) {
                    ++kk[i];
                    break;
                }
                kk[i] = 0;
                ++i;
            }
            if (i == n_) break;
        }
    }

    void check_n(const WeylElement& o) const {
        if (n_ != o.n_) throw InputError("Weyl elements with mismatched number of Darboux pairs");
    }

    size_t n_;
    TermMap terms_;
};

inline WeylElement weyl_mul(const WeylElement& u, const WeylElement& v) { return u.mul(v); }

inline WeylElement weyl_commutator(const WeylElement& u, const WeylElement& v) {
    return u.mul(v) - v.mul(u);
}

// Symbol of order h (half-units): top part q^a d^b -> x^a y^b for |a|+|b| = h,
// zero when the element sits strictly below order h. Symbol variables are
// ordered x_1..x_n, y_1..y_n.
inline MultiPoly weyl_symbol(const WeylElement& u, int h) {
    if (u.is_zero()) return MultiPoly(2 * u.n());
    if (u.filtration_halfdeg() > h)
        throw RangeError("symbol order below the filtration degree of the element");
    MultiPoly p(2 * u.n());
    for (const auto& [k, c] : u.terms()) {
        if (word_length(k) != h) continue;
        Exponents e(2 * u.n());
        for (size_t i = 0; i < u.n(); ++i) {
            e[i] = k.first[i];
            e[u.n() + i] = k.second[i];
        }
        p.add_term(std::move(e), c);
    }
    return p;
}

// Monomial-wise lift x^a y^b -> q^a d^b, a right inverse of the symbol map.
inline WeylElement weyl_symbol_lift(const MultiPoly& f) {
    if (f.nvars() % 2 != 0) throw InputError("symbol lift needs an even number of variables");
    size_t n = f.nvars() / 2;
    WeylElement u(n);
    for (const auto& [e, c] : f.terms()) {
        Exponents qa(e.begin(), e.begin() + static_cast<long>(n));
        Exponents db(e.begin() + static_cast<long>(n), e.end());
        u.add_term({std::move(qa), std::move(db)}, c);
    }
    return u;
}

namespace detail {

// Average over all orderings of a q's and b d's in one Darboux pair,
// re-expressed in normal form. Words from distinct pairs commute, so the
// multi-pair symmetrization factorizes over pairs.
inline WeylElement symmetrize_pair(size_t n, size_t pair, int a, int b) {
    std::vector<int> word(static_cast<size_t>(a), 0);
    word.resize(static_cast<size_t>(a + b), 1);
    WeylElement acc = WeylElement::zero(n);
    Int count = 0;
    do {
        WeylElement w = WeylElement::one(n);
        for (int ch : word) w = w.mul(ch == 0 ? WeylElement::q(n, pair) : WeylElement::d(n, pair));
        acc += w;
        ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    return acc * GaussianRational(Rational(1, count));
}

} // namespace detail

// Weyl (symmetric) quantization of a polynomial in x_1..x_n, y_1..y_n.
inline WeylElement weyl_symmetrize(const MultiPoly& f) {
    if (f.nvars() % 2 != 0) throw InputError("symmetrization needs an even number of variables");
    size_t n = f.nvars() / 2;
    WeylElement out(n);
    for (const auto& [e, c] : f.terms()) {
        WeylElement w = WeylElement::one(n);
        for (size_t i = 0; i < n; ++i) {
            int a = e[i], b = e[n + i];
            if (a + b == 0) continue;
            w = w.mul(detail::symmetrize_pair(n, i, a, b));
        }
        out += w * c;
    }
    return out;
}

// Anti-automorphism determined by q_k -> i q_k, d_k -> i d_k with order
// reversal; beta^4 = 1 and beta^2 is the parity operator.
inline WeylElement weyl_beta(const WeylElement& u) {
    WeylElement out(u.n());
    for (const auto& [k, c] : u.terms()) {
        WeylElement rev = WeylElement::monomial(u.n(), Exponents(u.n(), 0), k.second, GaussianRational::one())
                              .mul(WeylElement::monomial(u.n(), k.first, Exponents(u.n(), 0),
                                                         GaussianRational::one()));
        out += rev * (c * GaussianRational::i_pow(word_length(k)));
    }
    return out;
}

inline WeylElement weyl_galois_act(const GaloisAction& galois, size_t s, const WeylElement& u) {
    return u.scale_generators_pow(galois.scalar(s));
}

} // namespace starq
