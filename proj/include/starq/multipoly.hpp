#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "starq/rational.hpp"

namespace starq {

using Exponents = std::vector<int>;

inline int exponent_sum(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Canonical monomial order: by total exponent, then descending lexicographic
// (x-heavy monomials first within a degree block). Equality of polynomials is
// structural equality of term maps in this order.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int ta = exponent_sum(a), tb = exponent_sum(b);
        if (ta != tb) return ta < tb;
        return a > b;
    }
};

/// Multivariate polynomial over Q(i). Zero coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, GaussianRational, GradedLexLess>;

    explicit MultiPoly(size_t nvars) : nvars_(nvars) {}

    static MultiPoly zero(size_t nvars) { return MultiPoly(nvars); }

    static MultiPoly constant(size_t nvars, GaussianRational c) {
        MultiPoly p(nvars);
        p.add_term(Exponents(nvars, 0), std::move(c));
        return p;
    }

    static MultiPoly monomial(Exponents e, GaussianRational c) {
        MultiPoly p(e.size());
        p.add_term(std::move(e), std::move(c));
        return p;
    }

    static MultiPoly generator(size_t nvars, size_t k) {
        if (k >= nvars) throw InputError("generator index out of range");
        Exponents e(nvars, 0);
        e[k] = 1;
        return monomial(std::move(e), GaussianRational::one());
    }

    size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRational::zero() : it->second;
    }

    GaussianRational constant_term() const { return coeff(Exponents(nvars_, 0)); }

    void add_term(Exponents e, GaussianRational c) {
        if (e.size() != nvars_) throw InputError("exponent arity mismatch");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly p(nvars_);
        for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
        return p;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly p = *this;
        for (const auto& [e, c] : o.terms_) p.add_term(e, c);
        return p;
    }

    MultiPoly operator-(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly p = *this;
        for (const auto& [e, c] : o.terms_) p.add_term(e, -c);
        return p;
    }

    MultiPoly& operator+=(const MultiPoly& o) { *this = *this + o; return *this; }
    MultiPoly& operator-=(const MultiPoly& o) { *this = *this - o; return *this; }

    MultiPoly operator*(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly p(nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e = e1;
                for (size_t k = 0; k < nvars_; ++k) e[k] += e2[k];
                p.add_term(std::move(e), c1 * c2);
            }
        return p;
    }

    MultiPoly operator*(const GaussianRational& c) const {
        MultiPoly p(nvars_);
        if (c.is_zero()) return p;
        for (const auto& [e, v] : terms_) p.terms_.emplace(e, v * c);
        return p;
    }

    bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly derivative(size_t k) const {
        if (k >= nvars_) throw InputError("derivative index out of range");
        MultiPoly p(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[k] == 0) continue;
            Exponents d = e;
            d[k] -= 1;
            p.add_term(std::move(d), c * GaussianRational(e[k]));
        }
        return p;
    }

    // Max weighted degree over terms; -1 for the zero polynomial.
    int weighted_degree(const std::vector<int>& weights) const {
        int deg = -1;
        for (const auto& [e, c] : terms_) deg = std::max(deg, weight_of(e, weights));
        return deg;
    }

    bool is_homogeneous(const std::vector<int>& weights) const {
        int deg = -1;
        for (const auto& [e, c] : terms_) {
            int w = weight_of(e, weights);
            if (deg >= 0 && w != deg) return false;
            deg = w;
        }
        return true;
    }

    // Multiply each term by c^(total exponent): scalar action on the
    // generator span extended as an algebra automorphism.
    MultiPoly scale_generators_pow(const GaussianRational& c) const {
        MultiPoly p(nvars_);
        for (const auto& [e, v] : terms_) p.add_term(e, v * c.pow(static_cast<unsigned long>(exponent_sum(e))));
        return p;
    }

    static int weight_of(const Exponents& e, const std::vector<int>& weights) {
        int w = 0;
        for (size_t k = 0; k < e.size(); ++k) w += e[k] * weights[k];
        return w;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            std::string mon;
            for (size_t k = 0; k < nvars_; ++k) {
                if (e[k] == 0) continue;
                if (!mon.empty()) mon += "*";
                mon += (k < names.size() ? names[k] : "g" + std::to_string(k));
                if (e[k] > 1) mon += "^" + std::to_string(e[k]);
            }
            if (mon.empty()) s += c.to_string();
            else if (c == GaussianRational::one()) s += mon;
            else s += "(" + c.to_string() + ")*" + mon;
        }
        return s;
    }

private:
    void check_arity(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw InputError("polynomial arity mismatch");
    }

    size_t nvars_;
    TermMap terms_;
};

inline MultiPoly operator*(const GaussianRational& c, const MultiPoly& p) { return p * c; }

// All exponent vectors of given weighted degree, descending lexicographic.
inline std::vector<Exponents> monomial_exponents(size_t nvars, const std::vector<int>& weights, int degree) {
    std::vector<Exponents> out;
    if (degree < 0) return out;
    Exponents cur(nvars, 0);
    auto rec = [&](auto&& self, size_t k, int rem) -> void {
        if (k == nvars) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        int maxe = weights[k] > 0 ? rem / weights[k] : 0;
        for (int e = maxe; e >= 0; --e) {
            cur[k] = e;
            self(self, k + 1, rem - e * weights[k]);
        }
        cur[k] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

// Decomposition into weighted-homogeneous components (degree -> part).
inline std::map<int, MultiPoly> euler_components(const MultiPoly& f, const std::vector<int>& weights) {
    if (weights.size() != f.nvars()) throw InputError("weights arity mismatch");
    std::map<int, MultiPoly> comps;
    for (const auto& [e, c] : f.terms()) {
        int w = MultiPoly::weight_of(e, weights);
        auto it = comps.find(w);
        if (it == comps.end()) it = comps.emplace(w, MultiPoly::zero(f.nvars())).first;
        it->second.add_term(e, c);
    }
    return comps;
}

} // namespace starq
