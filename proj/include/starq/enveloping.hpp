#pragma once

#include <map>
#include <string>
#include <vector>

#include "starq/datum.hpp"

namespace starq {

/// Element of the universal enveloping algebra in PBW normal form: a finite
/// sum of c * x_1^{a_1} ... x_m^{a_m} monomials over the declared Lie basis
/// order. The normal form is unique; filtration is by total word length.
class UEnvElement {
public:
    using TermMap = std::map<Exponents, GaussianRational, GradedLexLess>;

    explicit UEnvElement(size_t dim) : dim_(dim) {}

    static UEnvElement zero(size_t dim) { return UEnvElement(dim); }

    static UEnvElement one(size_t dim) {
        return monomial(Exponents(dim, 0), GaussianRational::one());
    }

    static UEnvElement monomial(Exponents e, GaussianRational c) {
        UEnvElement u(e.size());
        u.add_term(std::move(e), std::move(c));
        return u;
    }

    static UEnvElement generator(size_t dim, size_t k) {
        Exponents e(dim, 0);
        e.at(k) = 1;
        return monomial(std::move(e), GaussianRational::one());
    }

    size_t dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int word_degree() const {
        int deg = -1;
        for (const auto& [e, c] : terms_) deg = std::max(deg, exponent_sum(e));
        return deg;
    }

    void add_term(Exponents e, GaussianRational c) {
        if (e.size() != dim_) throw InputError("PBW exponent arity mismatch");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    UEnvElement operator-() const {
        UEnvElement u(dim_);
        for (const auto& [e, c] : terms_) u.terms_.emplace(e, -c);
        return u;
    }

    UEnvElement operator+(const UEnvElement& o) const {
        check_dim(o);
        UEnvElement u = *this;
        for (const auto& [e, c] : o.terms_) u.add_term(e, c);
        return u;
    }

    UEnvElement operator-(const UEnvElement& o) const {
        check_dim(o);
        UEnvElement u = *this;
        for (const auto& [e, c] : o.terms_) u.add_term(e, -c);
        return u;
    }

    UEnvElement& operator+=(const UEnvElement& o) { *this = *this + o; return *this; }
    UEnvElement& operator-=(const UEnvElement& o) { *this = *this - o; return *this; }

    UEnvElement operator*(const GaussianRational& c) const {
        UEnvElement u(dim_);
        if (c.is_zero()) return u;
        for (const auto& [e, v] : terms_) u.terms_.emplace(e, v * c);
        return u;
    }

    bool operator==(const UEnvElement& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
    bool operator!=(const UEnvElement& o) const { return !(*this == o); }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            std::string mon;
            for (size_t k = 0; k < dim_; ++k) {
                if (e[k] == 0) continue;
                if (!mon.empty()) mon += " ";
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
    void check_dim(const UEnvElement& o) const {
        if (dim_ != o.dim_) throw InputError("PBW elements over different Lie data");
    }

    size_t dim_;
    TermMap terms_;
};

namespace detail {

inline std::vector<size_t> pbw_word(const Exponents& e) {
    std::vector<size_t> w;
    for (size_t k = 0; k < e.size(); ++k)
        for (int r = 0; r < e[k]; ++r) w.push_back(k);
    return w;
}

inline Exponents word_exponents(const std::vector<size_t>& w, size_t dim) {
    Exponents e(dim, 0);
    for (size_t k : w) e[k] += 1;
    return e;
}

// PBW straightening: rewrite an arbitrary word into normal form using
// x_i x_j = x_j x_i + [x_i, x_j] on the first descent.
inline UEnvElement straighten(const std::vector<size_t>& w, const LieAlgebraData& lie) {
    for (size_t p = 0; p + 1 < w.size(); ++p) {
        if (w[p] <= w[p + 1]) continue;
        std::vector<size_t> swapped = w;
        std::swap(swapped[p], swapped[p + 1]);
        UEnvElement acc = straighten(swapped, lie);
        const auto& br = lie.bracket(w[p], w[p + 1]);
        for (size_t k = 0; k < lie.dim(); ++k) {
            if (br[k].is_zero()) continue;
            std::vector<size_t> contracted;
            contracted.reserve(w.size() - 1);
            for (size_t q = 0; q < w.size(); ++q) {
                if (q == p) contracted.push_back(k);
                else if (q != p + 1) contracted.push_back(w[q]);
            }
            acc += straighten(contracted, lie) * br[k];
        }
        return acc;
    }
    return UEnvElement::monomial(word_exponents(w, lie.dim()), GaussianRational::one());
}

} // namespace detail

inline UEnvElement pbw_mul(const UEnvElement& u, const UEnvElement& v, const LieAlgebraData& lie) {
    if (u.dim() != lie.dim() || v.dim() != lie.dim())
        throw InputError("PBW product over mismatched Lie data");
    UEnvElement out(lie.dim());
    for (const auto& [eu, cu] : u.terms())
        for (const auto& [ev, cv] : v.terms()) {
            std::vector<size_t> w = detail::pbw_word(eu);
            for (size_t k : detail::pbw_word(ev)) w.push_back(k);
            out += detail::straighten(w, lie) * (cu * cv);
        }
    return out;
}

// The principal anti-automorphism: x -> -x on the Lie algebra, words reversed.
inline UEnvElement tau(const UEnvElement& u, const LieAlgebraData& lie) {
    UEnvElement out(lie.dim());
    for (const auto& [e, c] : u.terms()) {
        std::vector<size_t> w = detail::pbw_word(e);
        std::reverse(w.begin(), w.end());
        GaussianRational sign = (w.size() % 2 == 0) ? GaussianRational(1) : GaussianRational(-1);
        out += detail::straighten(w, lie) * (c * sign);
    }
    return out;
}

// Extends psi to the algebra homomorphism U(g) -> D: a PBW monomial maps to
// the ordered product of the psi images.
inline WeylElement psi_extend(const UEnvElement& u, const QuantizationDatum& d) {
    if (u.dim() != d.lie.dim()) throw InputError("element over different Lie data than the datum");
    WeylElement out(d.n);
    for (const auto& [e, c] : u.terms()) {
        WeylElement w = WeylElement::one(d.n);
        for (size_t k = 0; k < u.dim(); ++k)
            for (int r = 0; r < e[k]; ++r) w = w.mul(d.psi[k]);
        out += w * c;
    }
    return out;
}

// psi(tau(u)) = beta(psi(u)) on all PBW words up to the word-length cutoff.
inline CheckResult check_tau_beta_square(const QuantizationDatum& d, int max_word_len) {
    CheckResult c{"tau-beta-square", true, 2 * max_word_len, {},
                  "the principal anti-automorphism intertwines with beta through psi"};
    size_t dim = d.lie.dim();
    for (int len = 0; len <= max_word_len; ++len) {
        for (const auto& e : monomial_exponents(dim, std::vector<int>(dim, 1), len)) {
            UEnvElement u = UEnvElement::monomial(e, GaussianRational::one());
            if (psi_extend(tau(u, d.lie), d) != d.beta(psi_extend(u, d)))
                c.fail("word " + u.to_string(d.lie.basis));
        }
    }
    return c;
}

/// Exact kernel of U(g) -> D per word-length degree, with the surjectivity
/// table onto the S-invariants.
struct KernelRow {
    int degree_h = 0; // 2j half-units for word length j
    size_t dim_u = 0;
    size_t dim_image = 0;
    size_t dim_kernel = 0;
    std::vector<UEnvElement> kernel_basis;
    size_t dim_target = 0; // dim (D^S)_j within the kept basis
    bool surjective = false;
};

inline std::vector<KernelRow> kernel_J(const QuantizationDatum& d, int max_word_len) {
    std::vector<KernelRow> rows;
    size_t dim = d.lie.dim();
    for (int j = 0; j <= max_word_len; ++j) {
        // PBW monomials of word length <= j, canonical order
        std::vector<Exponents> basis;
        for (int len = 0; len <= j; ++len)
            for (auto& e : monomial_exponents(dim, std::vector<int>(dim, 1), len))
                basis.push_back(std::move(e));
        std::vector<WeylElement> images;
        images.reserve(basis.size());
        for (const auto& e : basis)
            images.push_back(psi_extend(UEnvElement::monomial(e, GaussianRational::one()), d));
        // coordinates over the invariant monomial basis of D_{2j}
        std::map<WeylKey, size_t, WeylKeyLess> keyidx;
        for (const auto& k : d.d_filtered_keys(2 * j)) keyidx.emplace(k, keyidx.size());
        // the even part of D within the kept basis
        size_t target = 0;
        for (const auto& [k, idx] : keyidx)
            if (word_length(k) % 2 == 0) ++target;
        Matrix m(keyidx.size(), basis.size());
        for (size_t col = 0; col < images.size(); ++col)
            for (const auto& [k, coef] : images[col].terms()) {
                auto it = keyidx.find(k);
                if (it == keyidx.end())
                    throw DatumError("psi image leaves the S-invariant filtered basis");
                m.at(it->second, col) = coef;
            }
        KernelRow row;
        row.degree_h = 2 * j;
        row.dim_u = basis.size();
        row.dim_image = rank(m);
        row.dim_kernel = row.dim_u - row.dim_image;
        row.dim_target = target;
        row.surjective = (row.dim_image == target);
        for (const auto& v : nullspace_basis(m)) {
            UEnvElement k(dim);
            for (size_t col = 0; col < basis.size(); ++col)
                if (!v[col].is_zero()) k.add_term(basis[col], v[col]);
            row.kernel_basis.push_back(std::move(k));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// The Casimir element built from the Killing-dual basis. Any rescaling of
// the Killing form rescales it inversely; the normalization used is recorded
// alongside the scalar.
inline UEnvElement casimir_element(const LieAlgebraData& lie) {
    auto kinv = inverse(lie.killing);
    if (!kinv) throw InputError("Killing form degenerate; Casimir element undefined");
    UEnvElement omega(lie.dim());
    for (size_t i = 0; i < lie.dim(); ++i)
        for (size_t j = 0; j < lie.dim(); ++j) {
            if (kinv->at(i, j).is_zero()) continue;
            omega += pbw_mul(UEnvElement::generator(lie.dim(), i),
                             UEnvElement::generator(lie.dim(), j), lie) *
                     kinv->at(i, j);
        }
    return omega;
}

struct CasimirResult {
    GaussianRational scalar;
    std::string normalization = "Killing form = trace form of the adjoint representation";
};

// psi(Omega) must be a scalar multiple of 1; returns that scalar.
inline CasimirResult casimir_scalar(const QuantizationDatum& d) {
    UEnvElement omega = casimir_element(d.lie);
    WeylElement w = psi_extend(omega, d);
    WeylKey unit{Exponents(d.n, 0), Exponents(d.n, 0)};
    GaussianRational scalar = w.coeff(unit);
    if (w != WeylElement::one(d.n) * scalar)
        throw DatumError("psi(Casimir) is not scalar: datum inconsistent");
    return CasimirResult{scalar};
}

/// Kernel-ideal suite: the tau/beta square, the degreewise kernel with its
/// ideal properties (two-sidedness, monotone dimensions, rank-nullity), and
/// the Casimir scalar.
inline Report enveloping_report(const QuantizationDatum& d, int max_word_len) {
    Report rep;
    rep.title = d.name + " enveloping algebra";
    rep.checks.push_back(check_tau_beta_square(d, max_word_len));
    {
        CheckResult c{"kernel-ideal", true, 2 * max_word_len, {},
                      "kernel of U(g) -> D per degree: membership, two-sidedness, dimensions"};
        auto rows = kernel_J(d, max_word_len);
        for (size_t j = 0; j < rows.size(); ++j) {
            const auto& row = rows[j];
            if (row.dim_image + row.dim_kernel != row.dim_u)
                c.fail("rank-nullity violated at degree " + std::to_string(row.degree_h));
            if (j > 0 && rows[j - 1].dim_kernel > row.dim_kernel)
                c.fail("kernel dimensions not monotone at degree " + std::to_string(row.degree_h));
            for (const auto& k : row.kernel_basis) {
                if (!psi_extend(k, d).is_zero())
                    c.fail("kernel vector not in the kernel at degree " + std::to_string(row.degree_h));
                if (static_cast<int>(j) < max_word_len)
                    for (size_t g = 0; g < d.lie.dim(); ++g) {
                        UEnvElement gen = UEnvElement::generator(d.lie.dim(), g);
                        if (!psi_extend(pbw_mul(gen, k, d.lie), d).is_zero() ||
                            !psi_extend(pbw_mul(k, gen, d.lie), d).is_zero())
                            c.fail("kernel not a two-sided ideal at degree " +
                                   std::to_string(row.degree_h));
                    }
            }
        }
        rep.checks.push_back(std::move(c));
    }
    {
        CheckResult c{"casimir", true, 4, {}, ""};
        try {
            CasimirResult r = casimir_scalar(d);
            c.note = "psi(Casimir) = " + r.scalar.to_string() + " (" + r.normalization + ")";
        } catch (const DatumError& e) {
            c.fail(e.what());
        } catch (const InputError& e) {
            c.fail(e.what());
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

} // namespace starq
