#pragma once

#include <string>
#include <vector>

#include "starq/star.hpp"

namespace starq {

// Calibration constant of the closed-form bidifferential oracle below: the
// weight of one application of the Poisson bidifferential. Fixed once by
// requiring the first-order term to equal half the bracket.
inline const Rational kMoyalHalf{1, 2};

/// Concretely presented example: names, Darboux pair count, Lie data, moment
/// map and sign calibrations. Loading one and running the axiom suite at the
/// default cutoff is expected to pass.
struct ExampleSpec {
    std::string name;
    size_t n = 1;
    std::vector<std::string> generators;     // 2n names, x block then y block
    Matrix poisson_pairs;                    // calibrated bracket constants
    std::vector<GaussianRational> galois;    // scalar action, identity first
    std::vector<std::string> lie_basis;
    std::vector<std::vector<std::vector<GaussianRational>>> lie_structure;
    std::vector<MultiPoly> moment_map;       // phi^x, calibrated signs
    GaussianRational beta_unit = GaussianRational::i(); // generator multiplier of beta
};

namespace detail {

// Darboux ring of A_n: generators x_1..x_n, y_1..y_n of degree one half-unit
// with {x_k, y_k} = -1 (the sign that makes the symbol calculus a Poisson
// isomorphism for the normal ordering d q = q d + 1).
inline void fill_darboux(ExampleSpec& spec) {
    size_t n = spec.n;
    spec.generators.clear();
    for (size_t k = 0; k < n; ++k)
        spec.generators.push_back(n == 1 ? "x" : "x" + std::to_string(k + 1));
    for (size_t k = 0; k < n; ++k)
        spec.generators.push_back(n == 1 ? "y" : "y" + std::to_string(k + 1));
    spec.poisson_pairs = Matrix(2 * n, 2 * n);
    for (size_t k = 0; k < n; ++k) {
        spec.poisson_pairs.at(k, n + k) = GaussianRational(-1);
        spec.poisson_pairs.at(n + k, k) = GaussianRational(1);
    }
    spec.galois = {GaussianRational::one(), GaussianRational(-1)};
}

inline GradedPoissonStructure structure_of(const ExampleSpec& spec) {
    GradedPoissonStructure st;
    st.generators = spec.generators;
    st.degrees.assign(2 * spec.n, 1);
    st.poisson_pairs = spec.poisson_pairs;
    st.galois.scalars = spec.galois;
    st.lie = LieAlgebraData::make(spec.lie_basis, spec.lie_structure);
    st.moment_map = spec.moment_map;
    return st;
}

} // namespace detail

// The quadratic polynomials close under the Poisson bracket; for n = 1 the
// classical sl(2) triple (e, f, h) is used, for larger n the quadratic
// monomial basis of sp(2n) itself.
inline ExampleSpec metaplectic_spec(size_t n) {
    if (n < 1) throw InputError("metaplectic example needs n >= 1");
    ExampleSpec spec;
    spec.n = n;
    spec.name = "a" + std::to_string(n);
    detail::fill_darboux(spec);
    GradedPoissonStructure st; // bracket scaffold for computing structure constants
    st.generators = spec.generators;
    st.degrees.assign(2 * n, 1);
    st.poisson_pairs = spec.poisson_pairs;

    if (n == 1) {
        // phi^e = x^2/2, phi^f = -y^2/2, phi^h = x y; [e,f] = h, [h,e] = 2e, [h,f] = -2f
        spec.lie_basis = {"e", "f", "h"};
        MultiPoly phie = MultiPoly::monomial({2, 0}, GaussianRational(Rational(1, 2)));
        MultiPoly phif = MultiPoly::monomial({0, 2}, GaussianRational(Rational(-1, 2)));
        MultiPoly phih = MultiPoly::monomial({1, 1}, GaussianRational::one());
        spec.moment_map = {phie, phif, phih};
        auto z = []() { return std::vector<GaussianRational>(3); };
        std::vector<std::vector<std::vector<GaussianRational>>> s(3, std::vector<std::vector<GaussianRational>>(3, z()));
        s[0][1][2] = GaussianRational(1);  // [e,f] = h
        s[1][0][2] = GaussianRational(-1);
        s[2][0][0] = GaussianRational(2);  // [h,e] = 2e
        s[0][2][0] = GaussianRational(-2);
        s[2][1][1] = GaussianRational(-2); // [h,f] = -2f
        s[1][2][1] = GaussianRational(2);
        spec.lie_structure = std::move(s);
        return spec;
    }

    auto quads = monomial_exponents(2 * n, std::vector<int>(2 * n, 1), 2);
    size_t dim = quads.size();
    std::map<Exponents, size_t, GradedLexLess> index;
    for (size_t i = 0; i < dim; ++i) index[quads[i]] = i;
    for (const auto& e : quads) {
        spec.lie_basis.push_back(MultiPoly::monomial(e, GaussianRational::one()).to_string(spec.generators));
        spec.moment_map.push_back(MultiPoly::monomial(e, GaussianRational::one()));
    }
    spec.lie_structure.assign(
        dim, std::vector<std::vector<GaussianRational>>(dim, std::vector<GaussianRational>(dim)));
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            MultiPoly br = poly_poisson_bracket(spec.moment_map[i], spec.moment_map[j], st);
            for (const auto& [e, c] : br.terms()) spec.lie_structure[i][j][index.at(e)] = c;
        }
    return spec;
}

// Assembles the datum from an example description: psi is the Weyl
// symmetrization of the moment map, beta multiplies generators by the
// calibrated unit with order reversal.
inline QuantizationDatum build_datum(const ExampleSpec& spec) {
    QuantizationDatum d;
    d.name = spec.name;
    d.n = spec.n;
    d.classical = detail::structure_of(spec);
    d.lie = d.classical.lie;
    for (const auto& phi : spec.moment_map) d.psi.push_back(weyl_symmetrize(phi));
    d.galois.scalars = spec.galois;
    if (spec.beta_unit == GaussianRational::i()) {
        d.beta = [](const WeylElement& u) { return weyl_beta(u); };
    } else {
        GaussianRational unit = spec.beta_unit;
        d.beta = [unit](const WeylElement& u) {
            WeylElement out(u.n());
            for (const auto& [k, c] : u.terms()) {
                WeylElement rev =
                    WeylElement::monomial(u.n(), Exponents(u.n(), 0), k.second, GaussianRational::one())
                        .mul(WeylElement::monomial(u.n(), k.first, Exponents(u.n(), 0),
                                                   GaussianRational::one()));
                out += rev * (c * unit.pow(static_cast<unsigned long>(word_length(k))));
            }
            return out;
        };
    }
    d.validate();
    return d;
}

inline QuantizationDatum build_metaplectic(size_t n) { return build_datum(metaplectic_spec(n)); }

inline std::vector<std::string> example_names() {
    return {"a1", "a2", "a1-orbit", "a1-broken-beta", "a1-degenerate-trace", "a1-zero-trace"};
}

inline int default_cutoff_h(const std::string& name) { return name == "a2" ? 4 : 6; }

// Registry of shipped examples, including the seeded failure fixtures that
// exercise the reporting paths.
inline QuantizationDatum build_example(const std::string& name) {
    if (name == "a1") return build_metaplectic(1);
    if (name == "a2") return build_metaplectic(2);
    if (name == "a1-orbit") {
        QuantizationDatum d = restrict_to_invariants(build_metaplectic(1));
        d.name = "a1-orbit";
        return d;
    }
    if (name == "a1-broken-beta") {
        QuantizationDatum d = build_metaplectic(1);
        d.name = name;
        d.beta = [](const WeylElement& u) { return u; }; // seeded failure: identity map
        return d;
    }
    if (name == "a1-degenerate-trace") {
        QuantizationDatum d = build_metaplectic(1);
        d.name = name;
        // constant-term functional: normalized but not invariant, forces a radical
        d.trace_override = [](const WeylElement& u) {
            return u.coeff({Exponents(u.n(), 0), Exponents(u.n(), 0)});
        };
        d.use_trace_override = true;
        return d;
    }
    if (name == "a1-zero-trace") {
        QuantizationDatum d = build_metaplectic(1);
        d.name = name;
        d.trace_override = [](const WeylElement&) { return GaussianRational::zero(); };
        d.use_trace_override = true;
        return d;
    }
    throw InputError("unknown example: " + name);
}

// True when the classical ring is a Darboux ring this oracle understands:
// all generators of degree one half-unit with constant pairs.
inline bool moyal_applicable(const GradedPoissonStructure& st) {
    for (int dgr : st.degrees)
        if (dgr != 1) return false;
    return st.nvars() % 2 == 0;
}

// Abstract star product vs the closed-form oracle on every homogeneous basis
// pair within the cutoff; exact equality of every coefficient.
inline CheckResult check_moyal_agreement(const QuantizationMap& qm, int cutoff_h);

// Closed-form bidifferential expansion: term p is (1/(2^p p!)) B^p with
// B(f (x) g) = sum pairs(i,j) d_i f (x) d_j g. Independent of the abstract
// route through the quantization map; the two must agree on these examples.
inline StarSeries moyal_oracle(const MultiPoly& f, const MultiPoly& g,
                               const GradedPoissonStructure& st, int t_power_cap = -1) {
    if (!moyal_applicable(st)) throw InputError("bidifferential oracle needs a Darboux ring");
    StarSeries out(f.nvars());
    struct Tensor {
        MultiPoly left, right;
        GaussianRational c;
    };
    std::vector<Tensor> terms{{f, g, GaussianRational::one()}};
    Rational weight = 1; // 1/(2^p p!)
    for (int p = 0; t_power_cap < 0 || p <= t_power_cap; ++p) {
        if (terms.empty()) break;
        MultiPoly comp(f.nvars());
        for (const auto& t : terms) comp += (t.left * t.right) * t.c;
        out.add(p, comp * GaussianRational(weight));
        // apply B once
        std::vector<Tensor> next;
        for (const auto& t : terms)
            for (size_t i = 0; i < st.nvars(); ++i) {
                MultiPoly dl = t.left.derivative(i);
                if (dl.is_zero()) continue;
                for (size_t j = 0; j < st.nvars(); ++j) {
                    const GaussianRational& pij = st.poisson_pairs.at(i, j);
                    if (pij.is_zero()) continue;
                    MultiPoly dr = t.right.derivative(j);
                    if (dr.is_zero()) continue;
                    next.push_back({dl, dr, t.c * pij});
                }
            }
        terms = std::move(next);
        weight *= kMoyalHalf / (p + 1);
    }
    return out;
}

inline CheckResult check_moyal_agreement(const QuantizationMap& qm, int cutoff_h) {
    CheckResult c{"moyal-agreement", true, cutoff_h, {},
                  "abstract star product equals the bidifferential oracle"};
    const auto& d = qm.datum;
    if (!moyal_applicable(d.classical)) {
        c.note = "not applicable: classical ring is not a Darboux ring";
        return c;
    }
    for (int j = 0; j <= cutoff_h; ++j)
        for (int k = 0; j + k <= cutoff_h; ++k)
            for (const auto& f : d.r_grade_basis(j))
                for (const auto& g : d.r_grade_basis(k))
                    if (homogenize(f, g, qm) != moyal_oracle(f, g, d.classical))
                        c.fail(detail::poly_pair_witness(d, f, g));
    return c;
}

} // namespace starq
