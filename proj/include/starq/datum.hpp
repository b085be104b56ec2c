#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "starq/matrix.hpp"
#include "starq/poisson.hpp"
#include "starq/report.hpp"
#include "starq/weyl.hpp"

namespace starq {

/// A filtered quantization datum over a Weyl-algebra carrier: the classical
/// graded Poisson ring R, the Lie embedding psi, the Galois action, the
/// anti-automorphism beta, and the canonical graded monomial bases. The
/// derived trace, pairing, orthogonal decomposition and quantization map are
/// computed from it, never supplied.
///
/// All values are immutable after construction; every operation below is a
/// pure function and safe to run concurrently on the same datum.
struct QuantizationDatum {
    std::string name;
    size_t n = 1; // Darboux pairs of the carrier A_n
    LieAlgebraData lie;
    GradedPoissonStructure classical;
    std::vector<WeylElement> psi; // per Lie basis element, filtration degree <= 2 half-units
    GaloisAction galois = GaloisAction::trivial();
    std::function<WeylElement(const WeylElement&)> beta;

    // When set, bases are restricted to the monomials invariant under this
    // parent action (used by restrict_to_invariants).
    std::optional<GaloisAction> invariance_filter;

    // Optional user-supplied trace functional. By default it is used for
    // cross-checking only; the seeded degenerate fixtures set
    // use_trace_override to drive the pairing off it.
    std::function<GaussianRational(const WeylElement&)> trace_override;
    bool use_trace_override = false;

    bool keeps_word(int word_len) const {
        if (!invariance_filter) return true;
        for (const auto& c : invariance_filter->scalars)
            if (c.pow(static_cast<unsigned long>(word_len)) != GaussianRational::one()) return false;
        return true;
    }

    std::vector<WeylKey> d_grade_keys(int h) const {
        std::vector<WeylKey> keys;
        if (h < 0 || !keeps_word(h)) return keys;
        for (const auto& e : monomial_exponents(2 * n, std::vector<int>(2 * n, 1), h)) {
            Exponents qa(e.begin(), e.begin() + static_cast<long>(n));
            Exponents db(e.begin() + static_cast<long>(n), e.end());
            keys.emplace_back(std::move(qa), std::move(db));
        }
        return keys;
    }

    std::vector<WeylKey> d_filtered_keys(int h) const {
        std::vector<WeylKey> keys;
        for (int g = 0; g <= h; ++g)
            for (auto& k : d_grade_keys(g)) keys.push_back(std::move(k));
        return keys;
    }

    WeylElement monomial_elem(const WeylKey& k) const {
        return WeylElement::monomial(n, k.first, k.second, GaussianRational::one());
    }

    std::vector<WeylElement> d_grade_basis(int h) const {
        std::vector<WeylElement> out;
        for (const auto& k : d_grade_keys(h)) out.push_back(monomial_elem(k));
        return out;
    }

    std::vector<WeylElement> d_filtered_basis(int h) const {
        std::vector<WeylElement> out;
        for (const auto& k : d_filtered_keys(h)) out.push_back(monomial_elem(k));
        return out;
    }

    // Monomial basis of R[h] (weighted degree h), restricted to invariants
    // when a filter is installed.
    std::vector<MultiPoly> r_grade_basis(int h) const {
        std::vector<MultiPoly> out;
        if (h < 0) return out;
        for (const auto& e : monomial_exponents(classical.nvars(), classical.degrees, h))
            if (keeps_word(exponent_sum(e)))
                out.push_back(MultiPoly::monomial(e, GaussianRational::one()));
        return out;
    }

    MultiPoly symbol(const WeylElement& u, int h) const { return weyl_symbol(u, h); }
    WeylElement lift(const MultiPoly& f) const { return weyl_symbol_lift(f); }

    WeylElement galois_act_d(size_t s, const WeylElement& u) const {
        return weyl_galois_act(galois, s, u);
    }

    MultiPoly galois_act_r(size_t s, const MultiPoly& f) const {
        return galois_act(s, f, classical);
    }

    WeylElement psi_of(const std::vector<GaussianRational>& x) const {
        WeylElement out(n);
        for (size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) out += psi[i] * x[i];
        return out;
    }

    void validate() const {
        classical.validate();
        galois.validate();
        lie.validate();
        if (classical.nvars() != 2 * n) throw InputError("classical ring must have 2n generators");
        if (psi.size() != lie.dim()) throw InputError("psi must map every Lie basis element");
        for (const auto& u : psi)
            if (u.filtration_halfdeg() > 2) throw InputError("psi must land in filtration degree one");
        if (!beta) throw InputError("datum needs an anti-automorphism beta");
        if (invariance_filter) invariance_filter->validate();
    }
};

/// The unique G-invariant functional with T(1) = 1, tabulated on the
/// canonical graded monomial basis up to the cutoff.
struct TraceFunctional {
    std::map<WeylKey, GaussianRational, WeylKeyLess> values;
    int cutoff_h = -1;

    GaussianRational value(const WeylKey& k) const {
        auto it = values.find(k);
        if (it == values.end())
            throw RangeError("trace evaluated beyond its cutoff (or outside the kept basis)");
        return it->second;
    }

    GaussianRational operator()(const WeylElement& u) const {
        GaussianRational acc;
        for (const auto& [k, c] : u.terms()) acc += c * value(k);
        return acc;
    }
};

// Computes T grade by grade from the invariance constraints
// T(psi^x a - a psi^x) = 0 and the normalization T(1) = 1. At each grade the
// linear system must pin the new values uniquely: a solvable-but-ambiguous
// system means the invariants exceed the scalars, an unsolvable one means
// span{1} meets the image of the adjoint action. Both are datum failures.
inline TraceFunctional compute_trace(const QuantizationDatum& d, int cutoff_h) {
    TraceFunctional t;
    t.cutoff_h = cutoff_h;
    if (d.use_trace_override) {
        if (!d.trace_override) throw InputError("use_trace_override set without an override");
        for (int h = 0; h <= cutoff_h; ++h)
            for (const auto& k : d.d_grade_keys(h)) t.values[k] = d.trace_override(d.monomial_elem(k));
        return t;
    }
    for (int h = 0; h <= cutoff_h; ++h) {
        auto keys = d.d_grade_keys(h);
        if (h == 0) {
            if (keys.size() != 1) throw DatumError("degree-zero component must be the scalars");
            t.values[keys[0]] = GaussianRational::one();
            continue;
        }
        if (keys.empty()) continue;
        std::map<WeylKey, size_t, WeylKeyLess> index;
        for (size_t i = 0; i < keys.size(); ++i) index[keys[i]] = i;

        RowReducer rr(keys.size());
        std::vector<std::pair<std::vector<GaussianRational>, GaussianRational>> deferred;
        for (size_t x = 0; x < d.lie.dim(); ++x) {
            for (const auto& m : keys) {
                WeylElement c = weyl_commutator(d.psi[x], d.monomial_elem(m));
                std::vector<GaussianRational> row(keys.size());
                GaussianRational rhs;
                for (const auto& [k, coef] : c.terms()) {
                    int w = word_length(k);
                    if (w == h) {
                        auto it = index.find(k);
                        if (it == index.end())
                            throw DatumError("adjoint action leaves the kept basis at degree " +
                                             std::to_string(h));
                        row[it->second] += coef;
                    } else {
                        rhs -= coef * t.value(k);
                    }
                }
                if (!rr.complete()) {
                    if (rr.add_row(std::move(row), rhs) == RowReducer::Add::Conflict)
                        throw DatumError(
                            "no invariant trace at degree " + std::to_string(h) +
                            ": the scalars meet the adjoint image (complete-reducibility failure)");
                } else {
                    deferred.emplace_back(std::move(row), rhs);
                }
            }
        }
        if (!rr.complete())
            throw DatumError("trace not unique at degree " + std::to_string(h) +
                             ": invariants exceed the scalars");
        auto sol = rr.solution();
        for (const auto& [row, rhs] : deferred)
            if (!RowReducer::consistent(row, rhs, sol))
                throw DatumError("no invariant trace at degree " + std::to_string(h) +
                                 ": the scalars meet the adjoint image (complete-reducibility failure)");
        for (size_t i = 0; i < keys.size(); ++i) t.values[keys[i]] = sol[i];
    }
    return t;
}

// P(a, b) = T(ab), the bilinear pairing of axiom (VII).
inline GaussianRational pairing(const QuantizationDatum& d, const TraceFunctional& t,
                                const WeylElement& a, const WeylElement& b) {
    (void)d;
    return t(a.mul(b));
}

/// Graded basis of D^j per half-degree: the projections of the canonical
/// monomial lifts, P-orthogonal to everything of lower filtration.
struct OrthoDecomposition {
    std::vector<std::vector<WeylElement>> components; // index = half-degree
    int cutoff_h = -1;
};

inline OrthoDecomposition ortho_decompose(const QuantizationDatum& d, const TraceFunctional& t,
                                          int cutoff_h) {
    if (t.cutoff_h < 2 * cutoff_h - 1)
        throw RangeError("trace cutoff too small for the requested decomposition");
    OrthoDecomposition dec;
    dec.cutoff_h = cutoff_h;
    dec.components.resize(static_cast<size_t>(cutoff_h) + 1);

    std::vector<WeylElement> filt; // canonical basis of D_{h-1}, grown level by level
    for (int h = 0; h <= cutoff_h; ++h) {
        auto rmons = d.r_grade_basis(h);
        if (h == 0) {
            dec.components[0].push_back(WeylElement::one(d.n));
            filt.push_back(WeylElement::one(d.n));
            continue;
        }
        std::optional<Matrix> ginv;
        if (!rmons.empty() && !filt.empty()) {
            Matrix gram(filt.size(), filt.size());
            for (size_t i = 0; i < filt.size(); ++i)
                for (size_t j = 0; j < filt.size(); ++j) gram.at(i, j) = t(filt[i].mul(filt[j]));
            ginv = inverse(gram);
            if (!ginv) {
                std::string radical;
                for (const auto& v : nullspace_basis(gram)) {
                    WeylElement r(d.n);
                    for (size_t j = 0; j < filt.size(); ++j) r += filt[j] * v[j];
                    radical += (radical.empty() ? "" : "; ") + r.to_string();
                }
                throw DatumError("pairing degenerate on filtration degree " + std::to_string(h - 1) +
                                 "; radical: " + radical);
            }
        }
        for (const auto& m : rmons) {
            WeylElement u = d.lift(m);
            if (ginv) {
                std::vector<GaussianRational> rhs(filt.size());
                for (size_t i = 0; i < filt.size(); ++i) rhs[i] = t(filt[i].mul(u));
                auto coefs = ginv->apply(rhs);
                for (size_t j = 0; j < filt.size(); ++j) u -= filt[j] * coefs[j];
                for (size_t i = 0; i < filt.size(); ++i) {
                    if (!t(filt[i].mul(u)).is_zero() || !t(u.mul(filt[i])).is_zero())
                        throw DatumError("projected lift not two-sided orthogonal at degree " +
                                         std::to_string(h) + " (supertrace symmetry broken)");
                }
            }
            dec.components[static_cast<size_t>(h)].push_back(u);
        }
        for (const auto& k : d.d_grade_keys(h)) filt.push_back(d.monomial_elem(k));
    }
    return dec;
}

/// The quantization map q: the unique degree-preserving section of the symbol
/// map with image the P-orthogonal components. q(phi) for homogeneous phi of
/// degree j is the unique element of D^j with order-j symbol phi.
struct QuantizationMap {
    QuantizationDatum datum;
    OrthoDecomposition decomp;

    int cutoff_h() const { return decomp.cutoff_h; }

    WeylElement q(const MultiPoly& f) const {
        WeylElement out(datum.n);
        for (const auto& [h, comp] : euler_components(f, datum.classical)) {
            if (h > decomp.cutoff_h)
                throw RangeError("quantization map evaluated beyond its cutoff");
            auto rmons = datum.r_grade_basis(h);
            std::map<Exponents, size_t, GradedLexLess> index;
            for (size_t i = 0; i < rmons.size(); ++i) index[rmons[i].terms().begin()->first] = i;
            for (const auto& [e, c] : comp.terms()) {
                auto it = index.find(e);
                if (it == index.end())
                    throw InputError("polynomial outside the kept graded basis (non-invariant input?)");
                out += decomp.components[static_cast<size_t>(h)][it->second] * c;
            }
        }
        return out;
    }

    // Decomposes an element into its D^j components and applies the symbol
    // per component; q(q_inverse(a)) = a.
    std::map<int, MultiPoly> q_inverse(const WeylElement& a) const {
        std::map<int, MultiPoly> comps;
        WeylElement rem = a;
        while (!rem.is_zero()) {
            int h = rem.filtration_halfdeg();
            if (h > decomp.cutoff_h)
                throw RangeError("quantization map inverse evaluated beyond its cutoff");
            MultiPoly top = weyl_symbol(rem, h);
            rem -= q(top);
            if (rem.filtration_halfdeg() >= h)
                throw DatumError("symbol subtraction did not lower the filtration degree");
            auto it = comps.find(h);
            if (it == comps.end()) comps.emplace(h, top);
            else it->second += top;
        }
        return comps;
    }
};

inline QuantizationMap build_q(const QuantizationDatum& d, const OrthoDecomposition& dec) {
    return QuantizationMap{d, dec};
}

// Convenience: trace + decomposition + quantization map in one step.
inline QuantizationMap build_qmap(const QuantizationDatum& d, int cutoff_h) {
    TraceFunctional t = compute_trace(d, std::max(0, 2 * cutoff_h - 1));
    return build_q(d, ortho_decompose(d, t, cutoff_h));
}

// Galois symmetrization: the averaged product of the S-translates of a over
// all orderings of the group listing. The result is S-invariant and its top
// symbol is the product of the translated top symbols.
inline WeylElement galois_symmetrize(const QuantizationDatum& d, const WeylElement& a) {
    if (a.is_zero()) throw InputError("galois_symmetrize of zero");
    size_t m = d.galois.size();
    std::vector<WeylElement> translates;
    translates.reserve(m);
    for (size_t s = 0; s < m; ++s) translates.push_back(d.galois_act_d(s, a));
    std::vector<size_t> perm(m);
    for (size_t i = 0; i < m; ++i) perm[i] = i;
    WeylElement acc(d.n);
    do {
        WeylElement w = WeylElement::one(d.n);
        for (size_t i : perm) w = w.mul(translates[i]);
        acc += w;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc * GaussianRational(Rational(1, factorial(static_cast<long>(m))));
}

/// Per-degree Gram-rank certificate: nondegeneracy of P on a beta^2-stable
/// subalgebra is the machine-checkable simplicity criterion, truncated to the
/// cutoff.
struct SimplicityRow {
    int h = 0;
    size_t dim = 0;
    size_t rank = 0;
    std::vector<WeylElement> radical;
};

struct SimplicityVerdict {
    bool nondegenerate = true;
    int cutoff_h = 0;
    std::vector<SimplicityRow> rows;
    std::string note;
};

inline SimplicityVerdict simplicity_check(
    const QuantizationDatum& d,
    const std::function<std::vector<WeylElement>(int)>& subalgebra_filtered_basis, int cutoff_h) {
    TraceFunctional t =
        compute_trace(d, 2 * cutoff_h); // pairing needs products of two degree-h elements
    SimplicityVerdict v;
    v.cutoff_h = cutoff_h;
    v.note = "full Gram rank per filtration degree certifies simplicity to the cutoff";
    for (int h = 0; h <= cutoff_h; ++h) {
        auto basis = subalgebra_filtered_basis(h);
        if (basis.empty()) continue;
        // the subspace must be beta^2-stable for orthogonality to be two-sided
        {
            std::vector<WeylElement> both = basis;
            for (const auto& u : basis) both.push_back(d.beta(d.beta(u)));
            std::map<WeylKey, size_t, WeylKeyLess> keyidx;
            for (const auto& u : both)
                for (const auto& [k, c] : u.terms()) keyidx.emplace(k, keyidx.size());
            auto coord_rows = [&](const std::vector<WeylElement>& elems) {
                Matrix m(elems.size(), keyidx.size());
                for (size_t i = 0; i < elems.size(); ++i)
                    for (const auto& [k, c] : elems[i].terms()) m.at(i, keyidx.at(k)) = c;
                return m;
            };
            if (rank(coord_rows(both)) != rank(coord_rows(basis)))
                throw InputError("subalgebra basis not closed under beta^2");
        }
        Matrix gram(basis.size(), basis.size());
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) gram.at(i, j) = t(basis[i].mul(basis[j]));
        SimplicityRow row;
        row.h = h;
        row.dim = basis.size();
        row.rank = rank(gram);
        if (row.rank != row.dim) {
            v.nondegenerate = false;
            for (const auto& vec : nullspace_basis(gram)) {
                WeylElement r(d.n);
                for (size_t j = 0; j < basis.size(); ++j) r += basis[j] * vec[j];
                row.radical.push_back(r);
            }
        }
        v.rows.push_back(std::move(row));
    }
    return v;
}

// Datum over the S-invariant subalgebra: trivial Galois group, bases cut to
// the invariant monomials. Passes the axiom suite whenever the parent does.
inline QuantizationDatum restrict_to_invariants(const QuantizationDatum& d) {
    QuantizationDatum r = d;
    r.name = d.name + "-invariants";
    r.invariance_filter = d.galois; // parent action selects the kept monomials
    r.galois = GaloisAction::trivial();
    r.classical.galois = GaloisAction::trivial();
    return r;
}

// Random nonzero elements must symmetrize to nonzero S-invariants whose top
// symbol is the product of the translated top symbols. Deterministic seed,
// so reports are byte-identical across runs.
inline CheckResult check_galois_symmetrize(const QuantizationDatum& d, int samples, int max_h,
                                           unsigned long long seed) {
    CheckResult c{"galois-symmetrize", true, max_h * static_cast<int>(d.galois.size()),
                  {}, "Galois symmetrization of random elements"};
    std::mt19937_64 rng(seed);
    auto keys = d.d_filtered_keys(max_h);
    std::uniform_int_distribution<size_t> pick_key(0, keys.size() - 1);
    std::uniform_int_distribution<int> pick_coef(-3, 3);
    std::uniform_int_distribution<int> pick_terms(1, 3);
    for (int trial = 0; trial < samples; ++trial) {
        WeylElement a(d.n);
        while (a.is_zero()) {
            int nterms = pick_terms(rng);
            for (int k = 0; k < nterms; ++k) {
                int re = pick_coef(rng), im = pick_coef(rng);
                a.add_term(keys[pick_key(rng)], GaussianRational(Rational(re), Rational(im)));
            }
        }
        int j = a.filtration_halfdeg();
        WeylElement b = galois_symmetrize(d, a);
        MultiPoly expected = MultiPoly::constant(2 * d.n, GaussianRational::one());
        for (size_t s = 0; s < d.galois.size(); ++s)
            expected = expected * d.galois_act_r(s, weyl_symbol(a, j));
        if (b.is_zero()) {
            c.fail("symmetrization of " + a.to_string() + " vanished");
            continue;
        }
        for (size_t s = 0; s < d.galois.size(); ++s)
            if (d.galois_act_d(s, b) != b) c.fail("result not S-invariant for " + a.to_string());
        if (weyl_symbol(b, j * static_cast<int>(d.galois.size())) != expected)
            c.fail("top symbol mismatch for " + a.to_string());
    }
    return c;
}

/// Simplicity certificates for D and its S-invariants, plus the Galois
/// symmetrization sample.
inline Report simplicity_report(const QuantizationDatum& d, int cutoff_h) {
    Report rep;
    rep.title = d.name + " simplicity";
    auto add_gram = [&](const std::string& id, const QuantizationDatum& basis_src) {
        CheckResult c{id, true, cutoff_h, {}, "Gram nondegeneracy per filtration degree"};
        try {
            SimplicityVerdict v = simplicity_check(
                d, [&](int h) { return basis_src.d_filtered_basis(h); }, cutoff_h);
            if (!v.nondegenerate) {
                for (const auto& row : v.rows)
                    if (row.rank != row.dim) {
                        std::string w = "degree " + std::to_string(row.h) + ": rank " +
                                        std::to_string(row.rank) + " of " + std::to_string(row.dim);
                        for (const auto& r : row.radical) w += "; radical " + r.to_string();
                        c.fail(w);
                    }
            }
        } catch (const DatumError& e) {
            c.fail(e.what());
        } catch (const InputError& e) {
            c.fail(e.what());
        }
        rep.checks.push_back(std::move(c));
    };
    add_gram("simplicity-D", d);
    add_gram("simplicity-DS", restrict_to_invariants(d));
    rep.checks.push_back(check_galois_symmetrize(d, 10, 4, 0x5374617251ULL));
    return rep;
}

namespace detail {

inline std::string pair_witness(const WeylElement& a, const WeylElement& b) {
    return "(" + a.to_string() + ", " + b.to_string() + ")";
}

} // namespace detail

// The seven-axiom machine check. Every verification is exact linear algebra
// over Q(i) on the canonical bases up to the cutoff; failures carry witnesses.
inline Report verify_axioms(const QuantizationDatum& d, int cutoff_h,
                            const TraceFunctional* shared_trace = nullptr) {
    Report rep;
    rep.title = d.name;
    const int tc = 2 * cutoff_h;

    std::vector<WeylKey> keys = d.d_filtered_keys(cutoff_h);
    std::vector<WeylElement> basis;
    basis.reserve(keys.size());
    for (const auto& k : keys) basis.push_back(d.monomial_elem(k));

    // (I) increasing algebra filtration, commutators drop one full unit
    {
        CheckResult c{"I", true, cutoff_h, {}, "filtration and commutator degree drop"};
        for (const auto& u : basis) {
            for (const auto& v : basis) {
                int du = u.filtration_halfdeg(), dv = v.filtration_halfdeg();
                WeylElement p = u.mul(v);
                if (!p.is_zero() && p.filtration_halfdeg() > du + dv)
                    c.fail(detail::pair_witness(u, v));
                WeylElement com = p - v.mul(u);
                if (!com.is_zero() && com.filtration_halfdeg() > du + dv - 2)
                    c.fail(detail::pair_witness(u, v));
                // closure of the kept basis (subalgebra discipline under restriction)
                for (const auto& [k, coef] : p.terms())
                    if (!d.keeps_word(word_length(k)))
                        c.fail("product leaves the kept basis: " + detail::pair_witness(u, v));
            }
        }
        rep.checks.push_back(std::move(c));
    }

    // (II) Galois representation by filtered algebra automorphisms
    {
        CheckResult c{"II", true, cutoff_h, {}, "Galois action"};
        try {
            d.galois.validate();
        } catch (const InputError& e) {
            c.fail(e.what());
        }
        for (size_t s = 0; s < d.galois.size(); ++s) {
            for (const auto& u : basis) {
                if (d.galois_act_d(s, u).filtration_halfdeg() != u.filtration_halfdeg())
                    c.fail("degree not preserved by group element " + std::to_string(s));
            }
            for (const auto& u : basis) {
                for (const auto& v : basis) {
                    if (d.galois_act_d(s, u.mul(v)) != d.galois_act_d(s, u).mul(d.galois_act_d(s, v))) {
                        c.fail("not an algebra automorphism: s=" + std::to_string(s) + " on " +
                               detail::pair_witness(u, v));
                    }
                }
            }
        }
        // classical side: the bracket and the grading are S-invariant
        for (size_t s = 0; s < d.classical.galois.size(); ++s) {
            const auto& sc = d.classical.galois.scalar(s);
            for (size_t i = 0; i < d.classical.nvars(); ++i)
                for (size_t j = 0; j < d.classical.nvars(); ++j)
                    if (!d.classical.poisson_pairs.at(i, j).is_zero() &&
                        sc * sc != GaussianRational::one())
                        c.fail("classical action not symplectic for group element " + std::to_string(s));
        }
        rep.checks.push_back(std::move(c));
    }

    // (III) Lie algebra embedding into the S-invariants of filtration degree one
    {
        CheckResult c{"III", true, cutoff_h, {},
                      "Lie embedding; exponentiability certified infinitesimally (local finiteness "
                      "is automatic at a finite cutoff)"};
        for (size_t i = 0; i < d.lie.dim(); ++i) {
            if (d.psi[i].filtration_halfdeg() > 2) c.fail("psi(" + d.lie.basis[i] + ") above degree one");
            for (size_t s = 0; s < d.galois.size(); ++s)
                if (d.galois_act_d(s, d.psi[i]) != d.psi[i])
                    c.fail("psi(" + d.lie.basis[i] + ") not S-invariant");
        }
        for (size_t i = 0; i < d.lie.dim(); ++i)
            for (size_t j = 0; j < d.lie.dim(); ++j) {
                WeylElement lhs = weyl_commutator(d.psi[i], d.psi[j]);
                WeylElement rhs = d.psi_of(d.lie.bracket(i, j));
                if (lhs != rhs)
                    c.fail("[psi(" + d.lie.basis[i] + "), psi(" + d.lie.basis[j] +
                           ")] != psi([.,.])");
            }
        rep.checks.push_back(std::move(c));
    }

    // (IV) the symbol calculus is a graded Poisson isomorphism onto R
    {
        CheckResult c{"IV", true, cutoff_h, {}, "symbol calculus"};
        for (int h = 0; h <= cutoff_h; ++h) {
            auto dk = d.d_grade_keys(h);
            auto rb = d.r_grade_basis(h);
            if (dk.size() != rb.size())
                c.fail("symbol not bijective onto R[" + std::to_string(h) + "]");
            // surjectivity via coordinate rank
            std::map<Exponents, size_t, GradedLexLess> ridx;
            for (size_t i = 0; i < rb.size(); ++i) ridx[rb[i].terms().begin()->first] = i;
            if (!rb.empty()) {
                Matrix m(dk.size(), rb.size());
                for (size_t i = 0; i < dk.size(); ++i) {
                    MultiPoly s = d.symbol(d.monomial_elem(dk[i]), h);
                    for (const auto& [e, coef] : s.terms()) {
                        auto it = ridx.find(e);
                        if (it == ridx.end()) {
                            c.fail("symbol leaves the kept classical basis at degree " +
                                   std::to_string(h));
                            continue;
                        }
                        m.at(i, it->second) = coef;
                    }
                }
                if (rank(m) != rb.size())
                    c.fail("symbol not surjective onto R[" + std::to_string(h) + "]");
            }
        }
        for (const auto& u : basis) {
            int du = u.filtration_halfdeg();
            for (const auto& v : basis) {
                int dv = v.filtration_halfdeg();
                if (du + dv > cutoff_h) continue;
                if (d.symbol(u.mul(v), du + dv) != d.symbol(u, du) * d.symbol(v, dv))
                    c.fail("gr multiplicativity: " + detail::pair_witness(u, v));
                MultiPoly lhs = d.symbol(weyl_commutator(u, v), du + dv - 2);
                MultiPoly rhs = poly_poisson_bracket(d.symbol(u, du), d.symbol(v, dv), d.classical);
                if (lhs != rhs) c.fail("Poisson compatibility: " + detail::pair_witness(u, v));
            }
        }
        for (size_t i = 0; i < d.lie.dim(); ++i)
            if (d.symbol(d.psi[i], 2) != d.classical.moment_map[i])
                c.fail("symbol(psi(" + d.lie.basis[i] + ")) != phi^" + d.lie.basis[i]);
        for (size_t s = 0; s < d.galois.size(); ++s)
            for (const auto& u : basis) {
                int du = u.filtration_halfdeg();
                if (d.symbol(d.galois_act_d(s, u), du) != d.galois_act_r(s, d.symbol(u, du)))
                    c.fail("symbol not S-equivariant on " + u.to_string());
            }
        rep.checks.push_back(std::move(c));
    }

    // (V) the anti-automorphism beta
    {
        CheckResult c{"V", true, cutoff_h, {}, "anti-automorphism beta"};
        // (a) first: the most informative witness when beta is wrong
        for (size_t i = 0; i < d.lie.dim(); ++i) {
            std::vector<GaussianRational> neg(d.lie.dim());
            neg[i] = GaussianRational(-1);
            if (d.beta(d.psi[i]) != d.psi_of(neg))
                c.fail("beta(psi(" + d.lie.basis[i] + ")) != psi(-" + d.lie.basis[i] + ")");
        }
        for (const auto& u : basis) {
            for (const auto& v : basis)
                if (d.beta(u.mul(v)) != d.beta(v).mul(d.beta(u)))
                    c.fail("beta(uv) != beta(v)beta(u): " + detail::pair_witness(u, v));
        }
        for (const auto& u : basis) {
            if (d.beta(u).filtration_halfdeg() != u.filtration_halfdeg())
                c.fail("beta not filtered on " + u.to_string());
            if (d.beta(d.beta(d.beta(d.beta(u)))) != u) c.fail("beta^4 != 1 on " + u.to_string());
            int w = u.filtration_halfdeg();
            // (b) beta induces alpha on the associated graded algebra
            if (u.is_grade_homogeneous() &&
                d.symbol(d.beta(u), w) != d.symbol(u, w) * GaussianRational::i_pow(w))
                c.fail("beta does not induce alpha on gr: " + u.to_string());
            for (size_t s = 0; s < d.galois.size(); ++s)
                if (d.beta(d.galois_act_d(s, u)) != d.galois_act_d(s, d.beta(u)))
                    c.fail("beta does not commute with the Galois action on " + u.to_string());
        }
        rep.checks.push_back(std::move(c));
    }

    // (VI) the trace is a normalized supertrace vanishing on the odd part
    TraceFunctional trace;
    bool trace_ok = false;
    {
        CheckResult c{"VI", true, tc, {}, "supertrace"};
        try {
            if (shared_trace && shared_trace->cutoff_h >= tc) trace = *shared_trace;
            else trace = compute_trace(d, tc);
            trace_ok = true;
        } catch (const DatumError& e) {
            c.fail(e.what());
        }
        if (trace_ok) {
            if (trace(WeylElement::one(d.n)) != GaussianRational::one())
                c.fail("normalization failure: T(1) != 1");
            if (d.trace_override && !d.use_trace_override) {
                // registered oracle is cross-checked, never trusted
                for (const auto& k : d.d_filtered_keys(cutoff_h)) {
                    WeylElement m = d.monomial_elem(k);
                    if (d.trace_override(m) != trace(m))
                        c.fail("registered trace oracle disagrees on " + m.to_string());
                }
            }
            for (const auto& u : basis) {
                if (u.parity() == 1 && !trace(u).is_zero())
                    c.fail("T does not vanish on the odd part: " + u.to_string());
                for (size_t x = 0; x < d.lie.dim(); ++x)
                    if (u.filtration_halfdeg() <= tc - 2 &&
                        !trace(weyl_commutator(d.psi[x], u)).is_zero())
                        c.fail("T not invariant under " + d.lie.basis[x]);
            }
            for (const auto& u : basis)
                for (const auto& v : basis) {
                    int pu = u.parity(), pv = v.parity();
                    GaussianRational tuv = trace(u.mul(v)), tvu = trace(v.mul(u));
                    if (pu != pv) {
                        if (!tuv.is_zero()) c.fail("mixed parity, T(ab) != 0: " + detail::pair_witness(u, v));
                    } else {
                        GaussianRational sign = (pu == 1 && pv == 1) ? GaussianRational(-1)
                                                                     : GaussianRational(1);
                        if (tuv != sign * tvu)
                            c.fail("supertrace identity fails: " + detail::pair_witness(u, v));
                    }
                }
        }
        rep.checks.push_back(std::move(c));
    }

    // (VII) P nondegenerate on every filtration level
    {
        CheckResult c{"VII", true, cutoff_h, {}, "pairing nondegeneracy per filtration degree"};
        if (!trace_ok) {
            c.fail("pairing unavailable: trace computation failed");
        } else {
            for (int h = 0; h <= cutoff_h; ++h) {
                auto fb = d.d_filtered_basis(h);
                if (fb.empty()) continue;
                Matrix gram(fb.size(), fb.size());
                for (size_t i = 0; i < fb.size(); ++i)
                    for (size_t j = 0; j < fb.size(); ++j) gram.at(i, j) = trace(fb[i].mul(fb[j]));
                if (rank(gram) != fb.size()) {
                    std::string radical;
                    for (const auto& v : nullspace_basis(gram)) {
                        WeylElement r(d.n);
                        for (size_t j = 0; j < fb.size(); ++j) r += fb[j] * v[j];
                        radical += (radical.empty() ? "" : "; ") + r.to_string();
                    }
                    c.fail("degenerate on filtration degree " + std::to_string(h) + "; radical: " + radical);
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }

    return rep;
}

} // namespace starq
