#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "starq/datum.hpp"

namespace starq {

/// Element of R[t] with graded components: comps[p] is the coefficient of
/// t^p. Specialization at t = 1 recovers the noncommutative product.
struct StarSeries {
    size_t nvars = 0;
    std::map<int, MultiPoly> comps;

    explicit StarSeries(size_t nv) : nvars(nv) {}

    static StarSeries of(const MultiPoly& f, int p = 0) {
        StarSeries s(f.nvars());
        if (!f.is_zero()) s.comps.emplace(p, f);
        return s;
    }

    void add(int p, const MultiPoly& f) {
        if (f.is_zero()) return;
        auto it = comps.find(p);
        if (it == comps.end()) {
            comps.emplace(p, f);
        } else {
            it->second += f;
            if (it->second.is_zero()) comps.erase(it);
        }
    }

    MultiPoly specialize() const {
        MultiPoly acc(nvars);
        for (const auto& [p, f] : comps) acc += f;
        return acc;
    }

    StarSeries operator+(const StarSeries& o) const {
        StarSeries s = *this;
        for (const auto& [p, f] : o.comps) s.add(p, f);
        return s;
    }

    StarSeries operator-(const StarSeries& o) const {
        StarSeries s = *this;
        for (const auto& [p, f] : o.comps) s.add(p, -f);
        return s;
    }

    bool is_zero() const { return comps.empty(); }

    bool operator==(const StarSeries& o) const { return nvars == o.nvars && comps == o.comps; }
    bool operator!=(const StarSeries& o) const { return !(*this == o); }

    std::string to_string(const std::vector<std::string>& names) const {
        if (comps.empty()) return "0";
        std::string s;
        for (const auto& [p, f] : comps) {
            if (!s.empty()) s += " + ";
            s += "(" + f.to_string(names) + ")";
            if (p == 1) s += "*t";
            else if (p > 1) s += "*t^" + std::to_string(p);
        }
        return s;
    }
};

// The noncommutative product pulled back to R through the quantization map:
// phi o psi = q^{-1}(q(phi) q(psi)). Requested degrees must stay within the
// verified cutoff; exceeding it is an error, never a silent truncation.
inline MultiPoly circ(const MultiPoly& f, const MultiPoly& g, const QuantizationMap& qm) {
    const auto& w = qm.datum.classical.degrees;
    int df = f.weighted_degree(w), dg = g.weighted_degree(w);
    if (df + dg > qm.cutoff_h())
        throw RangeError("circ product exceeds the verified cutoff");
    if (f.is_zero() || g.is_zero()) return MultiPoly::zero(f.nvars());
    WeylElement prod = qm.q(f).mul(qm.q(g));
    MultiPoly acc(f.nvars());
    for (const auto& [h, comp] : qm.q_inverse(prod)) acc += comp;
    return acc;
}

// Graded components of phi o psi for homogeneous inputs, reindexed by
// p = j + k - (component degree) in full units. Components must step by full
// units (the carrier is a superalgebra); a half-unit step is a datum failure.
inline std::map<int, MultiPoly> extract_Cp(const MultiPoly& f, const MultiPoly& g,
                                           const QuantizationMap& qm) {
    const auto& w = qm.datum.classical.degrees;
    if (!f.is_homogeneous(w) || !g.is_homogeneous(w))
        throw InputError("extract_Cp needs homogeneous inputs");
    int j = f.weighted_degree(w), k = g.weighted_degree(w);
    std::map<int, MultiPoly> table;
    if (j < 0 || k < 0) return table;
    MultiPoly prod = circ(f, g, qm);
    for (const auto& [h, comp] : euler_components(prod, qm.datum.classical)) {
        int gap = j + k - h;
        if (gap % 2 != 0)
            throw DatumError("half-unit component in a product of homogeneous elements");
        table.emplace(gap / 2, comp);
    }
    return table;
}

// The graded star product: component C_p at t^p, specializing at t = 1 to
// the circ product.
inline StarSeries homogenize(const MultiPoly& f, const MultiPoly& g, const QuantizationMap& qm) {
    StarSeries s(f.nvars());
    for (const auto& [p, comp] : extract_Cp(f, g, qm)) s.add(p, comp);
    return s;
}

// C[t]-bilinear extension of homogenize to series.
inline StarSeries star_mul(const StarSeries& u, const StarSeries& v, const QuantizationMap& qm) {
    StarSeries out(u.nvars);
    for (const auto& [pu, fu] : u.comps)
        for (const auto& [pv, fv] : v.comps)
            for (const auto& [hu, cu] : euler_components(fu, qm.datum.classical))
                for (const auto& [hv, cv] : euler_components(fv, qm.datum.classical))
                    for (const auto& [p, comp] : extract_Cp(cu, cv, qm)) out.add(pu + pv + p, comp);
    return out;
}

/// Table of the C_p operators on all homogeneous basis pairs with
/// j + k <= cutoff, in canonical basis order. Built eagerly; immutable after
/// construction, so checkers may read it concurrently.
struct CpTable {
    struct Row {
        int j_h = 0, k_h = 0;       // half-unit degrees of the pair
        size_t phi_idx = 0, psi_idx = 0;
        MultiPoly phi, psi;
        std::map<int, MultiPoly> cp;
        Row() : phi(0), psi(0) {}
    };
    int cutoff_h = 0;
    std::vector<Row> rows;
    std::map<std::tuple<int, int, size_t, size_t>, size_t> index; // (j,k,a,b) -> row

    const Row* find(int j, int k, size_t a, size_t b) const {
        auto it = index.find({j, k, a, b});
        return it == index.end() ? nullptr : &rows[it->second];
    }
};

inline CpTable build_cp_table(const QuantizationMap& qm, int cutoff_h) {
    CpTable table;
    table.cutoff_h = cutoff_h;
    const auto& d = qm.datum;
    for (int j = 0; j <= cutoff_h; ++j) {
        auto bj = d.r_grade_basis(j);
        for (int k = 0; j + k <= cutoff_h; ++k) {
            auto bk = d.r_grade_basis(k);
            for (size_t a = 0; a < bj.size(); ++a)
                for (size_t b = 0; b < bk.size(); ++b) {
                    CpTable::Row row;
                    row.j_h = j;
                    row.k_h = k;
                    row.phi_idx = a;
                    row.psi_idx = b;
                    row.phi = bj[a];
                    row.psi = bk[b];
                    row.cp = extract_Cp(bj[a], bk[b], qm);
                    table.index[{j, k, a, b}] = table.rows.size();
                    table.rows.push_back(std::move(row));
                }
        }
    }
    return table;
}

namespace detail {

inline std::string poly_pair_witness(const QuantizationDatum& d, const MultiPoly& f,
                                     const MultiPoly& g) {
    const auto& names = d.classical.generators;
    return "(" + f.to_string(names) + ", " + g.to_string(names) + ")";
}

} // namespace detail

// Degree window: components of R[j] o R[k] live in degrees
// j+k, j+k-2, ..., |j-k| half-units (full-unit steps, Clebsch-Gordan window).
inline CheckResult check_truncation(const CpTable& table, const QuantizationMap& qm) {
    CheckResult c{"truncation", true, table.cutoff_h, {}, "degree window of the graded product"};
    for (const auto& row : table.rows) {
        // p <= 2 min(j,k) full units, i.e. min(j_h,k_h) in half-unit counting;
        // equivalently no component below degree |j-k|
        int pmax = std::min(row.j_h, row.k_h);
        for (const auto& [p, comp] : row.cp) {
            if (p < 0 || p > pmax)
                c.fail("component p=" + std::to_string(p) + " outside [0, 2min(j,k)] for " +
                       detail::poly_pair_witness(qm.datum, row.phi, row.psi));
        }
    }
    return c;
}

// Forward declaration (defined below, after q_pairing).
inline GaussianRational q_pairing(const MultiPoly& f, const MultiPoly& g,
                                  const QuantizationMap& qm, const TraceFunctional& t);

// The pairing Q(phi, psi) = T(phi o psi) = constant term of phi o psi:
// distinct degrees pair trivially, equal degrees nondegenerately, symmetric
// in integer degrees and antisymmetric in half-integer degrees. Evaluated as
// T(q(phi) q(psi)); the bridge to the constant term of circ is the
// trace-projection check.
inline CheckResult check_Q(const QuantizationMap& qm, const TraceFunctional& t, int cutoff_h) {
    CheckResult c{"Q-pairing", true, cutoff_h, {}, "graded supersymmetric pairing on R"};
    const auto& d = qm.datum;
    for (int j = 0; j <= cutoff_h; ++j) {
        auto bj = d.r_grade_basis(j);
        if (bj.empty()) continue;
        // distinct degrees pair trivially
        for (int k = 0; k <= cutoff_h; ++k) {
            if (k == j) continue;
            for (const auto& f : bj)
                for (const auto& g : d.r_grade_basis(k))
                    if (!q_pairing(f, g, qm, t).is_zero())
                        c.fail("cross-degree pairing nonzero: " + detail::poly_pair_witness(d, f, g));
        }
        // equal degrees pair nondegenerately, with parity symmetry
        Matrix gram(bj.size(), bj.size());
        for (size_t a = 0; a < bj.size(); ++a)
            for (size_t b = 0; b < bj.size(); ++b) gram.at(a, b) = q_pairing(bj[a], bj[b], qm, t);
        if (rank(gram) != bj.size()) c.fail("Q degenerate on R[" + std::to_string(j) + "]");
        GaussianRational sign = (j % 2 == 0) ? GaussianRational(1) : GaussianRational(-1);
        for (size_t a = 0; a < bj.size(); ++a)
            for (size_t b = 0; b < bj.size(); ++b)
                if (gram.at(a, b) != sign * gram.at(b, a))
                    c.fail("Q parity symmetry fails on R[" + std::to_string(j) + "]");
    }
    return c;
}

// T is a supertrace for the circ product: T(phi o psi) = (-1)^{|phi||psi|}
// T(psi o phi) in equal parity, zero in mixed parity.
inline CheckResult check_supertrace(const QuantizationMap& qm, const TraceFunctional& t,
                                    int cutoff_h) {
    CheckResult c{"supertrace-R", true, cutoff_h, {}, "constant-term functional is a supertrace for circ"};
    const auto& d = qm.datum;
    for (int j = 0; j <= cutoff_h; ++j) {
        auto bj = d.r_grade_basis(j);
        for (int k = 0; k <= cutoff_h; ++k) {
            auto bk = d.r_grade_basis(k);
            for (const auto& f : bj)
                for (const auto& g : bk) {
                    GaussianRational fg = q_pairing(f, g, qm, t);
                    GaussianRational gf = q_pairing(g, f, qm, t);
                    if ((j % 2) != (k % 2)) {
                        if (!fg.is_zero())
                            c.fail("mixed parity, T(f o g) != 0: " + detail::poly_pair_witness(d, f, g));
                    } else {
                        GaussianRational sign =
                            (j % 2 == 1) ? GaussianRational(-1) : GaussianRational(1);
                        if (fg != sign * gf)
                            c.fail("supertrace identity fails: " + detail::poly_pair_witness(d, f, g));
                    }
                }
        }
    }
    return c;
}

/// The degree -1 correction operators in phi^x o psi beyond the classical
/// product and half-bracket, assembled as matrices R[h] -> R[h-2].
struct LambdaOperator {
    size_t x_index = 0;
    int cutoff_h = 0;
    std::map<int, Matrix> mats; // half-degree h -> matrix (rows: R[h-2], cols: R[h])
};

// Lambda^x(psi) = phi^x o psi - phi^x psi - 1/2 {phi^x, psi}.
inline MultiPoly lambda_apply(size_t x, const MultiPoly& psi, const QuantizationMap& qm) {
    const auto& d = qm.datum;
    const MultiPoly& phix = d.classical.moment_map[x];
    MultiPoly rest = phix * psi + poly_poisson_bracket(phix, psi, d.classical) *
                                      GaussianRational(Rational(1, 2));
    return circ(phix, psi, qm) - rest;
}

inline LambdaOperator lambda_op(size_t x, const QuantizationMap& qm, int cutoff_h) {
    LambdaOperator op;
    op.x_index = x;
    op.cutoff_h = cutoff_h;
    const auto& d = qm.datum;
    for (int h = 0; h <= cutoff_h; ++h) {
        auto dom = d.r_grade_basis(h);
        auto cod = d.r_grade_basis(h - 2);
        Matrix m(cod.size(), dom.size());
        std::map<Exponents, size_t, GradedLexLess> cidx;
        for (size_t i = 0; i < cod.size(); ++i) cidx[cod[i].terms().begin()->first] = i;
        for (size_t j = 0; j < dom.size(); ++j) {
            MultiPoly out = lambda_apply(x, dom[j], qm);
            for (const auto& [e, coef] : out.terms()) {
                auto it = cidx.find(e);
                if (it == cidx.end())
                    throw DatumError("Lambda output outside degree h-2");
                m.at(it->second, j) = coef;
            }
        }
        op.mats.emplace(h, std::move(m));
    }
    return op;
}

// Phi^x = {phi^x, .}, the Hamiltonian derivation attached to x.
inline MultiPoly hamiltonian_derivation(size_t x, const MultiPoly& psi,
                                        const GradedPoissonStructure& st) {
    return poly_poisson_bracket(st.moment_map[x], psi, st);
}

// Pi^{(x,y)}(psi) = phi^x o psi - psi o phi^y, the two-sided action on R.
inline MultiPoly pi_rep(size_t x, size_t y, const MultiPoly& psi, const QuantizationMap& qm) {
    const auto& d = qm.datum;
    return circ(d.classical.moment_map[x], psi, qm) - circ(psi, d.classical.moment_map[y], qm);
}

// Pi for arbitrary coefficient vectors over the Lie basis.
inline MultiPoly pi_rep_vec(const std::vector<GaussianRational>& x,
                            const std::vector<GaussianRational>& y, const MultiPoly& psi,
                            const QuantizationMap& qm) {
    const auto& st = qm.datum.classical;
    return circ(st.moment_poly(x), psi, qm) - circ(psi, st.moment_poly(y), qm);
}

// Q(f, g) = T(q(f) q(g)); equals the constant term of f o g (that bridge is
// itself a check entry in star_report).
inline GaussianRational q_pairing(const MultiPoly& f, const MultiPoly& g,
                                  const QuantizationMap& qm, const TraceFunctional& t) {
    return t(qm.q(f).mul(qm.q(g)));
}

// Graded star product axioms on every table row: C_0 is the product, C_1 the
// half-bracket, parity C_p(f,g) = (-1)^p C_p(g,f), and the degree rule.
inline CheckResult check_star_axioms(const CpTable& table, const QuantizationMap& qm) {
    CheckResult c{"star-axioms", true, table.cutoff_h, {}, "graded star product axioms (i)-(iv)"};
    const auto& d = qm.datum;
    const GaussianRational half{Rational(1, 2)};
    for (const auto& row : table.rows) {
        MultiPoly c0 = row.cp.count(0) ? row.cp.at(0) : MultiPoly::zero(row.phi.nvars());
        if (c0 != row.phi * row.psi)
            c.fail("C0 != product: " + detail::poly_pair_witness(d, row.phi, row.psi));
        MultiPoly c1 = row.cp.count(1) ? row.cp.at(1) : MultiPoly::zero(row.phi.nvars());
        if (c1 != poly_poisson_bracket(row.phi, row.psi, d.classical) * half)
            c.fail("C1 != half bracket: " + detail::poly_pair_witness(d, row.phi, row.psi));
        const CpTable::Row* rev = table.find(row.k_h, row.j_h, row.psi_idx, row.phi_idx);
        if (!rev) {
            c.fail("missing transposed table row");
            continue;
        }
        for (const auto& [p, comp] : row.cp) {
            MultiPoly other = rev->cp.count(p) ? rev->cp.at(p) : MultiPoly::zero(comp.nvars());
            GaussianRational sign = (p % 2 == 0) ? GaussianRational(1) : GaussianRational(-1);
            if (comp != other * sign)
                c.fail("parity fails at p=" + std::to_string(p) + ": " +
                       detail::poly_pair_witness(d, row.phi, row.psi));
            if (!comp.is_homogeneous(d.classical.degrees) ||
                comp.weighted_degree(d.classical.degrees) != row.j_h + row.k_h - 2 * p)
                c.fail("degree rule fails at p=" + std::to_string(p) + ": " +
                       detail::poly_pair_witness(d, row.phi, row.psi));
        }
    }
    return c;
}

// (f o g) o h = f o (g o h) on all monomial basis triples within the cutoff.
inline CheckResult check_circ_associativity(const QuantizationMap& qm, int cutoff_h) {
    CheckResult c{"circ-assoc", true, cutoff_h, {}, "associativity of the circ product"};
    const auto& d = qm.datum;
    for (int h1 = 0; h1 <= cutoff_h; ++h1)
        for (int h2 = 0; h1 + h2 <= cutoff_h; ++h2)
            for (int h3 = 0; h1 + h2 + h3 <= cutoff_h; ++h3)
                for (const auto& f : d.r_grade_basis(h1))
                    for (const auto& g : d.r_grade_basis(h2))
                        for (const auto& k : d.r_grade_basis(h3))
                            if (circ(circ(f, g, qm), k, qm) != circ(f, circ(g, k, qm), qm))
                                c.fail(detail::poly_pair_witness(d, f, g) + " with " +
                                       k.to_string(d.classical.generators));
    return c;
}

// [phi, psi]_star = t {phi, psi} for every phi of degree one unit -- exact
// invariance for the whole of R[1], which contains the moment map.
inline CheckResult check_exact_invariance(const QuantizationMap& qm, int cutoff_h) {
    CheckResult c{"exact-invariance", true, cutoff_h, {},
                  "star commutator with degree-one elements is exactly t times the bracket"};
    const auto& d = qm.datum;
    auto run_pair = [&](const MultiPoly& phi, const MultiPoly& psi) {
        StarSeries lhs = homogenize(phi, psi, qm) - homogenize(psi, phi, qm);
        StarSeries rhs = StarSeries::of(poly_poisson_bracket(phi, psi, d.classical), 1);
        if (lhs != rhs) c.fail(detail::poly_pair_witness(d, phi, psi));
    };
    for (int h = 0; h + 2 <= cutoff_h; ++h)
        for (const auto& psi : d.r_grade_basis(h)) {
            for (const auto& phi : d.r_grade_basis(2)) run_pair(phi, psi);
            for (size_t x = 0; x < d.lie.dim(); ++x) run_pair(d.classical.moment_map[x], psi);
        }
    return c;
}

// T(u) equals the scalar component of u in the orthogonal decomposition.
inline CheckResult check_trace_projection(const QuantizationMap& qm, const TraceFunctional& t,
                                          int cutoff_h) {
    CheckResult c{"trace-projection", true, cutoff_h,
                  {}, "the trace is the orthogonal projection onto the scalars"};
    const auto& d = qm.datum;
    for (const auto& k : d.d_filtered_keys(cutoff_h)) {
        WeylElement u = d.monomial_elem(k);
        auto comps = qm.q_inverse(u);
        GaussianRational scalar =
            comps.count(0) ? comps.at(0).constant_term() : GaussianRational::zero();
        if (scalar != t(u)) c.fail(u.to_string());
    }
    return c;
}

/// Full identity suite for the circ/star construction at the given cutoff.
/// Builds its own trace and quantization map; failures of the underlying
/// datum surface as failed entries, not exceptions.
inline Report star_report(const QuantizationDatum& d, int cutoff_h) {
    Report rep;
    rep.title = d.name + " star product";
    try {
        TraceFunctional t = compute_trace(d, 2 * cutoff_h);
        QuantizationMap qm = build_q(d, ortho_decompose(d, t, cutoff_h));
        CpTable table = build_cp_table(qm, cutoff_h);
        rep.checks.push_back(check_star_axioms(table, qm));
        rep.checks.push_back(check_truncation(table, qm));
        rep.checks.push_back(check_circ_associativity(qm, cutoff_h));
        rep.checks.push_back(check_exact_invariance(qm, cutoff_h));
        rep.checks.push_back(check_trace_projection(qm, t, cutoff_h));
        rep.checks.push_back(check_Q(qm, t, cutoff_h));
        rep.checks.push_back(check_supertrace(qm, t, cutoff_h));
    } catch (const DatumError& e) {
        CheckResult c{"star-suite", false, cutoff_h, {e.what()}, "datum failure during construction"};
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

namespace detail {

// Matrix of multiplication-free linear maps R[h] -> R[h'] from an evaluator.
template <typename F>
Matrix operator_matrix(const QuantizationDatum& d, int h_from, int h_to, F&& eval) {
    auto dom = d.r_grade_basis(h_from);
    auto cod = d.r_grade_basis(h_to);
    Matrix m(cod.size(), dom.size());
    std::map<Exponents, size_t, GradedLexLess> cidx;
    for (size_t i = 0; i < cod.size(); ++i) cidx[cod[i].terms().begin()->first] = i;
    for (size_t j = 0; j < dom.size(); ++j) {
        MultiPoly out = eval(dom[j]);
        for (const auto& [e, coef] : out.terms()) {
            auto it = cidx.find(e);
            if (it == cidx.end()) throw DatumError("operator output outside the target degree");
            m.at(it->second, j) = coef;
        }
    }
    return m;
}

} // namespace detail

/// The Lambda and Pi identity suite. Operators at cutoff c need products one
/// unit above, so the quantization map is built to c + 2 internally.
inline Report lambda_report(const QuantizationDatum& d, int cutoff_h) {
    Report rep;
    rep.title = d.name + " Lambda operators";
    try {
        const int ext = cutoff_h + 2;
        TraceFunctional t = compute_trace(d, 2 * ext);
        QuantizationMap qm = build_q(d, ortho_decompose(d, t, ext));
        const auto& st = d.classical;
        size_t dim = d.lie.dim();

        std::vector<LambdaOperator> lam;
        {
            CheckResult c{"lambda-degree", true, cutoff_h, {},
                          "Lambda lowers the degree by exactly one unit"};
            for (size_t x = 0; x < dim; ++x) {
                try {
                    lam.push_back(lambda_op(x, qm, cutoff_h));
                } catch (const DatumError& e) {
                    c.fail(std::string("x=") + d.lie.basis[x] + ": " + e.what());
                }
            }
            rep.checks.push_back(std::move(c));
            if (lam.size() != dim) return rep;
        }
        {
            CheckResult c{"lambda-adjoint", true, cutoff_h, {},
                          "Lambda^x is the Q-adjoint of multiplication by phi^x"};
            for (size_t x = 0; x < dim; ++x)
                for (int h = 2; h <= cutoff_h; ++h)
                    for (const auto& phi : d.r_grade_basis(h))
                        for (const auto& psi : d.r_grade_basis(h - 2))
                            if (q_pairing(lambda_apply(x, phi, qm), psi, qm, t) !=
                                q_pairing(phi, st.moment_map[x] * psi, qm, t))
                                c.fail("x=" + d.lie.basis[x] + " " +
                                       detail::poly_pair_witness(d, phi, psi));
            rep.checks.push_back(std::move(c));
        }
        {
            CheckResult c{"lambda-nonzero", true, cutoff_h, {},
                          "Lambda^x nonzero on R[j] whenever R[j-1] is nonzero"};
            for (size_t x = 0; x < dim; ++x)
                for (int h = 2; h <= cutoff_h; ++h) {
                    if (d.r_grade_basis(h).empty() || d.r_grade_basis(h - 2).empty()) continue;
                    if (lam[x].mats.at(h).is_zero())
                        c.fail("Lambda^" + d.lie.basis[x] + " vanishes on R[" + std::to_string(h) +
                               "]");
                }
            rep.checks.push_back(std::move(c));
        }
        {
            CheckResult c{"lambda-commute", true, cutoff_h, {}, "the Lambda operators commute"};
            for (size_t x = 0; x < dim; ++x)
                for (size_t y = x + 1; y < dim; ++y)
                    for (int h = 2; h <= cutoff_h; ++h) {
                        Matrix lhs = lam[x].mats.at(h - 2) * lam[y].mats.at(h);
                        Matrix rhs = lam[y].mats.at(h - 2) * lam[x].mats.at(h);
                        if (!(lhs == rhs))
                            c.fail("[Lambda^" + d.lie.basis[x] + ", Lambda^" + d.lie.basis[y] +
                                   "] != 0 on R[" + std::to_string(h) + "]");
                    }
            rep.checks.push_back(std::move(c));
        }
        {
            CheckResult c{"lambda-equivariance", true, cutoff_h, {},
                          "Lambda transforms in the adjoint representation"};
            for (size_t x = 0; x < dim; ++x) {
                std::map<int, Matrix> phimat;
                for (int h = 0; h <= cutoff_h; ++h)
                    phimat.emplace(h, detail::operator_matrix(d, h, h, [&](const MultiPoly& p) {
                                       return hamiltonian_derivation(x, p, st);
                                   }));
                for (size_t y = 0; y < dim; ++y)
                    for (int h = 2; h <= cutoff_h; ++h) {
                        Matrix lhs = phimat.at(h - 2) * lam[y].mats.at(h) -
                                     lam[y].mats.at(h) * phimat.at(h);
                        Matrix rhs(d.r_grade_basis(h - 2).size(), d.r_grade_basis(h).size());
                        const auto& br = d.lie.bracket(x, y);
                        for (size_t k = 0; k < dim; ++k)
                            if (!br[k].is_zero()) rhs = rhs + lam[k].mats.at(h).scaled(br[k]);
                        if (!(lhs == rhs))
                            c.fail("[Phi^" + d.lie.basis[x] + ", Lambda^" + d.lie.basis[y] +
                                   "] != Lambda^[x,y] on R[" + std::to_string(h) + "]");
                    }
            }
            rep.checks.push_back(std::move(c));
        }
        {
            CheckResult c{"lambda-galois", true, cutoff_h, {},
                          "Lambda commutes with the Galois action"};
            for (size_t s = 0; s < d.galois.size(); ++s) {
                std::map<int, Matrix> smat;
                for (int h = 0; h <= cutoff_h; ++h)
                    smat.emplace(h, detail::operator_matrix(d, h, h, [&](const MultiPoly& p) {
                                     return d.galois_act_r(s, p);
                                 }));
                for (size_t x = 0; x < dim; ++x)
                    for (int h = 2; h <= cutoff_h; ++h)
                        if (!(smat.at(h - 2) * lam[x].mats.at(h) ==
                              lam[x].mats.at(h) * smat.at(h)))
                            c.fail("Lambda^" + d.lie.basis[x] +
                                   " does not commute with the Galois action on R[" +
                                   std::to_string(h) + "]");
            }
            rep.checks.push_back(std::move(c));
        }
        {
            CheckResult c{"pi-antidiagonal", true, cutoff_h, {},
                          "Pi^(x,-x) = 2 phi^x + 2 Lambda^x"};
            for (size_t x = 0; x < dim; ++x) {
                std::vector<GaussianRational> xv(dim), nxv(dim);
                xv[x] = GaussianRational(1);
                nxv[x] = GaussianRational(-1);
                for (int h = 0; h <= cutoff_h; ++h)
                    for (const auto& psi : d.r_grade_basis(h)) {
                        MultiPoly lhs = pi_rep_vec(xv, nxv, psi, qm);
                        MultiPoly rhs = st.moment_map[x] * psi * GaussianRational(2) +
                                        lambda_apply(x, psi, qm) * GaussianRational(2);
                        if (lhs != rhs)
                            c.fail("x=" + d.lie.basis[x] + " psi=" +
                                   psi.to_string(st.generators));
                    }
            }
            rep.checks.push_back(std::move(c));
        }
        {
            CheckResult c{"pi-diagonal", true, cutoff_h, {}, "Pi^(x,x) = {phi^x, .}"};
            for (size_t x = 0; x < dim; ++x)
                for (int h = 0; h <= cutoff_h; ++h)
                    for (const auto& psi : d.r_grade_basis(h))
                        if (pi_rep(x, x, psi, qm) != hamiltonian_derivation(x, psi, st))
                            c.fail("x=" + d.lie.basis[x] + " psi=" + psi.to_string(st.generators));
            rep.checks.push_back(std::move(c));
        }
        {
            // Pi^(x,y) = L_x - R_y with L, R left/right circ multiplication by
            // the moment map. The g + g bracket identity expands bilinearly to
            // [L_x, L_x'] = L_[x,x'], [R_y, R_y'] = -R_[y,y'], [L_x, R_y'] = 0;
            // each family is checked on every basis pair, and the assembled
            // quadruple identity is run in full for small Lie algebras.
            CheckResult c{"pi-bracket", true, cutoff_h, {},
                          "Pi is a Lie algebra representation of g + g"};
            auto L = [&](size_t x, const MultiPoly& p) { return circ(st.moment_map[x], p, qm); };
            auto R = [&](size_t y, const MultiPoly& p) { return circ(p, st.moment_map[y], qm); };
            for (size_t x = 0; x < dim; ++x)
                for (size_t y = 0; y < dim; ++y)
                    for (int h = 0; h + 4 <= cutoff_h + 2; ++h)
                        for (const auto& psi : d.r_grade_basis(h)) {
                            MultiPoly ll = L(x, L(y, psi)) - L(y, L(x, psi));
                            if (ll != circ(st.moment_poly(d.lie.bracket(x, y)), psi, qm))
                                c.fail("[L,L] fails at (" + d.lie.basis[x] + "," + d.lie.basis[y] + ")");
                            MultiPoly rr = R(x, R(y, psi)) - R(y, R(x, psi));
                            if (rr != -circ(psi, st.moment_poly(d.lie.bracket(x, y)), qm))
                                c.fail("[R,R] fails at (" + d.lie.basis[x] + "," + d.lie.basis[y] + ")");
                            if (L(x, R(y, psi)) != R(y, L(x, psi)))
                                c.fail("[L,R] fails at (" + d.lie.basis[x] + "," + d.lie.basis[y] + ")");
                        }
            if (dim <= 4) {
                for (size_t x = 0; x < dim; ++x)
                    for (size_t y = 0; y < dim; ++y)
                        for (size_t xp = 0; xp < dim; ++xp)
                            for (size_t yp = 0; yp < dim; ++yp)
                                for (int h = 0; h + 4 <= cutoff_h + 2; ++h)
                                    for (const auto& psi : d.r_grade_basis(h)) {
                                        MultiPoly lhs =
                                            pi_rep(x, y, pi_rep(xp, yp, psi, qm), qm) -
                                            pi_rep(xp, yp, pi_rep(x, y, psi, qm), qm);
                                        MultiPoly rhs = pi_rep_vec(d.lie.bracket(x, xp),
                                                                   d.lie.bracket(y, yp), psi, qm);
                                        if (lhs != rhs)
                                            c.fail("(x,y,x',y')=(" + d.lie.basis[x] + "," +
                                                   d.lie.basis[y] + "," + d.lie.basis[xp] + "," +
                                                   d.lie.basis[yp] + ")");
                                    }
            }
            rep.checks.push_back(std::move(c));
        }
        {
            CheckResult c{"pi-galois", true, cutoff_h, {}, "Pi commutes with the Galois action"};
            for (size_t s = 0; s < d.galois.size(); ++s)
                for (size_t x = 0; x < dim; ++x)
                    for (int h = 0; h <= cutoff_h; ++h)
                        for (const auto& psi : d.r_grade_basis(h)) {
                            if (d.galois_act_r(s, circ(st.moment_map[x], psi, qm)) !=
                                circ(st.moment_map[x], d.galois_act_r(s, psi), qm))
                                c.fail("left: s=" + std::to_string(s) + " x=" + d.lie.basis[x]);
                            if (d.galois_act_r(s, circ(psi, st.moment_map[x], qm)) !=
                                circ(d.galois_act_r(s, psi), st.moment_map[x], qm))
                                c.fail("right: s=" + std::to_string(s) + " x=" + d.lie.basis[x]);
                        }
            rep.checks.push_back(std::move(c));
        }
    } catch (const DatumError& e) {
        CheckResult c{"lambda-suite", false, cutoff_h, {e.what()},
                      "datum failure during construction"};
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

} // namespace starq
