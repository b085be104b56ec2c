#pragma once

#include <string>
#include <vector>

#include "starq/matrix.hpp"
#include "starq/multipoly.hpp"

namespace starq {

/// Lie algebra given by a named basis and exact structure constants.
/// structure[i][j] is the expansion of [x_i, x_j] over the basis.
struct LieAlgebraData {
    std::vector<std::string> basis;
    std::vector<std::vector<std::vector<GaussianRational>>> structure;
    Matrix killing;

    size_t dim() const { return basis.size(); }

    const std::vector<GaussianRational>& bracket(size_t i, size_t j) const {
        return structure[i][j];
    }

    // Bracket of two coefficient vectors.
    std::vector<GaussianRational> bracket_vec(const std::vector<GaussianRational>& u,
                                              const std::vector<GaussianRational>& v) const {
        std::vector<GaussianRational> out(dim());
        for (size_t i = 0; i < dim(); ++i) {
            if (u[i].is_zero()) continue;
            for (size_t j = 0; j < dim(); ++j) {
                if (v[j].is_zero()) continue;
                GaussianRational f = u[i] * v[j];
                for (size_t k = 0; k < dim(); ++k) out[k] += f * structure[i][j][k];
            }
        }
        return out;
    }

    Matrix ad(size_t i) const {
        Matrix m(dim(), dim());
        for (size_t j = 0; j < dim(); ++j)
            for (size_t k = 0; k < dim(); ++k) m.at(k, j) = structure[i][j][k];
        return m;
    }

    // Builds the datum from structure constants; the Killing form is the
    // trace form of the adjoint representation.
    static LieAlgebraData make(std::vector<std::string> names,
                               std::vector<std::vector<std::vector<GaussianRational>>> structure) {
        LieAlgebraData lie;
        lie.basis = std::move(names);
        lie.structure = std::move(structure);
        size_t n = lie.dim();
        lie.killing = Matrix(n, n);
        std::vector<Matrix> ads;
        ads.reserve(n);
        for (size_t i = 0; i < n; ++i) ads.push_back(lie.ad(i));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Matrix p = ads[i] * ads[j];
                GaussianRational tr;
                for (size_t k = 0; k < n; ++k) tr += p.at(k, k);
                lie.killing.at(i, j) = tr;
            }
        return lie;
    }

    void validate() const {
        size_t n = dim();
        if (structure.size() != n) throw InputError("structure constants shape mismatch");
        for (size_t i = 0; i < n; ++i) {
            if (structure[i].size() != n) throw InputError("structure constants shape mismatch");
            for (size_t j = 0; j < n; ++j)
                if (structure[i][j].size() != n) throw InputError("structure constants shape mismatch");
        }
        // antisymmetry
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k)
                    if (structure[i][j][k] != -structure[j][i][k])
                        throw InputError("structure constants not antisymmetric");
        // Jacobi on all basis triples
        auto unit = [&](size_t i) {
            std::vector<GaussianRational> v(n);
            v[i] = GaussianRational::one();
            return v;
        };
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k) {
                    auto a = bracket_vec(bracket_vec(unit(i), unit(j)), unit(k));
                    auto b = bracket_vec(bracket_vec(unit(j), unit(k)), unit(i));
                    auto c = bracket_vec(bracket_vec(unit(k), unit(i)), unit(j));
                    for (size_t m = 0; m < n; ++m)
                        if (!(a[m] + b[m] + c[m]).is_zero())
                            throw InputError("Jacobi identity fails on basis triple");
                }
        // Killing form ad-invariance: <[x,y],z> + <y,[x,z]> = 0
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y)
                for (size_t z = 0; z < n; ++z) {
                    GaussianRational s;
                    for (size_t m = 0; m < n; ++m) {
                        s += structure[x][y][m] * killing.at(m, z);
                        s += structure[x][z][m] * killing.at(y, m);
                    }
                    if (!s.is_zero()) throw InputError("Killing form not ad-invariant");
                }
    }
};

/// Finite Galois group acting by invertible scalar matrices on the generator
/// span. Element 0 is the identity.
struct GaloisAction {
    std::vector<GaussianRational> scalars;

    size_t size() const { return scalars.size(); }
    bool is_trivial() const { return scalars.size() == 1; }

    static GaloisAction trivial() { return {{GaussianRational::one()}}; }
    static GaloisAction sign_z2() { return {{GaussianRational::one(), GaussianRational(-1)}}; }

    const GaussianRational& scalar(size_t s) const {
        if (s >= scalars.size()) throw InputError("group element out of range");
        return scalars[s];
    }

    void validate() const {
        if (scalars.empty() || scalars[0] != GaussianRational::one())
            throw InputError("Galois action must list the identity first");
        auto member = [&](const GaussianRational& c) {
            for (const auto& s : scalars)
                if (s == c) return true;
            return false;
        };
        for (const auto& a : scalars) {
            if (a.is_zero()) throw InputError("Galois scalar must be invertible");
            if (!member(a.inverse())) throw InputError("Galois action not closed under inverse");
            for (const auto& b : scalars)
                if (!member(a * b)) throw InputError("Galois action not closed under product");
        }
    }
};

/// The classical side: a graded polynomial ring with constant Poisson pairs
/// between generators, a finite Galois action, and the moment map phi^x.
struct GradedPoissonStructure {
    std::vector<std::string> generators;
    std::vector<int> degrees; // half-units, >= 1
    Matrix poisson_pairs;     // {g_i, g_j} constants
    GaloisAction galois = GaloisAction::trivial();
    LieAlgebraData lie;
    std::vector<MultiPoly> moment_map; // phi^x per Lie basis element, degree 2 half-units

    size_t nvars() const { return generators.size(); }
    const std::vector<int>& weights() const { return degrees; }

    MultiPoly zero() const { return MultiPoly::zero(nvars()); }
    MultiPoly one() const { return MultiPoly::constant(nvars(), GaussianRational::one()); }

    // phi^x for x given by a coefficient vector over the Lie basis.
    MultiPoly moment_poly(const std::vector<GaussianRational>& x) const {
        if (x.size() != lie.dim()) throw InputError("moment coefficients size mismatch");
        MultiPoly p = zero();
        for (size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) p += moment_map[i] * x[i];
        return p;
    }

    void validate() const {
        size_t n = nvars();
        if (degrees.size() != n) throw InputError("generator degrees size mismatch");
        for (int d : degrees)
            if (d < 1) throw InputError("generator degrees must be positive half-units");
        if (poisson_pairs.rows() != n || poisson_pairs.cols() != n)
            throw InputError("poisson pairs shape mismatch");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (poisson_pairs.at(i, j) != -poisson_pairs.at(j, i))
                    throw InputError("poisson pairs must be antisymmetric");
                // a constant bracket of generators lives in degree d_i + d_j - 2
                if (!poisson_pairs.at(i, j).is_zero() && degrees[i] + degrees[j] != 2)
                    throw InputError("poisson pair between generators of incompatible degree");
            }
        galois.validate();
        if (moment_map.size() != lie.dim()) throw InputError("moment map size mismatch");
        for (const auto& p : moment_map) {
            if (p.nvars() != n) throw InputError("moment map arity mismatch");
            if (p.weighted_degree(degrees) != 2 || !p.is_homogeneous(degrees))
                throw InputError("moment map polynomials must be homogeneous of degree one unit");
        }
    }
};

// {f, g} = sum_{i,j} pairs(i,j) * df/dg_i * dg/dg_j, the constant-coefficient
// bracket on generators extended by Leibniz.
inline MultiPoly poly_poisson_bracket(const MultiPoly& f, const MultiPoly& g,
                                      const GradedPoissonStructure& st) {
    if (f.nvars() != st.nvars() || g.nvars() != st.nvars())
        throw InputError("polynomial not in the generator ring of the structure");
    MultiPoly acc = st.zero();
    for (size_t i = 0; i < st.nvars(); ++i) {
        MultiPoly dfi = f.derivative(i);
        if (dfi.is_zero()) continue;
        for (size_t j = 0; j < st.nvars(); ++j) {
            const GaussianRational& pij = st.poisson_pairs.at(i, j);
            if (pij.is_zero()) continue;
            acc += (dfi * g.derivative(j)) * pij;
        }
    }
    return acc;
}

inline std::map<int, MultiPoly> euler_components(const MultiPoly& f, const GradedPoissonStructure& st) {
    return euler_components(f, st.degrees);
}

// alpha(f) = i^(2j) f on the degree-j component; an order-four automorphism.
inline MultiPoly alpha(const MultiPoly& f, const GradedPoissonStructure& st) {
    MultiPoly out = st.zero();
    for (const auto& [h, comp] : euler_components(f, st))
        out += comp * GaussianRational::i_pow(h);
    return out;
}

inline GaussianRational constant_term(const MultiPoly& f) { return f.constant_term(); }

inline MultiPoly galois_act(size_t s, const MultiPoly& f, const GradedPoissonStructure& st) {
    if (f.nvars() != st.nvars()) throw InputError("polynomial not in the generator ring");
    return f.scale_generators_pow(st.galois.scalar(s));
}

} // namespace starq
