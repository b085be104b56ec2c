#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "starq/enveloping.hpp"
#include "starq/metaplectic.hpp"
#include "starq/star.hpp"

// JSON serialization. Every number is an exact rational string "p/q" -- no
// floats anywhere in any output. Objects keep a fixed insertion order and all
// arrays follow canonical basis order, so identical inputs serialize
// byte-identically.

namespace starq {

using json = nlohmann::ordered_json;

inline json gq_to_json(const GaussianRational& c) {
    return json{{"re", rational_to_string(c.re())}, {"im", rational_to_string(c.im())}};
}

inline GaussianRational gq_from_json(const json& j) {
    return {rational_from_string(j.at("re").get<std::string>()),
            rational_from_string(j.at("im").get<std::string>())};
}

inline json poly_to_json(const MultiPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["exp"] = e;
        t["re"] = rational_to_string(c.re());
        t["im"] = rational_to_string(c.im());
        terms.push_back(std::move(t));
    }
    return json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

inline MultiPoly poly_from_json(const json& j) {
    MultiPoly p(j.at("nvars").get<size_t>());
    for (const auto& t : j.at("terms")) {
        Exponents e = t.at("exp").get<Exponents>();
        p.add_term(std::move(e), {rational_from_string(t.at("re").get<std::string>()),
                                  rational_from_string(t.at("im").get<std::string>())});
    }
    return p;
}

inline json weyl_to_json(const WeylElement& u) {
    json terms = json::array();
    for (const auto& [k, c] : u.terms()) {
        json t;
        t["qa"] = k.first;
        t["db"] = k.second;
        t["re"] = rational_to_string(c.re());
        t["im"] = rational_to_string(c.im());
        terms.push_back(std::move(t));
    }
    return json{{"n", u.n()}, {"terms", std::move(terms)}};
}

inline WeylElement weyl_from_json(const json& j) {
    WeylElement u(j.at("n").get<size_t>());
    for (const auto& t : j.at("terms")) {
        u.add_term({t.at("qa").get<Exponents>(), t.at("db").get<Exponents>()},
                   {rational_from_string(t.at("re").get<std::string>()),
                    rational_from_string(t.at("im").get<std::string>())});
    }
    return u;
}

inline json uenv_to_json(const UEnvElement& u) {
    json terms = json::array();
    for (const auto& [e, c] : u.terms()) {
        json t;
        t["exp"] = e;
        t["re"] = rational_to_string(c.re());
        t["im"] = rational_to_string(c.im());
        terms.push_back(std::move(t));
    }
    return json{{"dim", u.dim()}, {"terms", std::move(terms)}};
}

inline json check_to_json(const CheckResult& c) {
    json j;
    j["axiom"] = c.id;
    j["status"] = c.pass ? "pass" : "fail";
    j["cutoff"] = c.cutoff_h;
    if (!c.note.empty()) j["note"] = c.note;
    if (!c.witnesses.empty()) j["witness"] = c.witnesses;
    return j;
}

inline json report_to_json(const Report& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
    return json{{"title", rep.title},
                {"status", rep.all_pass() ? "pass" : "fail"},
                {"checks", std::move(checks)}};
}

inline json cp_table_to_json(const CpTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r;
        r["j"] = row.j_h;
        r["k"] = row.k_h;
        r["phi"] = poly_to_json(row.phi);
        r["psi"] = poly_to_json(row.psi);
        json cp = json::object();
        for (const auto& [p, comp] : row.cp) cp[std::to_string(p)] = poly_to_json(comp);
        r["Cp"] = std::move(cp);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json kernel_rows_to_json(const std::vector<KernelRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json r;
        r["degree"] = row.degree_h;
        r["dimU"] = row.dim_u;
        r["dimImage"] = row.dim_image;
        r["dimKernel"] = row.dim_kernel;
        json basis = json::array();
        for (const auto& k : row.kernel_basis) basis.push_back(uenv_to_json(k));
        r["kernelBasis"] = std::move(basis);
        out.push_back(std::move(r));
    }
    return out;
}

inline json surjectivity_to_json(const std::vector<KernelRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        out.push_back(json{{"degree", row.degree_h},
                           {"dimImage", row.dim_image},
                           {"dimTarget", row.dim_target},
                           {"surjective", row.surjective}});
    }
    return out;
}

inline json lambda_to_json(const LambdaOperator& op, const QuantizationDatum& d) {
    json by_deg = json::object();
    for (const auto& [h, m] : op.mats) {
        json rows = json::array();
        for (size_t r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (size_t cc = 0; cc < m.cols(); ++cc) {
                row.push_back(json{{"re", rational_to_string(m.at(r, cc).re())},
                                   {"im", rational_to_string(m.at(r, cc).im())}});
            }
            rows.push_back(std::move(row));
        }
        by_deg[std::to_string(h)] = std::move(rows);
    }
    return json{{"x", d.lie.basis[op.x_index]}, {"matrices", std::move(by_deg)}};
}

// ---------------------------------------------------------------------------
// Example descriptions: a structure description can be ingested from a JSON
// document with this schema and drives the same construction as the built-in
// registry.

inline json example_spec_to_json(const ExampleSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["n"] = spec.n;
    j["generators"] = spec.generators;
    json pairs = json::array();
    for (size_t r = 0; r < spec.poisson_pairs.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < spec.poisson_pairs.cols(); ++c)
            row.push_back(gq_to_json(spec.poisson_pairs.at(r, c)));
        pairs.push_back(std::move(row));
    }
    j["poisson_pairs"] = std::move(pairs);
    json gal = json::array();
    for (const auto& s : spec.galois) gal.push_back(gq_to_json(s));
    j["galois"] = std::move(gal);
    j["lie_basis"] = spec.lie_basis;
    json st = json::array();
    for (const auto& bi : spec.lie_structure) {
        json ji = json::array();
        for (const auto& bij : bi) {
            json jij = json::array();
            for (const auto& c : bij) jij.push_back(gq_to_json(c));
            ji.push_back(std::move(jij));
        }
        st.push_back(std::move(ji));
    }
    j["lie_structure"] = std::move(st);
    json mm = json::array();
    for (const auto& p : spec.moment_map) mm.push_back(poly_to_json(p));
    j["moment_map"] = std::move(mm);
    j["beta_unit"] = gq_to_json(spec.beta_unit);
    return j;
}

inline ExampleSpec example_spec_from_json(const json& j) {
    ExampleSpec spec;
    spec.name = j.at("name").get<std::string>();
    spec.n = j.at("n").get<size_t>();
    spec.generators = j.at("generators").get<std::vector<std::string>>();
    const auto& pairs = j.at("poisson_pairs");
    spec.poisson_pairs = Matrix(pairs.size(), pairs.empty() ? 0 : pairs[0].size());
    for (size_t r = 0; r < pairs.size(); ++r)
        for (size_t c = 0; c < pairs[r].size(); ++c)
            spec.poisson_pairs.at(r, c) = gq_from_json(pairs[r][c]);
    for (const auto& s : j.at("galois")) spec.galois.push_back(gq_from_json(s));
    spec.lie_basis = j.at("lie_basis").get<std::vector<std::string>>();
    for (const auto& ji : j.at("lie_structure")) {
        std::vector<std::vector<GaussianRational>> bi;
        for (const auto& jij : ji) {
            std::vector<GaussianRational> bij;
            for (const auto& c : jij) bij.push_back(gq_from_json(c));
            bi.push_back(std::move(bij));
        }
        spec.lie_structure.push_back(std::move(bi));
    }
    for (const auto& p : j.at("moment_map")) spec.moment_map.push_back(poly_from_json(p));
    if (j.contains("beta_unit")) spec.beta_unit = gq_from_json(j.at("beta_unit"));
    return spec;
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    out << dump_json(j);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

} // namespace starq
