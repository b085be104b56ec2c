#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "starq/io.hpp"

namespace starq {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

/// Driver configuration. Flags override values read from a JSON config file.
struct RunConfig {
    std::string command = "verify"; // verify | table | kernel | lambda
    std::string example;            // registry name
    std::string example_file;       // JSON structure description (overrides name)
    int cutoff_h = -1;              // half-units; -1 = example default
    std::vector<std::string> checks{"all"};
    std::string out;                // JSON output path (stdout summary always printed)
    int jobs = 1;

    static const std::set<std::string>& known_checks() {
        static const std::set<std::string> k{"axioms", "star", "lambda", "kernel", "simplicity",
                                             "all"};
        return k;
    }
};

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
    json j = read_json_file(path);
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
    if (j.contains("example")) cfg.example = j.at("example").get<std::string>();
    if (j.contains("example_file")) cfg.example_file = j.at("example_file").get<std::string>();
    if (j.contains("cutoff")) cfg.cutoff_h = j.at("cutoff").get<int>();
    if (j.contains("checks")) cfg.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
}

namespace detail {

// Runs independent tasks on up to `jobs` threads. Each task writes only its
// own result slot, so the merged output is deterministic regardless of
// scheduling.
inline void run_tasks(std::vector<std::function<void()>>& tasks, int jobs) {
    if (jobs <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= tasks.size()) return;
            tasks[k]();
        }
    };
    std::vector<std::thread> pool;
    size_t nthreads = std::min<size_t>(static_cast<size_t>(jobs), tasks.size());
    pool.reserve(nthreads);
    for (size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

inline void print_summary(const Report& rep, std::ostream& os) {
    for (const auto& c : rep.checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.id << " (cutoff " << c.cutoff_h
           << " half-units)";
        if (!c.note.empty()) os << "  -- " << c.note;
        os << "\n";
        if (!c.pass)
            for (const auto& w : c.witnesses) os << "      witness: " << w << "\n";
    }
}

} // namespace detail

// The CLI driver. Returns the process exit status: 0 all selected checks
// pass, 1 a check failed, 2 configuration/usage error. Reports are
// deterministic: two runs with identical config emit byte-identical JSON.
inline int run_cli(const RunConfig& cfg) {
    QuantizationDatum datum;
    int cutoff = cfg.cutoff_h;
    try {
        if (!cfg.example_file.empty()) {
            datum = build_datum(example_spec_from_json(read_json_file(cfg.example_file)));
        } else if (!cfg.example.empty()) {
            datum = build_example(cfg.example);
        } else {
            std::cerr << "error: no example selected (--example or --example-file)\n";
            return kExitUsage;
        }
        if (cutoff < 0) cutoff = default_cutoff_h(datum.name);
        if (cutoff < 2) {
            std::cerr << "error: cutoff must be at least 2 half-units\n";
            return kExitUsage;
        }
        for (const auto& chk : cfg.checks)
            if (!RunConfig::known_checks().count(chk)) {
                std::cerr << "error: unknown check '" << chk << "'\n";
                return kExitUsage;
            }
        if (cfg.jobs < 1) {
            std::cerr << "error: jobs must be positive\n";
            return kExitUsage;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    json out;
    out["command"] = cfg.command;
    out["example"] = datum.name;
    out["cutoff"] = cutoff;

    if (cfg.command == "verify") {
        auto selected = [&](const std::string& name) {
            for (const auto& chk : cfg.checks)
                if (chk == "all" || chk == name) return true;
            return false;
        };
        std::vector<std::pair<std::string, std::function<Report()>>> suites;
        if (selected("axioms"))
            suites.emplace_back("axioms", [&] { return verify_axioms(datum, cutoff); });
        if (selected("star"))
            suites.emplace_back("star", [&] { return star_report(datum, cutoff); });
        if (selected("star")) {
            suites.emplace_back("moyal", [&] {
                Report rep;
                rep.title = datum.name + " oracle agreement";
                try {
                    QuantizationMap qm = build_qmap(datum, cutoff);
                    rep.checks.push_back(check_moyal_agreement(qm, cutoff));
                } catch (const DatumError& e) {
                    rep.checks.push_back(
                        CheckResult{"moyal-agreement", false, cutoff, {e.what()}, ""});
                }
                return rep;
            });
        }
        if (selected("lambda"))
            suites.emplace_back("lambda", [&] { return lambda_report(datum, cutoff); });
        if (selected("kernel"))
            suites.emplace_back("kernel", [&] { return enveloping_report(datum, cutoff / 2); });
        if (selected("simplicity"))
            suites.emplace_back("simplicity", [&] { return simplicity_report(datum, cutoff); });

        std::vector<Report> results(suites.size());
        std::vector<std::function<void()>> tasks;
        tasks.reserve(suites.size());
        for (size_t k = 0; k < suites.size(); ++k)
            tasks.push_back([&, k] { results[k] = suites[k].second(); });
        detail::run_tasks(tasks, cfg.jobs);

        bool all_pass = true;
        json checks = json::array();
        for (size_t k = 0; k < suites.size(); ++k) {
            detail::print_summary(results[k], std::cout);
            all_pass = all_pass && results[k].all_pass();
            for (const auto& c : results[k].checks) checks.push_back(check_to_json(c));
        }
        out["checks"] = std::move(checks);
        out["status"] = all_pass ? "pass" : "fail";
        std::cout << "RESULT: " << (all_pass ? "PASS" : "FAIL") << "\n";
        if (!cfg.out.empty()) write_json_file(cfg.out, out);
        return all_pass ? kExitPass : kExitCheckFailure;
    }

    if (cfg.command == "table") {
        try {
            QuantizationMap qm = build_qmap(datum, cutoff);
            CpTable table = build_cp_table(qm, cutoff);
            out["rows"] = cp_table_to_json(table);
            std::cout << "C_p table: " << table.rows.size() << " basis pairs (cutoff " << cutoff
                      << " half-units)\n";
            if (!cfg.out.empty()) write_json_file(cfg.out, out);
            else std::cout << dump_json(out);
            return kExitPass;
        } catch (const DatumError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitCheckFailure;
        }
    }

    if (cfg.command == "kernel") {
        try {
            auto rows = kernel_J(datum, cutoff / 2);
            out["rows"] = kernel_rows_to_json(rows);
            out["surjectivity"] = surjectivity_to_json(rows);
            for (const auto& row : rows)
                std::cout << "degree " << row.degree_h << ": dim U = " << row.dim_u
                          << ", image = " << row.dim_image << ", kernel = " << row.dim_kernel
                          << (row.surjective ? " (surjective onto the invariants)" : "") << "\n";
            if (!cfg.out.empty()) write_json_file(cfg.out, out);
            else std::cout << dump_json(out);
            return kExitPass;
        } catch (const DatumError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitCheckFailure;
        }
    }

    if (cfg.command == "lambda") {
        try {
            QuantizationMap qm = build_qmap(datum, cutoff + 2);
            json ops = json::array();
            for (size_t x = 0; x < datum.lie.dim(); ++x)
                ops.push_back(lambda_to_json(lambda_op(x, qm, cutoff), datum));
            out["operators"] = std::move(ops);
            Report rep = lambda_report(datum, cutoff);
            json checks = json::array();
            for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
            out["checks"] = std::move(checks);
            out["status"] = rep.all_pass() ? "pass" : "fail";
            detail::print_summary(rep, std::cout);
            std::cout << "RESULT: " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
            if (!cfg.out.empty()) write_json_file(cfg.out, out);
            return rep.all_pass() ? kExitPass : kExitCheckFailure;
        } catch (const DatumError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitCheckFailure;
        }
    }

    std::cerr << "error: unknown command '" << cfg.command << "'\n";
    return kExitUsage;
}

} // namespace starq
