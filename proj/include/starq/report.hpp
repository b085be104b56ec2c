#pragma once

#include <string>
#include <vector>

namespace starq {

/// Outcome of one machine check at an explicit cutoff. Failures are report
/// entries, not faults: checkers never throw for a falsified identity.
struct CheckResult {
    std::string id;       // "I".."VII" for datum axioms, kebab-case ids otherwise
    bool pass = true;
    int cutoff_h = 0;     // half-units
    std::vector<std::string> witnesses;
    std::string note;

    static constexpr size_t kMaxWitnesses = 4;

    void fail(std::string witness) {
        pass = false;
        if (witnesses.size() < kMaxWitnesses) {
            witnesses.push_back(std::move(witness));
        } else if (witnesses.size() == kMaxWitnesses) {
            witnesses.push_back("...");
        }
    }
};

struct Report {
    std::string title;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const CheckResult* find(const std::string& id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }
};

} // namespace starq
