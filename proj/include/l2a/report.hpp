#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace l2a {

// One failed identity: which axiom, on which frame tuple, with the nonzero
// residual rendered verbatim so the failure is reproducible evidence.
struct Violation {
    std::string axiom;
    std::vector<int> witness;
    std::string residual;

    friend bool operator<(const Violation& a, const Violation& b) {
        if (a.axiom != b.axiom) return a.axiom < b.axiom;
        return a.witness < b.witness;
    }
    friend bool operator==(const Violation& a, const Violation& b) {
        return a.axiom == b.axiom && a.witness == b.witness && a.residual == b.residual;
    }
};

struct Report {
    std::string check;
    std::vector<Violation> violations;
    // Checks that actually ran, in canonical order; lets callers see which
    // axioms passed, not only which failed.
    std::vector<std::string> axioms_checked;
    double elapsed_seconds = 0.0;  // never part of the serialized payload

    bool passed() const { return violations.empty(); }

    void add(std::string axiom, std::vector<int> witness, std::string residual) {
        violations.push_back({std::move(axiom), std::move(witness), std::move(residual)});
    }

    void note_axiom(const std::string& axiom) {
        if (std::find(axioms_checked.begin(), axioms_checked.end(), axiom) == axioms_checked.end())
            axioms_checked.push_back(axiom);
    }

    bool axiom_failed(const std::string& axiom) const {
        for (const auto& v : violations)
            if (v.axiom == axiom) return true;
        return false;
    }

    std::vector<std::string> failed_axioms() const {
        std::vector<std::string> out;
        for (const auto& v : violations)
            if (std::find(out.begin(), out.end(), v.axiom) == out.end()) out.push_back(v.axiom);
        std::sort(out.begin(), out.end());
        return out;
    }

    void sort_canonical() { std::sort(violations.begin(), violations.end()); }

    void absorb(const Report& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
        for (const auto& a : other.axioms_checked) note_axiom(a);
    }
};

}  // namespace l2a
