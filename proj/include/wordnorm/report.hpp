#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace wordnorm {

enum class Verdict { pass, fail, inconclusive };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

// One broken (or undecidable) condition: which clause, on what tuple, with
// what measured quantity.  soft entries mark gaps (missing data, undecided),
// not refutations.
struct Violation {
    std::string condition;
    std::string subject;
    std::string measured;
    bool soft = false;
};

// Uniform result object for every checker.  The verdict is derived, never set
// by hand: pass iff no violations, fail if any hard violation, inconclusive
// when only soft ones remain.  Violations sort canonically so reports are
// byte-stable.
struct WitnessReport {
    Verdict verdict = Verdict::pass;
    std::vector<Violation> violations;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> notes;

    void echo(std::string key, std::string value) {
        params.emplace_back(std::move(key), std::move(value));
    }
    void violate(std::string condition, std::string subject, std::string measured,
                 bool soft = false) {
        violations.push_back({std::move(condition), std::move(subject), std::move(measured), soft});
    }
    void note(std::string text) { notes.push_back(std::move(text)); }

    void finalize() {
        std::stable_sort(violations.begin(), violations.end(),
                         [](const Violation& a, const Violation& b) {
                             if (a.condition != b.condition) return a.condition < b.condition;
                             return a.subject < b.subject;
                         });
        if (violations.empty()) {
            verdict = Verdict::pass;
        } else if (std::any_of(violations.begin(), violations.end(),
                               [](const Violation& v) { return !v.soft; })) {
            verdict = Verdict::fail;
        } else {
            verdict = Verdict::inconclusive;
        }
    }

    bool passed() const { return verdict == Verdict::pass; }
};

} // namespace wordnorm
