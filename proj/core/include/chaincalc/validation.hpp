#pragma once

#include <string>
#include <vector>

namespace chaincalc {

struct Violation {
    std::string code;
    std::string message;
};

// Outcome of a validation pass: empty means the datum is consistent.
struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string code, std::string message) {
        violations.push_back({std::move(code), std::move(message)});
    }
    void merge(const ValidationReport& o) {
        violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    }
    std::string to_string() const {
        if (ok()) return "ok";
        std::string s;
        for (const Violation& v : violations) {
            if (!s.empty()) s += "\n";
            s += v.code + ": " + v.message;
        }
        return s;
    }
};

} // namespace chaincalc
