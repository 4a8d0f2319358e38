#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace explab::lab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    /// Criteria to run; empty runs all.
    std::set<int> only;
    /// Reference cache directory; empty recomputes every reference.
    std::string cache_dir;
    unsigned parallel = 1;
};

/// Runs the acceptance criteria, printing one PASS/FAIL line each as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& options = {});

}  // namespace explab::lab
