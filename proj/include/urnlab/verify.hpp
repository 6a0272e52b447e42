#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace urnlab {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured value, target, tolerance
};

struct VerifyOptions {
    std::string only;     // substring filter on criterion names; empty = all
    uint32_t workers = 0; // 0 = hardware concurrency
};

// Runs the bundled acceptance suite. Seeds and tolerances are fixed; the
// same options always produce the same verdicts.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {});

}  // namespace urnlab
