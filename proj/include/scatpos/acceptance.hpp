#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scatpos {

struct CriterionResult {
    std::string name;
    bool pass = false;
    // Worst slack against the pinned tolerance; >= 0 iff pass. When a
    // criterion checks several quantities the minimum slack is reported.
    double margin = 0.0;
    std::string detail;
};

// Writes the deterministic artifact set used by the reproducibility check:
// solution/kernel/transform CSVs, a kernel binary dump, a measure file, a
// positivity JSON-lines report and a positivity-margin summary JSON.
void write_verify_artifacts(const std::string& dir, std::uint64_t seed);

// Runs the full acceptance suite. out_dir receives the reproducibility
// artifacts (two runs in subdirectories).
std::vector<CriterionResult> run_acceptance(const std::string& out_dir,
                                            std::uint64_t seed = 1234);

// Machine-readable pass/fail + margin per criterion.
void write_acceptance_summary(const std::string& path,
                              const std::vector<CriterionResult>& results);

} // namespace scatpos
