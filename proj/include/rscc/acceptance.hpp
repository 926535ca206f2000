#pragma once
#include <map>
#include <string>
#include <vector>

namespace rscc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// the ten release checks, in order. exercises the exact radial algebra, kernel
// certificates, jump detection, operator identities, the cooperation signature,
// grid measures, the fattening trace, the path-radius oracle and determinism
// across worker counts. the whole battery is meant to finish in minutes.
std::vector<CriterionResult> run_acceptance(const std::string& outDir = "");

bool all_passed(const std::vector<CriterionResult>& results);

// one line per criterion: "PASS  3 kernel-emptiness  <detail>"
std::string format_acceptance(const std::vector<CriterionResult>& results);

// the artifact bundle the report verb writes (filename -> bytes); exposed so the
// determinism criterion can regenerate it under different worker counts
std::map<std::string, std::string> report_artifacts(int workers);

} // namespace rscc
