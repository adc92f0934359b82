#pragma once

#include <string>
#include <vector>

namespace listrec::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Runs the acceptance-criteria fixtures; `only` limits to the listed ids
// (empty = all). Each result carries a measured-vs-required detail string.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

std::string render(const std::vector<CriterionResult>& results);
bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace listrec::verify
