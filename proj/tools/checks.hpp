#ifndef MIXEM_TOOLS_CHECKS_HPP
#define MIXEM_TOOLS_CHECKS_HPP

#include <string>
#include <vector>

namespace mixem::checks {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // measured margin or failure description
};

// The release-gate invariant battery behind `mixem checks`.
std::vector<CheckResult> run_all();

} // namespace mixem::checks

#endif
