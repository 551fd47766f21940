// Acceptance checks: statistical end-to-end validations of the sampling
// laws and application guarantees, each with a pinned budget. Run by the
// standalone acceptance binary and by the CLI's accept command.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sks {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;  // criterion-specific (max TV, pass count, min ratio...)
    double budget = 0.0;    // the pinned threshold it is compared against
    bool budget_is_lower_bound = false;  // pass means measured >= budget
    std::string detail;
    double seconds = 0.0;
};

int acceptance_count();
std::string acceptance_name(int id);

// id in [1, acceptance_count()]; trials <= 0 keeps each criterion's
// pinned default volume
CriterionResult run_criterion(int id, uint64_t master_seed, long trials);

std::vector<CriterionResult> run_acceptance(uint64_t master_seed, const std::vector<int>& only,
                                            long trials);

std::string format_criterion(const CriterionResult& r);

constexpr uint64_t kDefaultAcceptanceSeed = 0x5EEDFACEDC0FFEEULL;

}  // namespace sks
