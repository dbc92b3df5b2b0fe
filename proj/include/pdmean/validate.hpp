#ifndef PDMEAN_VALIDATE_HPP
#define PDMEAN_VALIDATE_HPP

#include <string>
#include <vector>

namespace pdmean {

struct CheckResult {
    std::string name;
    double statistic = 0.0;  // worst observed deviation
    double threshold = 0.0;
    bool pass = false;
    std::string note;
};

// Full cross-validation suite with fixed seeds. quick=true trims the Monte
// Carlo sample counts for fast smoke runs (not the acceptance setting).
std::vector<CheckResult> run_validation_suite(bool quick = false);

} // namespace pdmean

#endif
