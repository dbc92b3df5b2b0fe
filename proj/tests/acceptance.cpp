#include <cstdio>
#include "pdmean/validate.hpp"
int main() {
    auto results = pdmean::run_validation_suite(false);
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.pass;
        std::printf("[%s] %-36s statistic=%.6g threshold=%.6g\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.statistic, r.threshold);
        if (!r.note.empty()) std::printf("       note: %s\n", r.note.c_str());
    }
    return ok ? 0 : 1;
}
