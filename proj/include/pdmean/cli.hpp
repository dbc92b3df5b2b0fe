#ifndef PDMEAN_CLI_HPP
#define PDMEAN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pdmean {

struct RunSpec {
    std::string subcommand;  // density | cdf | sample | validate | transform
    double alpha = 0.0;
    double theta = 0.0;
    std::string measure_arg;
    std::string grid = "0.1:0.9:9";  // start:stop:count or comma list
    std::string output = "csv";      // csv | json
    std::string out_path;            // empty = stdout
    uint64_t seed = 0;
    std::string method = "stick";    // sample methods; see sampler
    size_t nsamples = 1000;
    std::string closed_form;         // density cross-check escape hatch
    std::string order = "theta";     // transform order: theta | theta+1
    double stick_tail_mass = 1e-12;
    double cftp_epsilon = 1e-9;
    double invcdf_tol = 1e-12;
    bool quick_validate = false;
    int threads = 0;  // 0: use PDMEAN_THREADS or 1
};

// Executes one run; exit status 0 on success, 1 on malformed input,
// 2 on validation failure.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

// Full argv interface used by the binary.
int cli_main(int argc, char** argv);

} // namespace pdmean

#endif
