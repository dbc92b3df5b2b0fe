#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pdmean/cli.hpp"
#include "pdmean/measure_io.hpp"

using namespace pdmean;

namespace {

struct RunOutput {
    int status;
    std::string out;
    std::string err;
};

RunOutput run_spec(const RunSpec& spec) {
    std::ostringstream out, err;
    int status = run(spec, out, err);
    return RunOutput{status, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("density subcommand emits the documented csv header and rows") {
    RunSpec spec;
    spec.subcommand = "density";
    spec.alpha = 0.5;
    spec.theta = 0.5;
    spec.measure_arg = "bernoulli:0.5";
    spec.grid = "0.1:0.9:9";
    RunOutput r = run_spec(spec);
    REQUIRE(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "y,q,Q,flag");
    for (size_t i = 1; i < lines.size(); ++i) {
        std::stringstream ss(lines[i]);
        std::string y, q, Q, flag;
        std::getline(ss, y, ',');
        std::getline(ss, q, ',');
        std::getline(ss, Q, ',');
        std::getline(ss, flag, ',');
        CHECK(std::fabs(std::stod(q) - 1.0) < 1e-5);
        CHECK(flag == "ok");
    }
}

TEST_CASE("cdf subcommand honors symmetry") {
    RunSpec spec;
    spec.subcommand = "cdf";
    spec.alpha = 0.5;
    spec.theta = 0.0;
    spec.measure_arg = "bernoulli:0.5";
    spec.grid = "0.5:0.5:1";
    RunOutput r = run_spec(spec);
    REQUIRE(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].rfind("0.5,", 0) == 0);
    CHECK(lines[1].find(",0.5,") != std::string::npos);
}

TEST_CASE("sample subcommand is deterministic") {
    RunSpec spec;
    spec.subcommand = "sample";
    spec.alpha = 0.5;
    spec.theta = 2.0;
    spec.measure_arg = "bernoulli:0.5";
    spec.method = "cftp";
    spec.nsamples = 3;
    spec.seed = 7;
    RunOutput a = run_spec(spec);
    RunOutput b = run_spec(spec);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "value");
}

TEST_CASE("malformed inputs exit with status one") {
    RunSpec spec;
    spec.subcommand = "density";
    spec.alpha = 0.5;
    spec.theta = 0.5;
    spec.measure_arg = "bernoulli:1.5";  // invalid parameter
    RunOutput r = run_spec(spec);
    CHECK(r.status == 1);
    CHECK(!r.err.empty());

    spec.measure_arg = "/nonexistent/measure.json";
    CHECK(run_spec(spec).status == 1);

    spec.measure_arg = "bernoulli:0.5";
    spec.grid = "0.9:0.1:5";  // reversed grid
    CHECK(run_spec(spec).status == 1);
}

TEST_CASE("grid points on atoms are flagged but the run succeeds") {
    RunSpec spec;
    spec.subcommand = "density";
    spec.alpha = 0.5;
    spec.theta = 0.5;
    spec.measure_arg = "bernoulli:0.5";
    spec.grid = "0.5,1.0";
    RunOutput r = run_spec(spec);
    REQUIRE(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[1].find("ok") != std::string::npos);
    CHECK(lines[2].find("atom_collision") != std::string::npos);
}

TEST_CASE("measure json round trip") {
    BaseMeasure m = load_measure_json(R"({"type":"atoms","atoms":[[0.0,0.25],[0.5,0.25],[1.0,0.5]]})");
    CHECK(m.atoms().size() == 3);
    CHECK(m.cdf_psi(0.6) == doctest::Approx(0.5));

    BaseMeasure u = load_measure_json(R"({"type":"uniform","a":0,"b":2})");
    CHECK(u.hull().hi == 2.0);

    BaseMeasure t = load_measure_json(R"({"type":"table","x":[0,0.5,1],"pdf":[0.5,1.5,0.5]})");
    CHECK(t.cdf_psi(1.0) == doctest::Approx(1.0));

    CHECK_THROWS(load_measure_json(R"({"type":"atoms","atoms":[[0.0,0.2],[1.0,0.5]]})"));
    CHECK_THROWS(load_measure_json("not json"));
    CHECK_THROWS(load_measure_json(R"({"type":"mystery"})"));
}

TEST_CASE("measure json tolerates and normalizes tiny mass error") {
    // off by 5e-10: inside the loading tolerance, normalized exactly
    BaseMeasure m = load_measure_json(R"({"type":"atoms","atoms":[[0.0,0.3000000005],[1.0,0.7]]})");
    CHECK(m.cdf_psi(2.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inline measure sugar") {
    BaseMeasure b = parse_measure_arg("bernoulli:0.25");
    CHECK(b.atoms()[1].w == doctest::Approx(0.25));
    BaseMeasure u = parse_measure_arg("uniform:0.5:1.5");
    CHECK(u.hull().lo == 0.5);
    CHECK_THROWS(parse_measure_arg("uniform:1"));
}

TEST_CASE("transform subcommand emits transform rows") {
    RunSpec spec;
    spec.subcommand = "transform";
    spec.alpha = 0.5;
    spec.theta = 0.5;
    spec.measure_arg = "bernoulli:0.5";
    spec.grid = "1.0:1.0:1";
    RunOutput r = run_spec(spec);
    REQUIRE(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "z,S");
    double s = std::stod(lines[1].substr(lines[1].find(',') + 1));
    CHECK(s == doctest::Approx(1.0 / (0.5 + 0.5 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("json output carries diagnostics") {
    RunSpec spec;
    spec.subcommand = "sample";
    spec.alpha = 0.5;
    spec.theta = 1.0;
    spec.measure_arg = "bernoulli:0.5";
    spec.method = "stick";
    spec.nsamples = 5;
    spec.seed = 3;
    spec.output = "json";
    RunOutput r = run_spec(spec);
    REQUIRE(r.status == 0);
    CHECK(r.out.find("depth_histogram") != std::string::npos);
    CHECK(r.out.find("\"seed\": 3") != std::string::npos);
}

TEST_CASE("closed form escape hatch") {
    RunSpec spec;
    spec.subcommand = "density";
    spec.alpha = 0.5;
    spec.theta = 0.0;
    spec.measure_arg = "bernoulli:0.5";
    spec.closed_form = "lamperti";
    spec.grid = "0.5:0.5:1";
    RunOutput r = run_spec(spec);
    REQUIRE(r.status == 0);
    auto lines = lines_of(r.out);
    double q = std::stod(lines[1].substr(lines[1].find(',') + 1));
    CHECK(q == doctest::Approx(2.0 / M_PI).epsilon(1e-12));
}
