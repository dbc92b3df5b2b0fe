#include "pdmean/cli.hpp"
#include "pdmean/closed_forms.hpp"
#include "pdmean/dist.hpp"
#include "pdmean/errors.hpp"
#include "pdmean/kernel.hpp"
#include "pdmean/measure_io.hpp"
#include "pdmean/sampler.hpp"
#include "pdmean/validate.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace pdmean {

namespace {

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> pts;
    if (spec.find(',') != std::string::npos) {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) pts.push_back(std::stod(tok));
    } else {
        auto c1 = spec.find(':');
        auto c2 = spec.rfind(':');
        if (c1 == std::string::npos || c2 == c1)
            throw MeasureParseError("grid must be start:stop:count or a comma list");
        double start = std::stod(spec.substr(0, c1));
        double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        int count = std::stoi(spec.substr(c2 + 1));
        if (count < 1 || !(start <= stop))
            throw MeasureParseError("grid needs count >= 1 and start <= stop");
        if (count == 1) {
            pts.push_back(start);
        } else {
            for (int i = 0; i < count; ++i)
                pts.push_back(start + (stop - start) * i / (count - 1));
        }
    }
    if (pts.empty()) throw MeasureParseError("empty grid");
    for (size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i - 1] <= pts[i])) throw MeasureParseError("grid points must be sorted");
    return pts;
}

int env_threads() {
    const char* v = std::getenv("PDMEAN_THREADS");
    if (v == nullptr) return 1;
    int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

SampleMethod parse_method(const std::string& m) {
    if (m == "stick") return SampleMethod::stick;
    if (m == "invcdf") return SampleMethod::invcdf_stable;
    if (m == "recursion") return SampleMethod::recursion;
    if (m == "cftp") return SampleMethod::cftp;
    if (m == "symdirichlet") return SampleMethod::symdirichlet_direct;
    throw MeasureParseError("unknown sample method: " + m);
}

void write_text(const RunSpec& spec, const std::string& text, std::ostream& out) {
    if (spec.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(spec.out_path);
    if (!f) throw MeasureParseError("cannot open output file: " + spec.out_path);
    f << text;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

int run_density_cdf(const RunSpec& spec, std::ostream& out) {
    BaseMeasure measure = parse_measure_arg(spec.measure_arg);
    std::vector<double> pts = parse_grid(spec.grid);
    int threads = spec.threads > 0 ? spec.threads : env_threads();

    DistGrid grid;
    if (!spec.closed_form.empty()) {
        double p = 0.5;
        if (!measure.atoms().empty()) p = measure.atoms().back().w;
        auto cf = closed_form_by_name(spec.closed_form, spec.alpha, spec.theta, p);
        if (!cf) throw MeasureParseError("unknown closed form: " + spec.closed_form);
        grid.points = pts;
        grid.q.resize(pts.size());
        grid.Q.resize(pts.size());
        grid.flags.assign(pts.size(), PointFlag::ok);
        for (size_t i = 0; i < pts.size(); ++i) {
            grid.q[i] = cf->density ? cf->density(pts[i]) : std::nan("");
            grid.Q[i] = cf->cdf ? cf->cdf(pts[i]) : std::nan("");
        }
    } else {
        PDParams params = PDParams::from_values(spec.alpha, spec.theta);
        grid = eval_grid(measure, params, pts, threads);
    }

    std::ostringstream os;
    if (spec.output == "json") {
        nlohmann::json j;
        j["alpha"] = spec.alpha;
        j["theta"] = spec.theta;
        j["points"] = nlohmann::json::array();
        for (size_t i = 0; i < grid.points.size(); ++i)
            j["points"].push_back({{"y", grid.points[i]},
                                   {"q", grid.q[i]},
                                   {"Q", grid.Q[i]},
                                   {"flag", to_string(grid.flags[i])}});
        os << j.dump(2) << "\n";
    } else {
        os << "y,q,Q,flag\n";
        for (size_t i = 0; i < grid.points.size(); ++i)
            os << fmt(grid.points[i]) << ',' << fmt(grid.q[i]) << ',' << fmt(grid.Q[i]) << ','
               << to_string(grid.flags[i]) << "\n";
    }
    write_text(spec, os.str(), out);
    return 0;
}

int run_sample(const RunSpec& spec, std::ostream& out) {
    BaseMeasure measure = parse_measure_arg(spec.measure_arg);
    SamplerConfig cfg;
    cfg.seed = spec.seed;
    cfg.stick_tail_mass = spec.stick_tail_mass;
    cfg.cftp_epsilon = spec.cftp_epsilon;
    cfg.invcdf_tol = spec.invcdf_tol;

    SampleMethod method = parse_method(spec.method);
    SampleBatch batch;
    switch (method) {
        case SampleMethod::stick: {
            PDParams params = PDParams::from_values(spec.alpha, spec.theta);
            batch = sample_stick(measure, params, spec.nsamples, cfg);
            break;
        }
        case SampleMethod::invcdf_stable:
            batch = sample_stable_invcdf(measure, spec.alpha, spec.nsamples, cfg);
            break;
        case SampleMethod::recursion: {
            PDParams params = PDParams::general(spec.alpha, spec.theta);
            batch = sample_recursion(measure, params, spec.nsamples, cfg);
            break;
        }
        case SampleMethod::cftp: {
            PDParams params = PDParams::general(spec.alpha, spec.theta);
            batch = sample_cftp(measure, params, spec.nsamples, cfg);
            break;
        }
        case SampleMethod::symdirichlet_direct: {
            PDParams params = PDParams::from_values(spec.alpha, spec.theta);
            if (params.regime != Regime::SymDirichlet)
                throw UnsupportedCombination("symdirichlet sampling needs alpha = -kappa < 0");
            batch = sample_symdirichlet(measure, params.kappa, params.m, spec.nsamples, cfg);
            break;
        }
    }

    std::ostringstream os;
    if (spec.output == "json") {
        nlohmann::json j;
        j["method"] = to_string(batch.method);
        j["seed"] = batch.seed;
        j["n"] = batch.n();
        j["values"] = batch.values;
        nlohmann::json hist = nlohmann::json::object();
        for (const auto& [depth, count] : batch.diagnostics.depth_histogram)
            hist[std::to_string(depth)] = count;
        j["diagnostics"] = {{"depth_histogram", hist},
                            {"cftp_restarts", batch.diagnostics.cftp_restarts}};
        os << j.dump(2) << "\n";
    } else {
        os << "value\n";
        for (double v : batch.values) os << fmt(v) << "\n";
    }
    write_text(spec, os.str(), out);
    return 0;
}

int run_transform(const RunSpec& spec, std::ostream& out) {
    BaseMeasure measure = parse_measure_arg(spec.measure_arg);
    PDParams params = PDParams::from_values(spec.alpha, spec.theta);
    std::vector<double> zs = parse_grid(spec.grid);
    double order = params.theta;
    if (spec.order == "theta+1") order = params.theta + 1.0;
    else if (spec.order != "theta") order = std::stod(spec.order);
    if (params.regime == Regime::Stable) order = 1.0;

    std::ostringstream os;
    os << "z,S\n";
    for (double z : zs) os << fmt(z) << ',' << fmt(stieltjes_forward(measure, params, z, order)) << "\n";
    write_text(spec, os.str(), out);
    return 0;
}

int run_validate(const RunSpec& spec, std::ostream& out) {
    std::vector<CheckResult> results = run_validation_suite(spec.quick_validate);
    std::ostringstream os;
    bool all_pass = true;
    auto short_num = [](double v) {
        std::ostringstream s;
        s << std::setprecision(4) << v;
        return s.str();
    };
    os << std::left << std::setw(36) << "check" << std::setw(14) << "statistic"
       << std::setw(14) << "threshold" << "result\n";
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        os << std::left << std::setw(36) << r.name << std::setw(14) << short_num(r.statistic)
           << std::setw(14) << short_num(r.threshold) << (r.pass ? "pass" : "FAIL") << "\n";
        if (!r.note.empty()) os << "    note: " << r.note << "\n";
    }
    write_text(spec, os.str(), out);
    return all_pass ? 0 : 2;
}

} // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (spec.subcommand == "density" || spec.subcommand == "cdf")
            return run_density_cdf(spec, out);
        if (spec.subcommand == "sample") return run_sample(spec, out);
        if (spec.subcommand == "transform") return run_transform(spec, out);
        if (spec.subcommand == "validate") return run_validate(spec, out);
        err << "unknown subcommand: " << spec.subcommand << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"densities, distribution functions and samplers for Poisson-Dirichlet means"};
    app.require_subcommand(1);

    RunSpec spec;
    auto add_common = [&](CLI::App* sub, bool needs_measure) {
        sub->add_option("--alpha", spec.alpha, "stability parameter");
        sub->add_option("--theta", spec.theta, "concentration parameter");
        if (needs_measure)
            sub->add_option("--measure", spec.measure_arg,
                            "measure file, bernoulli:p, or uniform:a:b")
                ->required();
        sub->add_option("--grid", spec.grid, "start:stop:count or comma list");
        sub->add_option("--output", spec.output, "csv or json");
        sub->add_option("--out", spec.out_path, "output path (default stdout)");
        sub->add_option("--threads", spec.threads, "parallel evaluation threads");
    };

    CLI::App* density = app.add_subcommand("density", "evaluate the density over a grid");
    add_common(density, true);
    density->add_option("--closed-form", spec.closed_form,
                        "evaluate a named closed form instead of the generic pipeline");

    CLI::App* cdf = app.add_subcommand("cdf", "evaluate the distribution function over a grid");
    add_common(cdf, true);

    CLI::App* sample = app.add_subcommand("sample", "draw random values of the mean");
    add_common(sample, true);
    sample->add_option("--method", spec.method,
                       "stick | invcdf | recursion | cftp | symdirichlet");
    sample->add_option("--n", spec.nsamples, "number of draws");
    sample->add_option("--seed", spec.seed, "random seed");
    sample->add_option("--stick-tail-mass", spec.stick_tail_mass, "stick truncation mass");
    sample->add_option("--cftp-epsilon", spec.cftp_epsilon, "coalescence threshold");
    sample->add_option("--invcdf-tol", spec.invcdf_tol, "inverse-cdf bisection tolerance");

    CLI::App* transform = app.add_subcommand("transform", "forward Stieltjes transform values");
    add_common(transform, true);
    transform->add_option("--order", spec.order, "theta, theta+1, or a number");

    CLI::App* validate = app.add_subcommand("validate", "run the cross-validation suite");
    validate->add_flag("--quick", spec.quick_validate, "reduced Monte Carlo sample counts");
    validate->add_option("--out", spec.out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    spec.subcommand = app.get_subcommands().front()->get_name();
    return run(spec, std::cout, std::cerr);
}

} // namespace pdmean
