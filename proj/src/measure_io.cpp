#include "pdmean/measure_io.hpp"
#include "pdmean/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pdmean {

namespace {

constexpr double kLoadMassTol = 1e-9;

BaseMeasure from_parts(std::vector<Atom> atoms, std::vector<double> x, std::vector<double> pdf) {
    double mass = 0.0;
    for (const auto& a : atoms) mass += a.w;
    for (size_t i = 0; i + 1 < x.size(); ++i)
        mass += 0.5 * (pdf[i] + pdf[i + 1]) * (x[i + 1] - x[i]);
    if (std::fabs(mass - 1.0) > kLoadMassTol) {
        std::ostringstream os;
        os << "measure mass " << mass << " not within 1e-9 of 1";
        throw MeasureParseError(os.str());
    }
    for (auto& a : atoms) a.w /= mass;
    for (auto& v : pdf) v /= mass;
    return BaseMeasure::mixed(std::move(atoms), x, pdf);
}

} // namespace

BaseMeasure load_measure_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MeasureParseError(std::string("invalid measure json: ") + e.what());
    }
    try {
        std::string type = j.at("type").get<std::string>();
        if (type == "bernoulli") {
            double p = j.at("p").get<double>();
            return BaseMeasure::bernoulli(p);
        }
        if (type == "uniform") {
            return BaseMeasure::uniform(j.at("a").get<double>(), j.at("b").get<double>());
        }
        if (type == "atoms") {
            std::vector<Atom> atoms;
            for (const auto& pair : j.at("atoms")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw MeasureParseError("atoms entries must be [x, w] pairs");
                atoms.push_back(Atom{pair[0].get<double>(), pair[1].get<double>()});
            }
            return from_parts(std::move(atoms), {}, {});
        }
        if (type == "table") {
            auto x = j.at("x").get<std::vector<double>>();
            auto pdf = j.at("pdf").get<std::vector<double>>();
            return from_parts({}, std::move(x), std::move(pdf));
        }
        throw MeasureParseError("unknown measure type: " + type);
    } catch (const nlohmann::json::exception& e) {
        throw MeasureParseError(std::string("invalid measure json: ") + e.what());
    }
}

BaseMeasure load_measure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeasureParseError("cannot open measure file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_measure_json(ss.str());
}

BaseMeasure parse_measure_arg(const std::string& arg) {
    if (arg.rfind("bernoulli:", 0) == 0) {
        double p = std::stod(arg.substr(10));
        return BaseMeasure::bernoulli(p);
    }
    if (arg.rfind("uniform:", 0) == 0) {
        std::string rest = arg.substr(8);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw MeasureParseError("uniform sugar is uniform:a:b");
        double a = std::stod(rest.substr(0, colon));
        double b = std::stod(rest.substr(colon + 1));
        return BaseMeasure::uniform(a, b);
    }
    return load_measure_file(arg);
}

} // namespace pdmean
