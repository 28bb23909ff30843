// params_io.cpp — JSON parameter files

#include "rcpt/params_io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "rcpt/errors.hpp"

namespace rcpt::model {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 7> kKeys{"v", "delta", "lambda", "omega", "gamma", "cutoff", "temperature"};

double* field(ModelParams& p, std::string_view key) {
    if (key == "v") return &p.v;
    if (key == "delta") return &p.delta;
    if (key == "lambda") return &p.lambda;
    if (key == "omega") return &p.omega;
    if (key == "gamma") return &p.gamma;
    if (key == "cutoff") return &p.cutoff;
    if (key == "temperature") return &p.temperature;
    return nullptr;
}

} // namespace

ModelParams params_from_json(const std::string& text, ModelParams base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.what() carries "at line L, column C"
        throw ParameterError(std::string("malformed parameter JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParameterError("parameter JSON must be an object");

    for (const auto& [key, value] : doc.items()) {
        double* dst = field(base, key);
        if (dst == nullptr) throw ParameterError("unknown parameter key \"" + key + "\"");
        if (key == "cutoff" && (value.is_null() || (value.is_string() && value.get<std::string>() == "inf"))) {
            *dst = std::numeric_limits<double>::infinity();
        } else if (value.is_number()) {
            *dst = value.get<double>();
        } else {
            throw ParameterError("parameter \"" + key + "\" must be a number");
        }
    }
    validate(base);
    return base;
}

ModelParams load_params(const std::filesystem::path& file, ModelParams base) {
    std::ifstream in(file);
    if (!in) throw ParameterError("cannot open parameter file " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return params_from_json(ss.str(), base);
    } catch (const ParameterError& e) {
        throw ParameterError(file.string() + ": " + e.what());
    }
}

std::string params_to_json(const ModelParams& p, int indent) {
    json doc = json::object();
    auto copy = p;
    for (auto key : kKeys) {
        const double x = *field(copy, key);
        if (std::isinf(x)) doc[std::string(key)] = "inf";
        else doc[std::string(key)] = x;
    }
    return doc.dump(indent);
}

} // namespace rcpt::model
