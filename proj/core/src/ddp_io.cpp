#include "ldpcdes/ddp_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ldpcdes {

using nlohmann::json;

DegreeDistributionPair parse_ddp(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("ddp: malformed JSON: ") + e.what());
    }
    if (!j.contains("lambda") || !j.contains("rho") || !j.contains("rate"))
        throw ValidationError("ddp: missing required field (rate, lambda, rho)");

    std::map<int, double> lambda;
    for (const auto& [key, value] : j.at("lambda").items()) {
        int degree = 0;
        try {
            degree = std::stoi(key);
        } catch (const std::exception&) {
            throw ValidationError("ddp: lambda key is not a degree: " + key);
        }
        lambda[degree] = value.get<double>();
    }

    std::vector<CheckType> rho;
    for (const auto& entry : j.at("rho")) {
        if (!entry.contains("code") || !entry.contains("fraction") || !entry.contains("type"))
            throw ValidationError("ddp: rho entry missing type/code/fraction");
        rho.push_back({ComponentCode::from_id(entry.at("code").get<std::string>()), entry.at("fraction").get<double>()});
    }

    DegreeDistributionPair ddp{VariableDistribution(std::move(lambda)), CheckDistribution(std::move(rho))};
    const double declared = j.at("rate").get<double>();
    const double actual = design_rate(ddp);
    if (std::abs(declared - actual) > 1e-3)
        throw ValidationError("ddp: declared rate " + std::to_string(declared) + " does not match design rate " +
                              std::to_string(actual));
    return ddp;
}

DegreeDistributionPair load_ddp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("ddp: cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_ddp(text.str());
}

std::string ddp_to_json(const DegreeDistributionPair& ddp, double rate) {
    json j;
    j["rate"] = rate;
    json lambda = json::object();
    for (const auto& [d, f] : ddp.lambda.entries()) lambda[std::to_string(d)] = f;
    j["lambda"] = lambda;
    json rho = json::array();
    int type = 1;
    for (const auto& t : ddp.rho.types())
        rho.push_back({{"type", type++}, {"code", t.code->id()}, {"fraction", t.fraction}});
    j["rho"] = rho;
    return j.dump(2) + "\n";
}

void save_ddp(const DegreeDistributionPair& ddp, double rate, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ComputeError("ddp: cannot write " + tmp);
        out << ddp_to_json(ddp, rate);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ComputeError("ddp: cannot rename into " + path);
}

}  // namespace ldpcdes
