#include "ldpcdes/reference_ensembles.hpp"

#include <algorithm>
#include <cctype>

namespace ldpcdes::reference {

namespace {

DegreeDistributionPair make(std::map<int, double> lambda, std::vector<std::pair<std::string, double>> rho) {
    double ls = 0.0;
    for (const auto& [d, f] : lambda) ls += f;
    for (auto& [d, f] : lambda) f /= ls;
    double rs = 0.0;
    for (const auto& [id, f] : rho) rs += f;
    std::vector<CheckType> types;
    for (const auto& [id, f] : rho) types.push_back({ComponentCode::from_id(id), f / rs});
    return {VariableDistribution(std::move(lambda)), CheckDistribution(std::move(types))};
}

}  // namespace

DegreeDistributionPair ensemble_a() {
    return make({{2, 1.0}}, {{"spc-7", 0.134313}, {"hamming-15-11", 0.865687}});
}

DegreeDistributionPair ensemble_b() {
    return make({{3, 0.841365}, {30, 0.158635}}, {{"spc-7", 1.0}});
}

DegreeDistributionPair ensemble_c() {
    return make({{2, 0.318057}, {3, 0.202714}, {4, 0.058171}, {6, 0.147257}, {13, 0.173086}, {15, 0.100714}},
                {{"spc-7", 1.0}});
}

DegreeDistributionPair ensemble_d() {
    return make(
        {{2, 0.244010}, {3, 0.154621}, {4, 0.065721}, {5, 0.084352}, {6, 0.088753}, {8, 0.039511}, {18, 0.323032}},
        {{"spc-8", 0.803716}, {"spc-9", 0.196284}});
}

DegreeDistributionPair ensemble_e() {
    return make({{2, 0.033563}, {3, 0.567888}, {4, 0.068026}, {12, 0.283606}, {14, 0.046918}},
                {{"spc-7", 0.001226}, {"spc-8", 0.998775}});
}

DegreeDistributionPair ensemble_f() {
    return make({{2, 0.19128}, {4, 0.307464}, {5, 0.061890}, {6, 0.083437}, {8, 0.083481}, {30, 0.272447}},
                {{"spc-9", 0.902024}, {"spc-11", 0.097976}});
}

DegreeDistributionPair ensemble_g() {
    return make({{2, 0.175711}, {3, 0.037810}, {4, 0.279311}, {5, 0.068726}, {7, 0.048109}, {30, 0.390333}},
                {{"spc-9", 0.177118}, {"spc-10", 0.822882}});
}

DegreeDistributionPair constrained_reference() {
    // lambda(x) = 0.062498 x + 0.479743 x^2 + 0.049808 x^5 + 0.117758 x^8
    //           + 0.290192 x^29, rho(x) = x^8
    return make({{2, 0.062498}, {3, 0.479743}, {6, 0.049808}, {9, 0.117758}, {30, 0.290192}}, {{"spc-9", 1.0}});
}

DegreeDistributionPair regular(int vn_degree, int cn_degree) {
    return make({{vn_degree, 1.0}}, {{"spc-" + std::to_string(cn_degree), 1.0}});
}

DegreeDistributionPair by_name(const std::string& name) {
    std::string key = name;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    if (key == "a") return ensemble_a();
    if (key == "b") return ensemble_b();
    if (key == "c") return ensemble_c();
    if (key == "d") return ensemble_d();
    if (key == "e") return ensemble_e();
    if (key == "f") return ensemble_f();
    if (key == "g") return ensemble_g();
    throw ValidationError("unknown reference ensemble: " + name);
}

std::vector<std::pair<std::string, DegreeDistributionPair>> all() {
    return {{"A", ensemble_a()}, {"B", ensemble_b()}, {"C", ensemble_c()}, {"D", ensemble_d()},
            {"E", ensemble_e()}, {"F", ensemble_f()}, {"G", ensemble_g()}};
}

}  // namespace ldpcdes::reference
