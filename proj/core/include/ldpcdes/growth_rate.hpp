#pragma once

// Asymptotic growth rate G(alpha) of the ensemble-average weight
// distribution (natural log, edge-matching ensemble), its zero crossing
// alpha*, and an exact expected-enumerator oracle for tiny block lengths.

#include <map>
#include <optional>
#include <vector>

#include "ldpcdes/ensemble.hpp"

namespace ldpcdes {

// G(alpha) by saddle-point evaluation: maximize over the normalized socket
// weight beta the sum of the VN-side term, the CN-side term (component-code
// weight enumerators) and the edge-permutation entropy; inner stationarity
// conditions are solved by safeguarded bisection in the log domain.
double growth_rate(const DegreeDistributionPair& ddp, double alpha);

// Smallest positive root of G on (0, 0.5]; requires good growth rate
// behavior (throws ValidationError otherwise); nullopt when G stays
// negative on the interval.
std::optional<double> alpha_star(const DegreeDistributionPair& ddp);

struct GrowthRateCurve {
    struct Sample {
        double alpha;
        double g;
    };
    std::vector<Sample> samples;  // alphas strictly increasing
    std::optional<double> alpha_star;
    bool good_growth = false;
};

// 200 log-spaced alphas on [1e-3, 0.5] by default.
GrowthRateCurve growth_rate_curve(const DegreeDistributionPair& ddp, int points = 200);

// Explicit node multiset for the finite oracle; VN degree 1 is allowed here
// so degenerate test graphs can be expressed.
struct FiniteEnsemble {
    std::map<int, long> vn_counts;
    std::vector<std::pair<CodeRef, long>> cn_counts;
};

// Exact E[A_w] for w = 0..N of the uniform edge-matching ensemble, by
// coefficient extraction over the product of node-local weight generating
// functions divided by the edge-permutation count (exact big-integer /
// rational arithmetic).
std::vector<double> brute_force_average_enumerator(const FiniteEnsemble& ensemble);
// Convenience overload through the integer realization; block_length <= 64.
std::vector<double> brute_force_average_enumerator(const DegreeDistributionPair& ddp, long block_length);

}  // namespace ldpcdes
