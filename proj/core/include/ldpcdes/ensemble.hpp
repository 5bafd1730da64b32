#pragma once

// Degree-distribution pairs (edge perspective) and their closed-form
// functionals: design rate, edge counts, stability products, plus the
// integer realization used by the finite-length constructors.

#include <map>
#include <string>
#include <vector>

#include "ldpcdes/component_code.hpp"
#include "ldpcdes/common.hpp"

namespace ldpcdes {

inline constexpr double kDistributionTol = 1e-9;  // normalization tolerance
inline constexpr double kFractionPrune = 1e-12;   // entries below are dropped

class VariableDistribution {
public:
    // Validates: degrees >= 2, fractions in [0,1], Σ = 1 within 1e-9.
    // Entries below 1e-12 are pruned; sums violating tolerance are rejected,
    // not renormalized.
    explicit VariableDistribution(std::map<int, double> entries);

    const std::map<int, double>& entries() const { return entries_; }
    double fraction(int degree) const;
    double lambda2() const { return fraction(2); }  // = λ'(0)
    // Σ_d λ_d / d
    double integral() const;
    int max_degree() const { return entries_.rbegin()->first; }
    // λ(x) = Σ_d λ_d x^(d-1)
    double evaluate(double x) const;

private:
    std::map<int, double> entries_;
};

struct CheckType {
    CodeRef code;
    double fraction = 0.0;
};

class CheckDistribution {
public:
    // Validates: codes present with length >= 3, fractions in [0,1],
    // Σ = 1 within 1e-9. Zero-fraction entries are pruned.
    explicit CheckDistribution(std::vector<CheckType> types);

    const std::vector<CheckType>& types() const { return types_; }
    bool all_spc() const;
    // Σ_t ρ_t (1 - R_t)
    double rate_deficit() const;
    // Σ_t ρ_t (s_t - 1) = ρ'(1) for SPC-only mixtures
    double derivative_at_one() const;
    // ρ(x) = Σ_t ρ_t x^(s_t-1)
    double evaluate(double x) const;

private:
    std::vector<CheckType> types_;
};

struct DegreeDistributionPair {
    VariableDistribution lambda;
    CheckDistribution rho;
};

// 1 - [Σ_t ρ_t(1-R_t)] / [Σ_d λ_d/d]
double design_rate(const DegreeDistributionPair& ddp);

// Number of Tanner graph edges at block length N: round(N / Σ_d λ_d/d).
long edge_count(const DegreeDistributionPair& ddp, long block_length);

// λ'(0)·ρ'(1) for SPC-only ensembles; throws ValidationError when a
// generalized CN type is present (use weight2_functional there).
double stability_product(const DegreeDistributionPair& ddp);

// λ'(0)·C with C = 2 Σ_{t: r_t=2} ρ_t A_2^(t) / s_t; types with minimum
// distance >= 3 do not contribute.
double weight2_functional(const DegreeDistributionPair& ddp);

// Initial growth-rate slope classification: the applicable functional
// (stability_product when every type is SPC, else weight2_functional) < 1.
bool good_growth(const DegreeDistributionPair& ddp);

// Integer realization of a DDP at finite block length. Node counts are
// rounded by largest remainder, then minimally perturbed until the VN-side
// and CN-side socket totals agree exactly. VN degrees exceeding the
// realized CN count are capped at it (no duplicate edges are possible
// beyond that); this only triggers at toy block lengths.
struct Realization {
    std::map<int, long> vn_counts;  // realized degree -> node count
    std::vector<long> cn_counts;    // aligned with ddp.rho.types()
    long edges = 0;
    double slack = 0.0;  // |edges - N/∫λ|
};

Realization node_counts(const DegreeDistributionPair& ddp, long block_length);

}  // namespace ldpcdes
