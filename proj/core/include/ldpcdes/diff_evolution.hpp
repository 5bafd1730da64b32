#pragma once

// Differential evolution over constrained DDP vectors: rand/1/bin mutation
// and crossover, a three-element linear repair onto the simplex/rate
// constraints, and generation-synchronous selection on the
// iteration-constrained threshold.

#include <functional>
#include <optional>
#include <vector>

#include "ldpcdes/exit_chart.hpp"
#include "ldpcdes/rng.hpp"

namespace ldpcdes {

struct DesignVector {
    // Concatenation of the lambda entries over the VN-degree support and
    // the rho entries over the CN-type support.
    std::vector<double> values;
};

struct DeConfig {
    std::vector<int> vn_degrees;
    std::vector<CodeRef> cn_codes;
    double target_rate = 0.5;
    ChannelKind channel = ChannelKind::Bec;
    int i_max = 10;
    double xi = 0.99;
    int population = 70;          // N_p
    double weight_f = 0.5;        // F
    double crossover_eta = 0.8;   // eta
    int max_generations = 500;
    int stall_generations = 50;   // stop after this many without improvement
    double stall_improvement = 1e-4;
    double threshold_tolerance = 1e-6;
    int repair_retry_cap = 20;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency
};

// Raw affine combination v = r1 + F (r2 - r3); no constraints enforced.
std::vector<double> mutant(const std::vector<double>& r1, const std::vector<double>& r2,
                           const std::vector<double>& r3, double f);

// Per-coordinate selection: trial[j] = v[j] if X[j] <= eta or j == Y, else
// x[j]; Y is drawn once so at least one coordinate always comes from v.
std::vector<double> crossover(const std::vector<double>& x, const std::vector<double>& v, double eta, Rng& rng);

class DesignSpace {
public:
    DesignSpace(std::vector<int> vn_degrees, std::vector<CodeRef> cn_codes, double target_rate);

    int dimension() const { return static_cast<int>(vn_degrees_.size() + cn_codes_.size()); }
    const std::vector<int>& vn_degrees() const { return vn_degrees_; }
    const std::vector<CodeRef>& cn_codes() const { return cn_codes_; }
    double target_rate() const { return target_rate_; }

    // Adjusts three designated elements so that both simplex sums and the
    // rate equation hold; returns nullopt when any resulting entry falls
    // outside [0,1] or the repair system is singular (vector discarded).
    std::optional<DesignVector> repair(std::vector<double> raw) const;

    // All three constraints within `tol`.
    bool satisfied(const std::vector<double>& raw, double tol = 1e-6) const;

    // Uniform simplex sample repaired onto the rate constraint.
    DesignVector sample(Rng& rng, int retry_cap = 1000) const;

    DegreeDistributionPair to_ddp(const DesignVector& v) const;

private:
    std::vector<int> vn_degrees_;
    std::vector<CodeRef> cn_codes_;
    double target_rate_;
};

std::vector<DesignVector> random_population(const DeConfig& config);

struct DeResult {
    DesignVector best;
    double best_threshold = 0.0;
    DegreeDistributionPair ddp;
    int generations_run = 0;
    std::vector<double> best_per_generation;  // index 0 = initial population
};

using DeProgress = std::function<void(int generation, double best_threshold)>;

DeResult evolve(const DeConfig& config, const DeProgress& progress = {});

}  // namespace ldpcdes
