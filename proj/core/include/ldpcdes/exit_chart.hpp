#pragma once

// EXIT analysis for the BEC and BI-AWGN channel: node EXIT functions, the
// iteration-limited decoding trajectory, and the iteration-constrained
// threshold search. The decoding requirement is relaxed from "the EXIT
// curves must not intersect" to "the VN extrinsic information after i_max
// iterations must exceed xi".

#include <optional>
#include <variant>
#include <vector>

#include "ldpcdes/ensemble.hpp"

namespace ldpcdes {

struct BecParameter {
    double epsilon = 0.0;  // erasure probability
};

struct AwgnParameter {
    double eb_n0_db = 0.0;
    double code_rate = 0.5;
    // Standard deviation of the channel LLR under the consistent-Gaussian
    // model: sigma_ch = sqrt(8 R 10^(EbN0/10)).
    double llr_sigma() const;
};

using ChannelParameter = std::variant<BecParameter, AwgnParameter>;

enum class ChannelKind { Bec, Awgn };

ChannelKind channel_kind(const ChannelParameter& ch);

// Mutual information between a BPSK bit and a Gaussian LLR with mean
// sigma^2/2 and variance sigma^2, by numeric integration.
double j_function(double sigma);
// Inverse of j_function by bisection to 1e-10.
double j_inverse(double i);
// Table-interpolated variants used in optimizer hot loops (~1e-6 accurate).
double j_function_fast(double sigma);
double j_inverse_fast(double i);

enum class ExitMode { Fast, Exact };

// Extrinsic output of a degree-d VN given a-priori information i_a.
double vn_exit(int degree, const ChannelParameter& ch, double i_a, ExitMode mode = ExitMode::Fast);
// Extrinsic output of a CN with the given component code. AWGN supports
// SPC codes only (the duality approximation); generalized CNs throw.
double cn_exit(const ComponentCode& code, ChannelKind kind, double i_a, ExitMode mode = ExitMode::Fast);

struct ExitTrajectory {
    struct Point {
        double i_av, i_ev, i_ac, i_ec;
    };
    std::vector<Point> points;  // one per decoder iteration
    int i_max = 0;
    std::optional<bool> achieved;  // final i_ev >= xi, when a target was given

    double final_i_ev() const { return points.empty() ? 0.0 : points.back().i_ev; }
};

// Runs exactly i_max iterations (VN update, then CN update feeding the next
// VN update), starting from zero a-priori information. Never stops early on
// a curve intersection.
ExitTrajectory run_trajectory(const DegreeDistributionPair& ddp, const ChannelParameter& ch, int i_max,
                              ExitMode mode = ExitMode::Fast, std::optional<double> xi = std::nullopt);

struct ThresholdQuery {
    DegreeDistributionPair ddp;
    ChannelKind channel = ChannelKind::Bec;
    int i_max = 10;
    double xi = 0.99;
    double tolerance = 1e-6;  // on epsilon (BEC) or dB (AWGN)
    // Accept on the a-posteriori information instead of the VN extrinsic.
    bool a_posteriori = false;
    ExitMode mode = ExitMode::Fast;
};

// Worst channel parameter (highest epsilon / lowest Eb/N0) whose trajectory
// still reaches xi after i_max iterations; bisection over eps in [0,1] or
// Eb/N0 in [-2,10] dB. Throws ComputeError when no parameter in the bracket
// satisfies the requirement.
ChannelParameter iteration_constrained_threshold(const ThresholdQuery& query);

inline double threshold_value(const ChannelParameter& ch) {
    if (const auto* bec = std::get_if<BecParameter>(&ch)) return bec->epsilon;
    return std::get<AwgnParameter>(ch).eb_n0_db;
}

// True when `a` is a better (more noise-tolerant) threshold than `b`.
bool better_threshold(ChannelKind kind, double a, double b);

}  // namespace ldpcdes
