#pragma once

// Iteration-capped belief propagation: peeling-style erasure decoding with
// MAP component decoders at generalized CNs, and flooding sum-product for
// the BI-AWGN channel (SPC CNs only).

#include <span>

#include "ldpcdes/tanner_graph.hpp"

namespace ldpcdes {

struct BecDecodeResult {
    std::vector<Bit> word;
    int iterations_used = 0;
};

// Runs up to i_max rounds; in each round every CN applies MAP erasure
// decoding to its start-of-round socket values and newly resolved values
// are merged at the round boundary. Stops early when a round resolves
// nothing. Unresolved erasures remain in the output.
BecDecodeResult decode_bec(const TannerGraph& graph, std::vector<Bit> received, int i_max);

struct AwgnDecodeResult {
    std::vector<std::uint8_t> hard;  // 0/1 decisions
    std::vector<double> llr_app;     // a-posteriori LLRs
    int iterations_used = 0;
    bool syndrome_ok = false;
};

// Flooding sum-product with the exact pairwise boxplus (sign-min plus
// correction terms), message magnitudes clamped at 30. Early exit on a zero
// syndrome counts as convergence. i_max = 0 returns channel hard decisions.
AwgnDecodeResult decode_awgn(const TannerGraph& graph, std::span<const double> channel_llrs, int i_max);

}  // namespace ldpcdes
